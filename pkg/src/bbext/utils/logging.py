import logging
import logging.handlers
import os
import sys

from humanfriendly.terminal import ansi_wrap, terminal_supports_colors

ROOT_LOGGER_NAME = "bbext"

_LEVEL_COLORS = {
    "DEBUG": "blue",
    "INFO": "green",
    "WARNING": "yellow",
    "ERROR": "red",
    "CRITICAL": "magenta",
}


class CustomFormatter(logging.Formatter):
    """
    A formatter that colors the level name and appends the caller's module and line to the record,
    e.g. ``Oct 19 12:00:00.123 [INFO] [bbext.cli.run_experiment.main:87] Wrote 24 cells``
    """

    def __init__(self, *args, use_colors: bool = True, **kwargs):
        super().__init__(*args, **kwargs)
        self.use_colors = use_colors

    def format(self, record: logging.LogRecord) -> str:
        levelname = record.levelname
        if self.use_colors:
            levelname = ansi_wrap(levelname, color=_LEVEL_COLORS.get(levelname, "white"), bold=True)
        record.levelcolored = levelname
        record.caller_block = f" [{record.name}.{record.funcName}:{record.lineno}]"
        return super().format(record)


def get_logger(name: str) -> logging.Logger:
    """Loggers live under the ``bbext`` root so that initialize_logs() configures all of them at once"""
    if name != ROOT_LOGGER_NAME and not name.startswith(ROOT_LOGGER_NAME + "."):
        name = f"{ROOT_LOGGER_NAME}.{name}"
    return logging.getLogger(name)


def initialize_logs():
    """Initialize bbext logging tweaks. This function is called when you import the `bbext` module."""

    # Env var BBEXT_LOGGING=False prohibits bbext do anything with logs
    if os.getenv("BBEXT_LOGGING", "True").lower() in ("false", "0"):
        return

    logger = logging.getLogger(ROOT_LOGGER_NAME)
    if logger.handlers:
        return
    logger.propagate = False
    logger.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(os.getenv("BBEXT_LOGLEVEL", "INFO").upper())
    console_handler.setFormatter(
        CustomFormatter(
            fmt="{asctime}.{msecs:03.0f} [{levelcolored}]{caller_block} {message}",
            style="{",
            datefmt="%b %d %H:%M:%S",
            use_colors=terminal_supports_colors(sys.stderr),
        )
    )
    logger.addHandler(console_handler)

    # saves the last 8 (n) days of logs and prunes n+1
    log_file = os.getenv("BBEXT_LOG_FILE")
    if log_file:
        file_handler = logging.handlers.TimedRotatingFileHandler(log_file, when="D", interval=1, backupCount=8)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter("%(asctime)s - %(levelname)s - %(name)s - %(message)s"))
        logger.addHandler(file_handler)
