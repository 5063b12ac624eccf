from bbext.utils.logging import get_logger, initialize_logs
from bbext.utils.random import SeedStreams
