class Error(Exception):
    pass


class ConfigurationError(Error, ValueError):
    """Invalid session parameters, experiment config or oracle/scheduler combination"""


class AdversaryConfigError(ConfigurationError):
    """Adversary script asks for more corruptions than the session tolerates"""


class PreconditionError(Error, ValueError):
    pass


class DecodeFailure(Error):
    """No codeword lies within the requested (errors, erasures) radius"""


class ReconstructionFailure(DecodeFailure):
    pass


class InvariantViolation(Error):
    """An honest party broke a protocol invariant (e.g. wrote its output twice)"""

    def __init__(self, msg: str, party: int = None):
        super().__init__(msg if party is None else f"party {party}: {msg}")
        self.msg = msg
        self.party = party


class SchedulerError(Error):
    pass
