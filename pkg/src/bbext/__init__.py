from bbext.utils.logging import initialize_logs as _initialize_logs

__version__ = "0.1.0"

from bbext.data_structures import AccScheme, Definition, Mode, SessionParams, ThresholdRegime, max_faults
from bbext.errors import (
    AdversaryConfigError,
    ConfigurationError,
    DecodeFailure,
    Error,
    InvariantViolation,
    PreconditionError,
    ReconstructionFailure,
    SchedulerError,
)
from bbext.oracles import OracleConfig, OracleImpl, OracleKind
from bbext.protocols import PROTOCOLS, ProtocolSpec, get_protocol
from bbext.simnet import ADVERSARIES, RunMetrics, RunResult, adversary_battery, check_properties, get_adversary, run

_initialize_logs()
