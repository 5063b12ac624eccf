import dataclasses
import math
from enum import Enum
from typing import Optional

import pydantic.v1 as pydantic

from bbext.constants import SECURITY_BITS
from bbext.errors import ConfigurationError

PartyId = int


class ThresholdRegime(Enum):
    HALF = "half"
    ONE_MINUS_EPS = "one_minus_eps"
    THIRD_SYNC_EF = "third_sync_ef"
    THIRD_ASYNC = "third_async"


class Mode(Enum):
    ROUNDS = "rounds"
    EVENTS = "events"


class Definition(Enum):
    """Which correctness definition a protocol's outputs are checked against"""

    BA = "ba"
    BB = "bb"
    RB = "rb"


class Role(Enum):
    SENDER = "sender"
    NONSENDER = "nonsender"
    PEER = "peer"


class AccScheme(Enum):
    HASH_TREE = "hash_tree"
    BILINEAR_EMULATED = "bilinear_emulated"


def max_faults(regime: ThresholdRegime, n: int, epsilon: Optional[float] = None) -> int:
    """Largest t the regime tolerates for n parties"""
    if regime is ThresholdRegime.HALF:
        return (n - 1) // 2
    if regime in (ThresholdRegime.THIRD_SYNC_EF, ThresholdRegime.THIRD_ASYNC):
        return (n - 1) // 3
    if epsilon is None or not 0 < epsilon <= 1:
        raise ConfigurationError(f"the one_minus_eps regime needs 0 < epsilon <= 1, got {epsilon}")
    return min(n - 1, n - math.ceil(epsilon * n - 1e-9))


@pydantic.dataclasses.dataclass(frozen=True)
class SessionParams:
    """
    Parameters shared by all parties of one protocol session.

    :param n: number of parties, ids 1..n
    :param t: number of Byzantine parties tolerated
    :param l: input message length in bits (a multiple of 8, messages are byte strings)
    :param k: security parameter, the nominal size of accumulation values and multi-signatures
    :param regime: threshold regime the calling protocol is proven for
    :param epsilon: fraction of honest parties assumed by the one_minus_eps regime
    :param session_id: bound into every signed or accumulated artifact of the session
    """

    n: pydantic.conint(ge=1, le=65535, strict=True)
    t: pydantic.conint(ge=0, strict=True)
    l: pydantic.conint(ge=0, strict=True)
    k: pydantic.conint(strict=True) = 256
    regime: ThresholdRegime = ThresholdRegime.HALF
    epsilon: Optional[pydantic.confloat(gt=0, le=1)] = None
    session_id: bytes = b"bbext"

    def __post_init_post_parse__(self):
        if self.k not in SECURITY_BITS:
            raise ConfigurationError(f"k must be one of {SECURITY_BITS}, got {self.k}")
        if self.l % 8:
            raise ConfigurationError(f"l must be a whole number of bytes, got {self.l} bits")
        if self.t >= self.n:
            raise ConfigurationError(f"t={self.t} leaves no honest party among n={self.n}")
        if self.regime is ThresholdRegime.HALF and not 2 * self.t < self.n:
            raise ConfigurationError(f"half regime needs t < n/2, got n={self.n}, t={self.t}")
        if self.regime in (ThresholdRegime.THIRD_SYNC_EF, ThresholdRegime.THIRD_ASYNC) and not 3 * self.t < self.n:
            raise ConfigurationError(f"third regimes need t < n/3, got n={self.n}, t={self.t}")
        if self.regime is ThresholdRegime.ONE_MINUS_EPS:
            if self.epsilon is None:
                raise ConfigurationError("one_minus_eps regime needs epsilon")
            if self.t > max_faults(self.regime, self.n, self.epsilon):
                raise ConfigurationError(f"t={self.t} exceeds (1-eps)n for n={self.n}, eps={self.epsilon}")

    @property
    def b(self) -> int:
        return self.n - self.t

    @property
    def message_bytes(self) -> int:
        return self.l // 8

    @property
    def parties(self) -> range:
        return range(1, self.n + 1)

    def to_dict(self) -> dict:
        result = dataclasses.asdict(self)
        result["regime"] = self.regime.value
        result["session_id"] = self.session_id.hex()
        return result
