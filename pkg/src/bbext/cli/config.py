"""Experiment sweep configuration: a JSON file, overridden by command-line flags."""
import itertools
from dataclasses import field
from enum import Enum
from typing import Dict, List, Optional, Union

import pydantic.v1 as pydantic
import simplejson as json
from humanfriendly import InvalidSize, parse_size

from bbext.constants import DEFAULT_SEED
from bbext.data_structures import AccScheme, SessionParams, ThresholdRegime, max_faults
from bbext.errors import ConfigurationError
from bbext.oracles import OracleConfig
from bbext.protocols import get_protocol
from bbext.simnet import get_adversary


class TRule(Enum):
    MAX_HALF = "max_half"
    MAX_THIRD = "max_third"
    MAX_EPS = "max_eps"
    EXPLICIT = "explicit"


_RULE_REGIMES = {
    TRule.MAX_HALF: (ThresholdRegime.HALF,),
    TRule.MAX_THIRD: (ThresholdRegime.THIRD_SYNC_EF, ThresholdRegime.THIRD_ASYNC),
    TRule.MAX_EPS: (ThresholdRegime.ONE_MINUS_EPS,),
}


def parse_length(value: Union[int, str]) -> int:
    """Message length in bits: a plain number of bits, or a human size such as "32KiB" (bytes)"""
    if isinstance(value, int):
        return value
    text = str(value).strip()
    if text.isdigit():
        return int(text)
    try:
        return 8 * parse_size(text, binary=True)
    except InvalidSize as e:
        raise ConfigurationError(f"cannot parse message length {value!r}: {e}") from e


@pydantic.dataclasses.dataclass(frozen=True)
class ExperimentConfig:
    """
    One sweep: every combination of n, l, adversary and seed is a cell.

    :param t_rule: max_half, max_third and max_eps take the largest t of that regime; explicit uses ``t``
    :param oracles: oracle kind -> "ideal" or "concrete", ideal where missing
    :param acc: accumulator scheme of the cryptographic protocols
    """

    protocol: str
    n: List[pydantic.conint(ge=1)]
    l: List[Union[int, str]]
    t_rule: TRule = TRule.EXPLICIT
    t: Optional[pydantic.conint(ge=0)] = None
    k: int = 256
    epsilon: Optional[float] = None
    oracles: Dict[str, str] = field(default_factory=dict)
    acc: AccScheme = AccScheme.HASH_TREE
    adversaries: List[str] = field(default_factory=lambda: ["honest"])
    seeds: List[pydantic.conint(ge=0)] = field(default_factory=lambda: [DEFAULT_SEED])
    out: str = "results"
    workers: pydantic.conint(ge=1) = 1

    def __post_init_post_parse__(self):
        spec = get_protocol(self.protocol)
        for name, values in (("n", self.n), ("l", self.l), ("adversaries", self.adversaries), ("seeds", self.seeds)):
            if not values:
                raise ConfigurationError(f"{name} must not be empty")
        if self.t_rule is TRule.EXPLICIT:
            if self.t is None:
                raise ConfigurationError("t_rule explicit needs t")
        elif spec.regime not in _RULE_REGIMES[self.t_rule]:
            raise ConfigurationError(f"t_rule {self.t_rule.value} does not fit {spec.name} ({spec.regime.value})")
        if spec.regime is ThresholdRegime.ONE_MINUS_EPS and self.epsilon is None:
            raise ConfigurationError(f"{spec.name} needs epsilon")
        for name in self.adversaries:
            get_adversary(name)
        self.oracle_config()
        for length in self.l:
            parse_length(length)

    @classmethod
    def load(cls, path: Optional[str] = None, **overrides) -> "ExperimentConfig":
        """Read a JSON config, then apply the overrides that are not None"""
        fields = {}
        if path:
            with open(path) as f:
                fields = json.load(f)
        fields.update({key: value for key, value in overrides.items() if value is not None})
        try:
            return cls(**fields)
        except (pydantic.ValidationError, TypeError) as e:
            raise ConfigurationError(str(e)) from e

    def oracle_config(self) -> OracleConfig:
        return OracleConfig.from_dict(self.oracles)

    def lengths(self) -> List[int]:
        return [parse_length(value) for value in self.l]

    def t_for(self, n: int) -> int:
        if self.t_rule is TRule.EXPLICIT:
            return self.t
        regime = get_protocol(self.protocol).regime
        return max_faults(regime, n, self.epsilon)

    def session(self, n: int, l: int) -> SessionParams:
        spec = get_protocol(self.protocol)
        return SessionParams(n=n, t=self.t_for(n), l=l, k=self.k, regime=spec.regime, epsilon=self.epsilon)

    def cells(self):
        """(params, adversary, seed) in sweep order"""
        for n, l, adversary, seed in itertools.product(self.n, self.lengths(), self.adversaries, self.seeds):
            yield self.session(n, l), adversary, seed
