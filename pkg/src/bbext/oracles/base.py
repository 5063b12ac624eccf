from dataclasses import dataclass
from enum import Enum
from typing import Any, ClassVar, Dict, Mapping, Optional

import pydantic.v1 as pydantic

from bbext.authentic import SizeModel
from bbext.data_structures import Mode
from bbext.errors import ConfigurationError


class OracleKind(Enum):
    SYNC_BB = "sync_bb"
    SYNC_BA = "sync_ba"
    ASYNC_RB = "async_rb"
    ASYNC_BA_BIT = "async_ba_bit"
    ASYNC_BA_KBIT = "async_ba_kbit"

    @property
    def synchronous(self) -> bool:
        return self in (OracleKind.SYNC_BB, OracleKind.SYNC_BA)

    @property
    def is_agreement(self) -> bool:
        return self in (OracleKind.SYNC_BA, OracleKind.ASYNC_BA_BIT, OracleKind.ASYNC_BA_KBIT)

    @property
    def mode(self) -> Mode:
        return Mode.ROUNDS if self.synchronous else Mode.EVENTS


class OracleImpl(Enum):
    IDEAL = "ideal"
    CONCRETE = "concrete"


@pydantic.dataclasses.dataclass(frozen=True)
class OracleConfig:
    """Ideal or concrete implementation per oracle kind. There is no concrete k-bit asynchronous BA."""

    sync_bb: OracleImpl = OracleImpl.IDEAL
    sync_ba: OracleImpl = OracleImpl.IDEAL
    async_rb: OracleImpl = OracleImpl.IDEAL
    async_ba_bit: OracleImpl = OracleImpl.IDEAL
    async_ba_kbit: OracleImpl = OracleImpl.IDEAL

    def __post_init_post_parse__(self):
        if self.async_ba_kbit is OracleImpl.CONCRETE:
            raise ConfigurationError("no concrete k-bit asynchronous BA is available, use the ideal oracle")

    def impl(self, kind: OracleKind) -> OracleImpl:
        return getattr(self, kind.value)

    @classmethod
    def concrete(cls) -> "OracleConfig":
        """Every kind that has a concrete implementation uses it"""
        return cls(
            sync_bb=OracleImpl.CONCRETE,
            sync_ba=OracleImpl.CONCRETE,
            async_rb=OracleImpl.CONCRETE,
            async_ba_bit=OracleImpl.CONCRETE,
        )

    @classmethod
    def from_dict(cls, mapping: Optional[Mapping[str, str]]) -> "OracleConfig":
        mapping = dict(mapping or {})
        unknown = set(mapping) - {kind.value for kind in OracleKind}
        if unknown:
            raise ConfigurationError(f"unknown oracle kinds: {sorted(unknown)}")
        try:
            return cls(**{name: OracleImpl(impl) for name, impl in mapping.items()})
        except ValueError as e:
            raise ConfigurationError(str(e)) from e

    def to_dict(self) -> Dict[str, str]:
        return {kind.value: self.impl(kind).value for kind in OracleKind}


def check_mode(kind: OracleKind, mode: Mode):
    if kind.mode is not mode:
        raise ConfigurationError(f"oracle {kind.value} cannot run under the {mode.value} scheduler")


def encode_bit(bit: int) -> bytes:
    return b"\x01" if bit else b"\x00"


def decode_bit(value: Any) -> int:
    """1 for the byte string 0x01, 0 for everything else including ⊥"""
    return 1 if value == b"\x01" else 0


@dataclass(frozen=True)
class OracleInput:
    """A party's input to the trusted functionality; sender names the broadcaster for bb/rb kinds"""

    kind: ClassVar[str] = "oracle_input"
    oracle: str
    value: Optional[bytes]
    value_bits: int
    sender: Optional[int] = None

    def nominal_bits(self, sizes: SizeModel) -> int:
        return self.value_bits


@dataclass(frozen=True)
class OracleOutput:
    kind: ClassVar[str] = "oracle_output"
    value: Optional[bytes]
    sender: Optional[int] = None

    def nominal_bits(self, sizes: SizeModel) -> int:
        return 0 if self.value is None else 8 * len(self.value)
