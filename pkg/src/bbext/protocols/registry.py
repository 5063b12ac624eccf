"""
Every runnable protocol by name: the seven extension protocols, the two broadcast-from-agreement reductions and
the short-message oracles on their own, so one property checker covers all of them.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, Mapping, Optional, Tuple, Union

import numpy as np

from bbext.data_structures import Definition, Mode, SessionParams, ThresholdRegime, max_faults
from bbext.errors import ConfigurationError
from bbext.oracles import (
    OracleConfig,
    OracleImpl,
    OracleKind,
    agree,
    broadcast,
    check_mode,
    encode_bit,
    spawn_agreement,
    spawn_broadcast,
)
from bbext.protocols.async_ef_rb import async_ef_rb
from bbext.protocols.async_third import async_third_ba, async_third_rb
from bbext.protocols.sync_ef import sync_ef_ba, sync_ef_bb
from bbext.protocols.sync_eps_bb import sync_eps_bb
from bbext.protocols.sync_half import sync_half_ba, sync_half_bb, sync_half_bb_reduction
from bbext.simnet.context import AsyncHandler, PartyContext
from bbext.simnet.envelope import Envelope

MESSAGE_INPUT = "message"
BIT_INPUT = "bit"


@dataclass(frozen=True)
class ProtocolSpec:
    """
    :param program: called as program(ctx, value, sender); a generator for rounds mode, a handler for events mode
    :param oracles: the oracle kinds the program may invoke
    :param input_kind: "message" for l-bit inputs, "bit" for the single-byte 0/1 inputs of binary agreement
    """

    name: str
    mode: Mode
    regime: ThresholdRegime
    definition: Definition
    program: Callable
    oracles: Tuple[OracleKind, ...] = ()
    input_kind: str = MESSAGE_INPUT
    description: str = field(default="", compare=False)

    @property
    def has_sender(self) -> bool:
        return self.definition is not Definition.BA

    def max_t(self, params: SessionParams) -> int:
        if self.regime is ThresholdRegime.ONE_MINUS_EPS and params.epsilon is None:
            return params.n - 1
        return max_faults(self.regime, params.n, params.epsilon)

    def check(self, params: SessionParams, oracles: OracleConfig):
        """
        :raises ConfigurationError: t outside the protocol's regime, an oracle that cannot run under the protocol's
          scheduler, or a concrete oracle whose own threshold t violates
        """
        if params.t > self.max_t(params):
            raise ConfigurationError(
                f"{self.name} tolerates t <= {self.max_t(params)} for n={params.n}, got t={params.t}"
            )
        if self.input_kind == BIT_INPUT and params.l != 8:
            raise ConfigurationError(f"{self.name} takes single-byte bit inputs, set l=8 (got l={params.l})")
        for kind in self.oracles:
            check_mode(kind, self.mode)
            if oracles.impl(kind) is not OracleImpl.CONCRETE:
                continue
            if kind is OracleKind.SYNC_BA and 2 * params.t >= params.n:
                raise ConfigurationError(f"the concrete synchronous BA needs t < n/2, got n={params.n}, t={params.t}")
            if not kind.synchronous and 3 * params.t >= params.n:
                raise ConfigurationError(f"the concrete {kind.value} oracle needs t < n/3, got t={params.t}")

    def random_input(
        self, params: SessionParams, rng: np.random.Generator
    ) -> Union[bytes, Mapping[int, Optional[bytes]]]:
        """One random message shared by everybody, or an independent random bit per party"""
        if self.input_kind == BIT_INPUT:
            return {party: encode_bit(int(rng.integers(0, 2))) for party in params.parties}
        return rng.bytes(params.message_bytes)


def _oracle_bb(ctx: PartyContext, value: Optional[bytes], sender: int):
    result = yield from broadcast(ctx, "bb", sender, value, ctx.params.l)
    ctx.output(result)


def _oracle_ba(ctx: PartyContext, value: Optional[bytes], sender: Optional[int] = None):
    result = yield from agree(ctx, "ba", value, ctx.params.l)
    ctx.output(result)


class _StandaloneOracle(AsyncHandler):
    """Runs one asynchronous oracle instance as a whole protocol, its output being the party's output"""

    def __init__(self, ctx: PartyContext, kind: OracleKind, value: Optional[bytes], sender: Optional[int]):
        super().__init__(ctx)
        self.kind = kind
        self.value = value
        self.sender = sender

    def start(self):
        if self.kind is OracleKind.ASYNC_RB:
            instance = spawn_broadcast(self.ctx, "rb", self.sender, self.ctx.params.l, self.ctx.output)
            if self.ctx.party == self.sender:
                instance.provide(self.value)
        else:
            instance = spawn_agreement(self.ctx, "aba", self.kind, 1, self.ctx.output)
            instance.provide(self.value)

    def on_message(self, envelope: Envelope):
        pass


def _oracle_rb(ctx: PartyContext, value: Optional[bytes], sender: int) -> _StandaloneOracle:
    return _StandaloneOracle(ctx, OracleKind.ASYNC_RB, value, sender)


def _oracle_binary_ba(ctx: PartyContext, value: Optional[bytes], sender: Optional[int] = None) -> _StandaloneOracle:
    return _StandaloneOracle(ctx, OracleKind.ASYNC_BA_BIT, value, sender)


_ASYNC_THIRD_ORACLES = (OracleKind.ASYNC_RB, OracleKind.ASYNC_BA_BIT, OracleKind.ASYNC_BA_KBIT)

_PROTOCOLS = (
    ProtocolSpec(
        "sync-half-ba",
        Mode.ROUNDS,
        ThresholdRegime.HALF,
        Definition.BA,
        sync_half_ba,
        oracles=(OracleKind.SYNC_BA,),
        description="l-bit BA from a k-bit BA and a 1-bit BA, t < n/2",
    ),
    ProtocolSpec(
        "sync-half-bb",
        Mode.ROUNDS,
        ThresholdRegime.HALF,
        Definition.BB,
        sync_half_bb,
        oracles=(OracleKind.SYNC_BB, OracleKind.SYNC_BA),
        description="l-bit BB from a k-bit BB and a 1-bit BA, t < n/2",
    ),
    ProtocolSpec(
        "sync-half-bb-reduction",
        Mode.ROUNDS,
        ThresholdRegime.HALF,
        Definition.BB,
        sync_half_bb_reduction,
        oracles=(OracleKind.SYNC_BA,),
        description="the sender sends m to all, then everybody runs sync-half-ba",
    ),
    ProtocolSpec(
        "sync-eps-bb",
        Mode.ROUNDS,
        ThresholdRegime.ONE_MINUS_EPS,
        Definition.BB,
        sync_eps_bb,
        oracles=(OracleKind.SYNC_BB,),
        description="l-bit BB for t <= (1 - eps)n with HAPPY certificates over t + 1 iterations",
    ),
    ProtocolSpec(
        "async-third-ba",
        Mode.EVENTS,
        ThresholdRegime.THIRD_ASYNC,
        Definition.BA,
        async_third_ba,
        oracles=_ASYNC_THIRD_ORACLES,
        description="asynchronous l-bit BA from a k-bit BA and a 1-bit BA, t < n/3",
    ),
    ProtocolSpec(
        "async-third-rb",
        Mode.EVENTS,
        ThresholdRegime.THIRD_ASYNC,
        Definition.RB,
        async_third_rb,
        oracles=_ASYNC_THIRD_ORACLES,
        description="asynchronous l-bit RB from a k-bit RB with re-distribution, t < n/3",
    ),
    ProtocolSpec(
        "sync-ef-ba",
        Mode.ROUNDS,
        ThresholdRegime.THIRD_SYNC_EF,
        Definition.BA,
        sync_ef_ba,
        oracles=(OracleKind.SYNC_BB,),
        description="error-free synchronous l-bit BA from 1-bit BB, t < n/3",
    ),
    ProtocolSpec(
        "sync-ef-bb",
        Mode.ROUNDS,
        ThresholdRegime.THIRD_SYNC_EF,
        Definition.BB,
        sync_ef_bb,
        oracles=(OracleKind.SYNC_BB,),
        description="the sender sends m to all, then everybody runs sync-ef-ba",
    ),
    ProtocolSpec(
        "async-ef-rb",
        Mode.EVENTS,
        ThresholdRegime.THIRD_ASYNC,
        Definition.RB,
        async_ef_rb,
        oracles=(OracleKind.ASYNC_RB,),
        description="error-free asynchronous l-bit RB from 1-bit RB with online error correction, t < n/3",
    ),
    ProtocolSpec(
        "oracle-dolev-strong",
        Mode.ROUNDS,
        ThresholdRegime.ONE_MINUS_EPS,
        Definition.BB,
        _oracle_bb,
        oracles=(OracleKind.SYNC_BB,),
        description="the synchronous broadcast oracle on l-bit values",
    ),
    ProtocolSpec(
        "oracle-sync-ba",
        Mode.ROUNDS,
        ThresholdRegime.HALF,
        Definition.BA,
        _oracle_ba,
        oracles=(OracleKind.SYNC_BA,),
        description="the synchronous agreement oracle on l-bit values",
    ),
    ProtocolSpec(
        "oracle-bracha",
        Mode.EVENTS,
        ThresholdRegime.THIRD_ASYNC,
        Definition.RB,
        _oracle_rb,
        oracles=(OracleKind.ASYNC_RB,),
        description="the asynchronous reliable broadcast oracle on l-bit values",
    ),
    ProtocolSpec(
        "oracle-binary-ba",
        Mode.EVENTS,
        ThresholdRegime.THIRD_ASYNC,
        Definition.BA,
        _oracle_binary_ba,
        oracles=(OracleKind.ASYNC_BA_BIT,),
        input_kind=BIT_INPUT,
        description="the asynchronous binary agreement oracle, l = 8",
    ),
)

PROTOCOLS: Dict[str, ProtocolSpec] = {spec.name: spec for spec in _PROTOCOLS}
EXTENSION_PROTOCOLS = tuple(name for name in PROTOCOLS if not name.startswith("oracle-"))
ORACLE_PROTOCOLS = tuple(name for name in PROTOCOLS if name.startswith("oracle-"))


def get_protocol(name: str) -> ProtocolSpec:
    try:
        return PROTOCOLS[name]
    except KeyError:
        raise ConfigurationError(f"unknown protocol {name!r}, expected one of {sorted(PROTOCOLS)}") from None
