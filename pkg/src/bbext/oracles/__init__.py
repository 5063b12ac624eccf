"""
Short-message broadcast and agreement oracles. Protocols call the helpers below; the session's OracleConfig
decides whether an instance is served by the trusted functionality or by a concrete protocol.
"""
from typing import Callable, Optional

from bbext.errors import ConfigurationError
from bbext.oracles.base import (
    OracleConfig,
    OracleImpl,
    OracleInput,
    OracleKind,
    OracleOutput,
    check_mode,
    decode_bit,
    encode_bit,
)
from bbext.oracles.binary_agreement import AsyncBinaryAgreement
from bbext.oracles.bracha import BrachaBroadcast
from bbext.oracles.coin import CoinOracle
from bbext.oracles.costs import model_cost, split_cost
from bbext.oracles.dolev_strong import ChainMsg, dolev_strong
from bbext.oracles.ideal import IdealClient, IdealFunctionality, ideal_sync
from bbext.oracles.sync_agreement import sync_ba_from_bb
from bbext.simnet.context import AsyncHandler, PartyContext

OutputCallback = Callable[[Optional[bytes]], None]


def _instance(ctx: PartyContext, name, kind: OracleKind) -> PartyContext:
    check_mode(kind, ctx.session.mode)
    parts = name if isinstance(name, tuple) else (name,)
    return ctx.scoped(*parts, oracle_kind=kind.value)


def broadcast(ctx: PartyContext, name, sender: int, value: Optional[bytes], value_bits: int):
    """Synchronous broadcast of value_bits bits from sender; use with ``yield from``"""
    sub = _instance(ctx, name, OracleKind.SYNC_BB)
    value = value if ctx.party == sender else None
    if ctx.oracles.impl(OracleKind.SYNC_BB) is OracleImpl.IDEAL:
        return (yield from ideal_sync(sub, OracleKind.SYNC_BB, value, value_bits, sender))
    return (yield from dolev_strong(sub, sender, value, value_bits))


def agree(ctx: PartyContext, name, value: Optional[bytes], value_bits: int):
    """Synchronous agreement on value_bits-bit inputs; use with ``yield from``"""
    sub = _instance(ctx, name, OracleKind.SYNC_BA)
    if ctx.oracles.impl(OracleKind.SYNC_BA) is OracleImpl.IDEAL:
        return (yield from ideal_sync(sub, OracleKind.SYNC_BA, value, value_bits))
    return (yield from sync_ba_from_bb(sub, value, value_bits))


def spawn_agreement(
    ctx: PartyContext, name, kind: OracleKind, value_bits: int, on_output: OutputCallback
) -> AsyncHandler:
    """Start an asynchronous agreement instance; the caller feeds its input with ``.provide(value)``"""
    if not kind.is_agreement or kind.synchronous:
        raise ConfigurationError(f"{kind.value} is not an asynchronous agreement oracle")
    sub = _instance(ctx, name, kind)
    if ctx.oracles.impl(kind) is OracleImpl.IDEAL:
        handler = IdealClient(sub, kind, value_bits, on_output)
    elif kind is OracleKind.ASYNC_BA_BIT:
        handler = AsyncBinaryAgreement(sub, on_output)
    else:
        raise ConfigurationError("no concrete k-bit asynchronous BA is available")
    return ctx.spawn(handler)


def spawn_broadcast(ctx: PartyContext, name, sender: int, value_bits: int, on_output: OutputCallback) -> AsyncHandler:
    """Start an asynchronous reliable broadcast instance; the sender feeds its value with ``.provide(value)``"""
    sub = _instance(ctx, name, OracleKind.ASYNC_RB)
    if ctx.oracles.impl(OracleKind.ASYNC_RB) is OracleImpl.IDEAL:
        handler = IdealClient(sub, OracleKind.ASYNC_RB, value_bits, on_output, sender=sender)
    else:
        handler = BrachaBroadcast(sub, sender, value_bits, on_output)
    return ctx.spawn(handler)
