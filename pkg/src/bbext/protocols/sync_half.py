"""
Synchronous extension protocols for t < n/2: l-bit agreement and broadcast from k-bit oracles plus one 1-bit
agreement, at O(nl) honest bits for the message itself.
"""
from typing import Callable, Optional

from bbext.authentic import AccValue
from bbext.blocks import accumulate, encode
from bbext.oracles import agree, broadcast
from bbext.protocols.common import disseminate, first_payload, zero_message
from bbext.protocols.messages import PayloadMsg
from bbext.simnet.context import PartyContext
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def sync_half_ba(ctx: PartyContext, value: bytes, sender: Optional[int] = None):
    params = ctx.params
    shares = encode(value, params.b, params.n)
    z_i = accumulate(ctx.acc_key, shares)

    ctx.proc.phase = "agree-z"
    agreed = yield from agree(ctx, "z", z_i.data, params.k)
    happy = agreed == z_i.data
    if happy:
        ctx.set_happy()
    z = AccValue(agreed, z_i.nominal_bits) if isinstance(agreed, bytes) else None
    logger.debug(f"party {ctx.party}: agreed on z, happy={int(happy)}")
    yield from disseminate(ctx, value, shares, z, happy)


def sync_half_bb(ctx: PartyContext, value: Optional[bytes], sender: int):
    """The sender sends m to all and broadcasts z_s; parties holding a message that matches z are happy"""
    params = ctx.params
    z_s = None
    if ctx.party == sender:
        z_s = accumulate(ctx.acc_key, encode(value, params.b, params.n))
        ctx.multicast(PayloadMsg(value))

    ctx.proc.phase = "broadcast-z"
    broadcast_z = yield from broadcast(ctx, "z", sender, None if z_s is None else z_s.data, params.k)
    message = value if ctx.party == sender else first_payload(ctx, ctx.history(), sender)
    z = AccValue(broadcast_z, ctx.sizes.acc_value_bits) if isinstance(broadcast_z, bytes) else None

    shares, happy = None, False
    if message is not None and z is not None:
        shares = encode(message, params.b, params.n)
        happy = accumulate(ctx.acc_key, shares) == z
    if happy:
        ctx.set_happy()
    yield from disseminate(ctx, message, shares, z, happy)


def broadcast_via_agreement(agreement: Callable) -> Callable:
    """
    Broadcast from agreement under synchrony: the sender first sends its message to everyone, then all parties run
    the agreement on what they received, the public zero message standing in for a missing or malformed one.
    """

    def program(ctx: PartyContext, value: Optional[bytes], sender: int):
        if ctx.party == sender:
            ctx.multicast(PayloadMsg(value))
        inbox = yield
        if ctx.party == sender:
            message = value
        else:
            message = first_payload(ctx, inbox.at(ctx.scope), sender)
            if message is None:
                message = zero_message(ctx)
        yield from agreement(ctx, message, sender)

    program.__name__ = f"{agreement.__name__}_broadcast"
    return program


sync_half_bb_reduction = broadcast_via_agreement(sync_half_ba)
