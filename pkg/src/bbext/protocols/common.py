from typing import Dict, Iterable, List, Optional, Sequence

from bbext.authentic import AccValue
from bbext.blocks import IndexedShare, PackageMsg, SharePackage, distribute, reconstruct, verify_package
from bbext.errors import InvariantViolation, ReconstructionFailure
from bbext.oracles import agree, decode_bit, encode_bit
from bbext.protocols.messages import ForwardMsg, PayloadMsg
from bbext.simnet.context import PartyContext
from bbext.simnet.envelope import Envelope
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def claims_happy(ctx: PartyContext, happy: bool) -> bool:
    """The happy bit a party announces; corrupt parties may be told to claim it regardless"""
    return happy or bool(ctx.overrides.get("claim_happy"))


def zero_message(ctx: PartyContext) -> bytes:
    """The predefined public fallback message"""
    return bytes(ctx.params.message_bytes)


def first_payload(ctx: PartyContext, envelopes: Iterable[Envelope], sender: int) -> Optional[bytes]:
    """The first well-formed l-bit payload from the sender, None if there is none"""
    for envelope in envelopes:
        if envelope.sender == sender and isinstance(envelope.payload, PayloadMsg):
            message = envelope.payload.message
            if isinstance(message, bytes) and len(message) == ctx.params.message_bytes:
                return message
            return None
    return None


def own_package(ctx: PartyContext, envelopes: Iterable[Envelope], z: AccValue) -> Optional[SharePackage]:
    """The first share package for the party's own index that verifies under z"""
    for envelope in envelopes:
        package = getattr(envelope.payload, "package", None)
        if isinstance(envelope.payload, PackageMsg) and verify_package(ctx.acc_key, z, package, index=ctx.party):
            return package
    return None


def collect_forwarded(
    ctx: PartyContext, envelopes: Iterable[Envelope], z: AccValue, slots: Dict[int, SharePackage]
) -> Dict[int, SharePackage]:
    """Fill slot j with the first valid index-j package forwarded by P_j; filled slots are never replaced"""
    for envelope in envelopes:
        if not isinstance(envelope.payload, ForwardMsg) or envelope.sender in slots:
            continue
        if verify_package(ctx.acc_key, z, envelope.payload.package, index=envelope.sender):
            slots[envelope.sender] = envelope.payload.package
    return slots


def slot_list(ctx: PartyContext, slots: Dict[int, SharePackage]) -> List[Optional[SharePackage]]:
    return [slots.get(j) for j in ctx.params.parties]


def disseminate(
    ctx: PartyContext,
    message: Optional[bytes],
    shares: Optional[Sequence[IndexedShare]],
    z: Optional[AccValue],
    happy: bool,
):
    """
    Agree on the happy bit, then spread the agreed message from the happy parties to everyone:
    happy parties distribute, every party forwards its own valid package, unhappy parties reconstruct.
    Needs t < n/2; with a decision of 0 every party outputs ⊥.
    """
    decision = yield from agree(ctx, "happy", encode_bit(claims_happy(ctx, happy)), 1)
    if decode_bit(decision) != 1 or z is None:
        ctx.proc.phase = "aborted"
        ctx.output(None)
        return
    ctx.proc.phase = "distribute"
    if happy:
        distribute(ctx, shares, ctx.acc_key, z)
    inbox = yield

    ctx.proc.phase = "forward"
    slots: Dict[int, SharePackage] = {}
    package = own_package(ctx, inbox.at(ctx.scope), z)
    if package is not None:
        slots[ctx.party] = package
        ctx.multicast(ForwardMsg(package))
    inbox = yield

    ctx.proc.phase = "output"
    if happy:
        ctx.output(message)
        return
    collect_forwarded(ctx, inbox.at(ctx.scope), z, slots)
    ctx.proc.packages.update(slots)
    try:
        ctx.output(reconstruct(slot_list(ctx, slots), ctx.acc_key, z, d0=ctx.t))
    except ReconstructionFailure as e:
        raise InvariantViolation(f"reconstruction failed after an agreed happy bit: {e}", ctx.party) from e
