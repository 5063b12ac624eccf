from dataclasses import dataclass
from typing import ClassVar, Dict, List, Optional

from bbext.authentic import MultiSig, SizeModel, msig_combine
from bbext.simnet.context import PartyContext
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class ChainMsg:
    """A value with the multi-signature chain vouching for it"""

    kind: ClassVar[str] = "ds_chain"
    value: bytes
    msig: MultiSig
    value_bits: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return self.value_bits + sizes.multisig_bits


def dolev_strong(ctx: PartyContext, sender: int, value: Optional[bytes], value_bits: int):
    """
    Authenticated broadcast for any t < n, t + 1 rounds.
    A value counts in round r once its chain starts with the sender and carries r distinct signatures; a party
    relays each of the first two values it accepts with its own signature added, and outputs the value it
    accepted if it accepted exactly one, ⊥ otherwise.

    :param value: the sender's value, ignored at other parties
    """
    accepted: Dict[bytes, MultiSig] = {}

    def tag(candidate: bytes) -> bytes:
        return ctx.message_tag(b"dolev-strong", sender.to_bytes(2, "big"), candidate)

    if ctx.party == sender and isinstance(value, bytes):
        msig = ctx.signer.sign(tag(value))
        accepted[value] = msig
        ctx.multicast(ChainMsg(value, msig, value_bits))

    for round_no in range(1, ctx.t + 2):
        inbox = yield
        fresh: List[ChainMsg] = []
        for _, msg in inbox.of(ctx.scope, ChainMsg):
            if len(accepted) >= 2 or not isinstance(msg.value, bytes) or msg.value in accepted:
                continue
            signers = msg.msig.signers
            if sender in signers and len(signers) >= round_no and ctx.authority.verify(msg.msig, tag(msg.value)):
                accepted[msg.value] = msg.msig
                fresh.append(msg)
        if round_no <= ctx.t:
            for msg in fresh:
                relayed = msig_combine(msg.msig, ctx.signer.sign(tag(msg.value)))
                ctx.multicast(ChainMsg(msg.value, relayed, value_bits))

    if len(accepted) == 1:
        return next(iter(accepted))
    if accepted:
        logger.debug(f"party {ctx.party}: sender {sender} equivocated at {'/'.join(ctx.scope)}")
    return None
