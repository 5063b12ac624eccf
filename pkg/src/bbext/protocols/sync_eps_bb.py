"""
Synchronous broadcast tolerating any t < n (an eps fraction of honest parties): after the k-bit broadcast of z,
t + 1 iterations of Distribution, Sharing and Reconstruction spread the message, each step run at most once per
party. A party only accepts a reconstruction in iteration r together with a HAPPY certificate of r other signers.
"""
from typing import Dict, Optional, Sequence

from bbext.authentic import AccValue, MultiSig, msig_combine
from bbext.blocks import (
    IndexedShare,
    PackageMsg,
    SharePackage,
    accumulate,
    distribute,
    encode,
    make_packages,
    reconstruct,
)
from bbext.constants import HAPPY_MESSAGE
from bbext.errors import ReconstructionFailure
from bbext.oracles import broadcast
from bbext.protocols.common import claims_happy, collect_forwarded, own_package, slot_list
from bbext.protocols.messages import ForwardMsg, HappyMsg
from bbext.simnet.context import PartyContext
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def happy_tag(ctx: PartyContext) -> bytes:
    return ctx.message_tag(HAPPY_MESSAGE)


def _best_certificate(ctx: PartyContext, envelopes, iteration: int) -> Optional[MultiSig]:
    """A valid HAPPY certificate with at least `iteration` signers other than the party itself"""
    tag = happy_tag(ctx)
    for envelope in envelopes:
        if not isinstance(envelope.payload, HappyMsg):
            continue
        cert = envelope.payload.cert
        if len(cert.signers - {ctx.party}) >= iteration and ctx.authority.verify(cert, tag):
            return cert
    return None


def sync_eps_bb(ctx: PartyContext, value: Optional[bytes], sender: int):
    params = ctx.params
    ak = ctx.acc_key
    z_s = None
    if ctx.party == sender:
        shares: Optional[Sequence[IndexedShare]] = encode(value, params.b, params.n)
        z_s = accumulate(ak, shares)
        ctx.set_happy()
    else:
        shares = None

    ctx.proc.phase = "broadcast-z"
    broadcast_z = yield from broadcast(ctx, "z", sender, None if z_s is None else z_s.data, params.k)
    if not isinstance(broadcast_z, bytes):
        ctx.proc.phase = "aborted"
        ctx.output(None)
        return
    z = AccValue(broadcast_z, ctx.sizes.acc_value_bits)

    output = value if ctx.party == sender else None
    certificate: Optional[MultiSig] = None
    distributed = shared = False
    accepted = ctx.party == sender
    slots: Dict[int, SharePackage] = {}

    for iteration in range(1, params.t + 2):
        ctx.proc.phase = f"distribution:{iteration}"
        if not distributed and (ctx.proc.happy or claims_happy(ctx, False)):
            distributed = True
            signature = ctx.signer.sign(happy_tag(ctx))
            certificate = signature if certificate is None else msig_combine(certificate, signature)
            ctx.multicast(HappyMsg(certificate))
            if shares is not None:
                distribute(ctx, shares, ak, z)
        distribution = yield

        ctx.proc.phase = f"sharing:{iteration}"
        if not shared:
            package = own_package(ctx, distribution.at(ctx.scope), z)
            if package is not None:
                shared = True
                slots.setdefault(ctx.party, package)
                ctx.multicast(ForwardMsg(package), label="share")
        sharing = yield

        collect_forwarded(ctx, sharing.at(ctx.scope), z, slots)
        if accepted:
            continue
        cert = _best_certificate(ctx, distribution.at(ctx.scope), iteration)
        if cert is None:
            continue
        try:
            candidate = reconstruct(slot_list(ctx, slots), ak, z, d0=params.t)
        except ReconstructionFailure:
            continue
        candidate_shares = encode(candidate, params.b, params.n)
        if accumulate(ak, candidate_shares) != z:
            continue
        accepted = True
        ctx.set_happy()
        output, shares, certificate = candidate, candidate_shares, cert
        ctx.proc.certificates.append(cert)
        ctx.proc.phase = f"accepted:{iteration}"
        logger.debug(f"party {ctx.party}: accepted in iteration {iteration} with {len(cert.signers)} signers")

    ctx.proc.packages.update(slots)
    ctx.output(output)


def withholding_sender(release_iteration: int):
    """
    A corrupt sender that broadcasts a valid z, keeps quiet, and in the distribution step of `release_iteration`
    sends every honest party its valid package but only the lowest honest party a HAPPY certificate signed by the
    whole corrupt set.
    """

    def program(ctx: PartyContext, value: Optional[bytes], sender: int):
        params = ctx.params
        shares = encode(value, params.b, params.n)
        z = accumulate(ctx.acc_key, shares)
        yield from broadcast(ctx, "z", sender, z.data, params.k)
        honest = sorted(set(params.parties) - set(ctx.coalition))
        for iteration in range(1, params.t + 2):
            if iteration == release_iteration and honest:
                for package in make_packages(shares, ctx.acc_key, z):
                    if package.index in honest:
                        ctx.send(package.index, PackageMsg(package), label="distribute")
                signatures = [signer.sign(happy_tag(ctx)) for _, signer in sorted(ctx.coalition.items())]
                cert = signatures[0]
                for signature in signatures[1:]:
                    cert = msig_combine(cert, signature)
                ctx.send(honest[0], HappyMsg(cert))
            yield
            yield

    return program
