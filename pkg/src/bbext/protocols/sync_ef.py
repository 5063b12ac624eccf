"""
Error-free synchronous agreement for t < n/3: no accumulator and no signatures, only n 1-bit broadcasts.
"""
from typing import Dict, FrozenSet, Optional

from bbext.errors import DecodeFailure, InvariantViolation
from bbext.oracles import broadcast, decode_bit, encode_bit
from bbext.protocols.common import claims_happy, zero_message
from bbext.protocols.error_free import (
    block_shares,
    decode_majorities,
    find_eset,
    from_vector,
    select_majority,
    to_vector,
)
from bbext.protocols.messages import ESetMsg, ExchangeMsg, MajorityMsg, VVectorMsg
from bbext.protocols.sync_half import broadcast_via_agreement
from bbext.simnet.context import PartyContext, run_parallel
from bbext.star import PartyGraph
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def sync_ef_ba(ctx: PartyContext, value: bytes, sender: Optional[int] = None):
    n, t, me = ctx.n, ctx.t, ctx.party
    shares = block_shares(ctx, value)

    ctx.proc.phase = "exchange"
    for j in ctx.params.parties:
        if j != me:
            ctx.send(j, ExchangeMsg(shares[me - 1], shares[j - 1]))
    inbox = yield
    exchanges: Dict[int, ExchangeMsg] = {}
    for source, msg in inbox.of(ctx.scope, ExchangeMsg):
        exchanges.setdefault(source, msg)
    # s_ji as received from P_j, one's own block for j = i
    cross = {j: msg.cross for j, msg in exchanges.items()}
    cross[me] = shares[me - 1]

    ctx.proc.phase = "vvector"
    consistent = {me} | {
        j for j, msg in exchanges.items() if msg.diagonal == shares[j - 1] and msg.cross == shares[me - 1]
    }
    ctx.multicast(VVectorMsg(to_vector(ctx, consistent)))
    inbox = yield
    claims = {me: frozenset(consistent)}
    for source, msg in inbox.of(ctx.scope, VVectorMsg):
        claims.setdefault(source, from_vector(ctx, msg.vector))
    edges = [(x, y) for x in claims for y in claims[x] if x < y and y in claims and x in claims[y]]
    eset = find_eset(PartyGraph.from_edges(n, edges), n, t)
    if eset is None and claims_happy(ctx, False):
        eset = frozenset(ctx.params.parties)

    ctx.proc.phase = "availability"
    if eset is not None:
        ctx.multicast(ESetMsg(to_vector(ctx, eset)))
    announced = encode_bit(eset is not None)
    instances = [broadcast(ctx, ("avail", j), j, announced if j == me else None, 1) for j in ctx.params.parties]
    available = yield from run_parallel(instances)
    ones = [j for j, bit in zip(ctx.params.parties, available) if decode_bit(bit) == 1]
    if len(ones) < 2 * t + 1:
        ctx.proc.phase = "fallback"
        ctx.output(zero_message(ctx))
        return

    ctx.proc.phase = "majority"
    esets: Dict[int, FrozenSet[int]] = {}
    if eset is not None:
        esets[me] = eset
    for envelope in ctx.history():
        if isinstance(envelope.payload, ESetMsg) and envelope.sender in ones:
            esets.setdefault(envelope.sender, from_vector(ctx, envelope.payload.vector))
    esets = {owner: members for owner, members in esets.items() if owner in ones}
    majority = select_majority(esets, cross, t)
    if majority is not None:
        ctx.multicast(MajorityMsg(majority))
    inbox = yield

    ctx.proc.phase = "decode"
    values = {me: majority}
    for source, msg in inbox.of(ctx.scope, MajorityMsg):
        values.setdefault(source, msg.value)
    try:
        ctx.output(decode_majorities(ctx, [values.get(j) for j in ctx.params.parties], c=t, d=0, fill_missing=True))
    except DecodeFailure as e:
        raise InvariantViolation(f"majority values do not decode: {e}", me) from e


sync_ef_bb = broadcast_via_agreement(sync_ef_ba)
