"""
Pieces shared by the error-free protocols: share exchange over t + 1 data blocks, the party graph built from
consistency claims, and the majority value a party derives from the announced E-sets.
"""
from collections import Counter
from typing import FrozenSet, List, Mapping, Optional, Sequence, Tuple

from bbext.blocks import encode
from bbext.coding import Codeword, padded_share_bits, rs_decode, unpad_blocks
from bbext.errors import DecodeFailure, PreconditionError
from bbext.star import PartyGraph, derive_fe, star
from bbext.simnet.context import PartyContext


def block_shares(ctx: PartyContext, message: bytes) -> List[bytes]:
    """s_i1 .. s_in: the message split into t + 1 blocks and encoded to n symbol-blocks"""
    return [share.share for share in encode(message, ctx.t + 1, ctx.n)]


def share_bytes(ctx: PartyContext) -> int:
    return padded_share_bits(ctx.params.l, ctx.t + 1) // 8


def to_vector(ctx: PartyContext, members) -> Tuple[bool, ...]:
    members = set(members)
    return tuple(party in members for party in ctx.params.parties)


def from_vector(ctx: PartyContext, vector) -> FrozenSet[int]:
    if not isinstance(vector, tuple) or len(vector) != ctx.n:
        return frozenset()
    return frozenset(party for party, bit in zip(ctx.params.parties, vector) if bit)


def find_eset(graph: PartyGraph, n: int, t: int) -> Optional[FrozenSet[int]]:
    """E_i of a party graph, None when STAR finds no star or F/E are too small"""
    result = star(graph, n, t)
    if result is None:
        return None
    fe = derive_fe(graph, result.C, result.D, n, t)
    return None if fe is None else fe[1]


def majority_of(eset: FrozenSet[int], cross: Mapping[int, bytes]) -> Optional[bytes]:
    """The value s_ji held by at least ⌈(|E|+1)/2⌉ members j of E, if any"""
    counts = Counter(cross[j] for j in eset if j in cross)
    threshold = (len(eset) + 2) // 2
    for value, count in counts.most_common(1):
        if count >= threshold:
            return value
    return None


def select_majority(
    esets: Mapping[int, FrozenSet[int]], cross: Mapping[int, bytes], t: int
) -> Optional[bytes]:
    """
    Scan the E-sets in ascending owner order and return the first non-⊥ majority value shared by t + 1 of them
    """
    support: Counter = Counter()
    for owner in sorted(esets):
        value = majority_of(esets[owner], cross)
        if value is None:
            continue
        support[value] += 1
        if support[value] >= t + 1:
            return value
    return None


def decode_majorities(
    ctx: PartyContext, values: Sequence[Optional[bytes]], c: int, d: int, fill_missing: bool = False
) -> bytes:
    """
    Decode the majority values, position j holding maj_j; a malformed layout decodes to the zero message.
    With fill_missing, absent or malformed values count as zero blocks instead of erasures.

    :raises DecodeFailure: if no codeword lies within c errors
    """
    size = share_bytes(ctx)
    missing = bytes(size) if fill_missing else None
    symbols = tuple(value if isinstance(value, bytes) and len(value) == size else missing for value in values)
    try:
        data = rs_decode(Codeword(symbols, ctx.t + 1), c=c, d=d)
    except PreconditionError as e:
        raise DecodeFailure(str(e)) from e
    try:
        return unpad_blocks(data)
    except DecodeFailure:
        return bytes(ctx.params.message_bytes)
