from typing import Dict, Iterable

from bbext.oracles.base import OracleKind


def model_cost(kind: OracleKind, value_bits: int, n: int, k: int) -> int:
    """
    Bits charged for one ideal oracle invocation:
    sync bb/ba (v + k)n^2 + n^3, async rb v n^2, async ba (v + k)n^2
    """
    if kind in (OracleKind.SYNC_BB, OracleKind.SYNC_BA):
        return (value_bits + k) * n * n + n ** 3
    if kind is OracleKind.ASYNC_RB:
        return value_bits * n * n
    return (value_bits + k) * n * n


def split_cost(cost: int, parties: Iterable[int]) -> Dict[int, int]:
    """Integer shares of a cost, the remainder going to the lowest ids"""
    parties = sorted(parties)
    share, remainder = divmod(cost, len(parties))
    return {party: share + (1 if rank < remainder else 0) for rank, party in enumerate(parties)}
