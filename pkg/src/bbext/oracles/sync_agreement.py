from collections import Counter
from typing import Optional

from bbext.oracles.dolev_strong import dolev_strong
from bbext.simnet.context import PartyContext, run_parallel


def sync_ba_from_bb(ctx: PartyContext, value: Optional[bytes], value_bits: int):
    """
    Agreement for t < n/2: every party broadcasts its input through its own Dolev-Strong instance, then everyone
    outputs the strict majority of the n delivered values, ⊥ if there is none.
    """
    instances = [
        dolev_strong(ctx.scoped("ds", j), j, value if j == ctx.party else None, value_bits) for j in ctx.params.parties
    ]
    delivered = yield from run_parallel(instances)
    for candidate, votes in Counter(delivered).items():
        if 2 * votes > ctx.n:
            return candidate
    return None
