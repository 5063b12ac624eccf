import hashlib
from typing import Optional, Set, Tuple

from bbext.simnet.envelope import Scope


class CoinOracle:
    """
    Common coin: every party asking for (instance, round) gets the same bit, derived from the session coin seed.
    The adversary may peek at a round's coin only once some honest party has queried it.
    """

    def __init__(self, seed: bytes):
        self._seed = seed
        self._revealed: Set[Tuple[Scope, int]] = set()

    def _value(self, scope: Scope, round_no: int) -> int:
        material = self._seed + "/".join(scope).encode() + round_no.to_bytes(4, "big")
        return hashlib.sha256(material).digest()[0] & 1

    def query(self, scope: Scope, round_no: int, honest: bool = True) -> int:
        if honest:
            self._revealed.add((scope, round_no))
        return self._value(scope, round_no)

    def peek(self, scope: Scope, round_no: int) -> Optional[int]:
        if (scope, round_no) not in self._revealed:
            return None
        return self._value(scope, round_no)
