import math
from dataclasses import dataclass

from bbext.constants import INDEX_BITS
from bbext.data_structures import AccScheme


@dataclass(frozen=True)
class SizeModel:
    """Nominal bit sizes of every artifact that crosses the network. Accounting uses these, never byte lengths."""

    n: int
    k: int
    scheme: AccScheme = AccScheme.HASH_TREE

    @property
    def acc_value_bits(self) -> int:
        return self.k

    @property
    def witness_bits(self) -> int:
        if self.scheme is AccScheme.BILINEAR_EMULATED:
            return self.k
        return self.k * (math.ceil(math.log2(self.n)) if self.n > 1 else 0)

    @property
    def index_bits(self) -> int:
        return INDEX_BITS

    @property
    def multisig_bits(self) -> int:
        return self.k + self.n

    @property
    def party_bits(self) -> int:
        return max(1, math.ceil(math.log2(self.n + 1)))

    @property
    def vector_bits(self) -> int:
        return self.n

    def package_bits(self, share_bytes: int) -> int:
        return 8 * share_bytes + self.witness_bits + self.index_bits
