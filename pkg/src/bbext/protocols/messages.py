from dataclasses import dataclass
from typing import ClassVar, Optional, Tuple

from bbext.authentic import MultiSig, SizeModel
from bbext.blocks import SharePackage


@dataclass(frozen=True)
class PayloadMsg:
    """The full l-bit message, sent by a broadcast sender to every party"""

    kind: ClassVar[str] = "payload"
    message: bytes

    def nominal_bits(self, sizes: SizeModel) -> int:
        return 8 * len(self.message)


@dataclass(frozen=True)
class ForwardMsg:
    """A party's own share package, forwarded to every other party"""

    kind: ClassVar[str] = "forward"
    package: SharePackage

    def nominal_bits(self, sizes: SizeModel) -> int:
        return self.package.nominal_bits(sizes)


@dataclass(frozen=True)
class HappyMsg:
    """A HAPPY certificate: multi-signature over the HAPPY tag of the session"""

    kind: ClassVar[str] = "happy_cert"
    cert: MultiSig

    def nominal_bits(self, sizes: SizeModel) -> int:
        return sizes.multisig_bits


@dataclass(frozen=True)
class ExchangeMsg:
    """Share exchange of the error-free protocols: the sender's own block and the recipient's block"""

    kind: ClassVar[str] = "exchange"
    diagonal: bytes
    cross: bytes

    def nominal_bits(self, sizes: SizeModel) -> int:
        return 8 * (len(self.diagonal) + len(self.cross))


@dataclass(frozen=True)
class VVectorMsg:
    """v_i: which parties' blocks were consistent with one's own"""

    kind: ClassVar[str] = "vvector"
    vector: Tuple[bool, ...]

    def nominal_bits(self, sizes: SizeModel) -> int:
        return sizes.vector_bits


@dataclass(frozen=True)
class ESetMsg:
    kind: ClassVar[str] = "eset"
    vector: Tuple[bool, ...]

    def nominal_bits(self, sizes: SizeModel) -> int:
        return sizes.vector_bits


@dataclass(frozen=True)
class MajorityMsg:
    """maj_i: the block value the E-set of party i holds in majority"""

    kind: ClassVar[str] = "majority"
    value: Optional[bytes]

    def nominal_bits(self, sizes: SizeModel) -> int:
        return 0 if self.value is None else 8 * len(self.value)


@dataclass(frozen=True)
class OkMsg:
    """OK(i, j): party i found party j's blocks consistent with its own"""

    kind: ClassVar[str] = "ok"
    subject: int

    def nominal_bits(self, sizes: SizeModel) -> int:
        return 2 * sizes.party_bits
