"""
The shared building blocks of the cryptographic extension protocols: Encode, Distribute and Reconstruct.
"""
from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar, List, Optional, Sequence, Tuple

from bbext.authentic import AccKey, AccValue, SizeModel, Witness, acc_create_witnesses, acc_eval, acc_verify
from bbext.coding import Codeword, pad_message, rs_decode, rs_encode, unpad_blocks
from bbext.errors import DecodeFailure, PreconditionError, ReconstructionFailure
from bbext.utils.logging import get_logger

if TYPE_CHECKING:
    from bbext.simnet.context import PartyContext

logger = get_logger(__name__)


@dataclass(frozen=True)
class IndexedShare:
    index: int
    share: bytes

    def encode(self) -> bytes:
        """Canonical accumulator encoding: 16-bit big-endian index ‖ symbol-block bytes"""
        return self.index.to_bytes(2, "big") + self.share


@dataclass(frozen=True)
class SharePackage:
    indexed_share: IndexedShare
    witness: Witness

    @property
    def index(self) -> int:
        return self.indexed_share.index

    def nominal_bits(self, sizes: SizeModel) -> int:
        return sizes.package_bits(len(self.indexed_share.share))

    def to_wire(self) -> bytes:
        share, witness = self.indexed_share.share, self.witness.data
        return (
            self.index.to_bytes(2, "big")
            + len(share).to_bytes(4, "big")
            + share
            + len(witness).to_bytes(2, "big")
            + witness
        )

    @classmethod
    def from_wire(cls, data: bytes, witness_bits: int) -> "SharePackage":
        try:
            index = int.from_bytes(data[0:2], "big")
            share_len = int.from_bytes(data[2:6], "big")
            share = data[6 : 6 + share_len]
            offset = 6 + share_len
            witness_len = int.from_bytes(data[offset : offset + 2], "big")
            witness = data[offset + 2 : offset + 2 + witness_len]
        except IndexError as e:
            raise ValueError("truncated share package") from e
        if len(share) != share_len or len(witness) != witness_len or offset + 2 + witness_len != len(data):
            raise ValueError("malformed share package")
        return cls(IndexedShare(index, share), Witness(witness, witness_bits))


@dataclass(frozen=True)
class PackageMsg:
    """A share package on the wire, used by Distribute and by every forwarding step"""

    kind: ClassVar[str] = "package"
    package: SharePackage

    def nominal_bits(self, sizes: SizeModel) -> int:
        return self.package.nominal_bits(sizes)


def encode(m: bytes, b: int, n: int) -> Tuple[IndexedShare, ...]:
    """Pad and split m into b blocks, RS-encode into n symbol-blocks, and index them 1..n"""
    codeword = rs_encode(pad_message(m, b), n)
    return tuple(IndexedShare(j + 1, share) for j, share in enumerate(codeword.symbols))


def accumulate(ak: AccKey, shares: Sequence[IndexedShare]) -> AccValue:
    return acc_eval(ak, [share.encode() for share in shares])


def make_packages(shares: Sequence[IndexedShare], ak: AccKey, z: AccValue) -> Optional[List[SharePackage]]:
    """Witness every share under z; None if the shares do not accumulate to z"""
    encodings = [share.encode() for share in shares]
    if acc_eval(ak, encodings) != z:
        return None
    witnesses = acc_create_witnesses(ak, encodings)
    return [SharePackage(share, witness) for share, witness in zip(shares, witnesses)]


def distribute(
    ctx: "PartyContext", shares: Sequence[IndexedShare], ak: AccKey, z: AccValue, label: str = "distribute"
) -> bool:
    """
    Send (s_j, w_j) to every party P_j, the caller's own package included (delivered locally for free).
    Returns False, sending nothing, when the shares do not accumulate to z.
    """
    packages = make_packages(shares, ak, z)
    if packages is None:
        logger.debug(f"party {ctx.party}: shares do not match the agreed accumulation value, not distributing")
        return False
    for package in packages:
        ctx.send(package.index, PackageMsg(package), label=label)
    return True


def verify_package(ak: AccKey, z: AccValue, package: Optional[SharePackage], index: Optional[int] = None) -> bool:
    if not isinstance(package, SharePackage):
        return False
    if index is not None and package.index != index:
        return False
    return acc_verify(ak, z, package.witness, package.indexed_share.encode())


def reconstruct(
    packages: Sequence[Optional[SharePackage]], ak: AccKey, z: AccValue, d0: int, b: Optional[int] = None
) -> bytes:
    """
    Rebuild the message from up to n packages, slot j - 1 holding the package for index j.
    Absent, misplaced or unverifiable packages become erasures; decoding runs with c = 0, d = d0.

    :param b: data-symbol count, n - d0 unless given
    :raises ReconstructionFailure: if more than d0 slots are erased or the verified shares are inconsistent
    """
    n = len(packages)
    b = n - d0 if b is None else b
    symbols = []
    for j, package in enumerate(packages, start=1):
        symbols.append(package.indexed_share.share if verify_package(ak, z, package, index=j) else None)
    present = {len(s) for s in symbols if s is not None}
    if len(present) > 1:
        raise ReconstructionFailure("verified shares disagree on their length")
    try:
        data = rs_decode(Codeword(tuple(symbols), b), c=0, d=d0)
        return unpad_blocks(data)
    except (DecodeFailure, PreconditionError) as e:
        raise ReconstructionFailure(str(e)) from e
