import dataclasses

import pytest

from bbext.authentic import acc_gen
from bbext.blocks import IndexedShare, SharePackage, accumulate, encode, make_packages, reconstruct, verify_package
from bbext.data_structures import AccScheme
from bbext.errors import ReconstructionFailure

N, T = 7, 3
MESSAGE = b"a long message that does not fit in a single share" * 3


@pytest.fixture(params=[AccScheme.HASH_TREE, AccScheme.BILINEAR_EMULATED])
def setting(request):
    ak = acc_gen(request.param, N, 128, b"blocks")
    shares = encode(MESSAGE, N - T, N)
    z = accumulate(ak, shares)
    return ak, shares, z, make_packages(shares, ak, z)


def test_encode_indexes_shares():
    shares = encode(MESSAGE, N - T, N)
    assert [share.index for share in shares] == list(range(1, N + 1))
    assert len({len(share.share) for share in shares}) == 1
    assert shares[0].encode()[:2] == b"\x00\x01"


def test_make_packages_checks_accumulation(setting):
    ak, shares, z, packages = setting
    assert all(verify_package(ak, z, package, index=j) for j, package in enumerate(packages, start=1))
    assert not verify_package(ak, z, packages[0], index=2)
    assert not verify_package(ak, z, None)
    assert make_packages(shares, ak, accumulate(ak, encode(b"other", N - T, N))) is None


def test_reconstruct_with_erasures(setting):
    ak, _, z, packages = setting
    slots = list(packages)
    for j in (1, 4, 6):
        slots[j] = None
    assert reconstruct(slots, ak, z, d0=T) == MESSAGE


def test_reconstruct_drops_unverified_packages(setting):
    ak, _, z, packages = setting
    slots = list(packages)
    forged = IndexedShare(2, bytes(len(slots[1].indexed_share.share)))
    slots[1] = dataclasses.replace(slots[1], indexed_share=forged)
    slots[2], slots[3] = slots[3], slots[2]
    assert reconstruct(slots, ak, z, d0=T) == MESSAGE


def test_reconstruct_fails_beyond_erasure_budget(setting):
    ak, _, z, packages = setting
    slots = [None] * (T + 1) + list(packages[T + 1 :])
    with pytest.raises(ReconstructionFailure):
        reconstruct(slots, ak, z, d0=T)


def test_share_package_wire_format(setting):
    ak, _, _, packages = setting
    package = packages[3]
    wire = package.to_wire()
    assert SharePackage.from_wire(wire, package.witness.nominal_bits) == package
    with pytest.raises(ValueError):
        SharePackage.from_wire(wire[:-1], package.witness.nominal_bits)
    with pytest.raises(ValueError):
        SharePackage.from_wire(wire + b"\x00", package.witness.nominal_bits)
