import pytest

from bbext.authentic import (
    MultiSig,
    SigningAuthority,
    SizeModel,
    Witness,
    acc_create_wit,
    acc_create_witnesses,
    acc_eval,
    acc_gen,
    acc_verify,
    accumulator,
    msig_combine,
)
from bbext.authentic.accumulator import MAX_TRUSTED_SETUPS
from bbext.data_structures import AccScheme

SCHEMES = [AccScheme.HASH_TREE, AccScheme.BILINEAR_EMULATED]


def _members(n: int):
    return [b"share-%d" % i for i in range(n)]


@pytest.mark.parametrize("scheme", SCHEMES)
@pytest.mark.parametrize("k", [128, 256])
def test_accumulator_completeness(scheme, k):
    ak = acc_gen(scheme, 7, k, b"dealer")
    members = _members(7)
    z = acc_eval(ak, members)
    assert z.nominal_bits == k
    witnesses = acc_create_witnesses(ak, members)
    assert all(acc_verify(ak, z, w, d) for w, d in zip(witnesses, members))
    assert all(w.nominal_bits == SizeModel(7, k, scheme).witness_bits for w in witnesses)


@pytest.mark.parametrize("scheme", SCHEMES)
def test_accumulator_soundness(scheme):
    ak = acc_gen(scheme, 5, 128, b"dealer")
    members = _members(5)
    z = acc_eval(ak, members)
    witnesses = acc_create_witnesses(ak, members)

    assert not acc_verify(ak, z, witnesses[0], b"not a member")
    assert not acc_verify(ak, z, witnesses[0], members[1])
    assert not acc_verify(ak, z, None, members[0])
    assert not acc_verify(ak, z, Witness(witnesses[0].data[:-1], witnesses[0].nominal_bits), members[0])

    other = acc_eval(ak, _members(4) + [b"intruder"])
    assert other != z
    assert not acc_verify(ak, other, witnesses[0], members[0])


@pytest.mark.parametrize("scheme", SCHEMES)
def test_acc_create_wit(scheme):
    ak = acc_gen(scheme, 4, 128, b"dealer")
    members = _members(4)
    z = acc_eval(ak, members)
    w = acc_create_wit(ak, z, members[2], members)
    assert acc_verify(ak, z, w, members[2])
    assert acc_create_wit(ak, z, b"absent", members) is None
    assert acc_create_wit(ak, acc_eval(ak, _members(3) + [b"x"]), members[0], members) is None


@pytest.mark.parametrize("scheme", SCHEMES)
def test_acc_gen_is_deterministic(scheme):
    members = _members(6)
    first = acc_gen(scheme, 6, 256, b"seed")
    assert acc_gen(scheme, 6, 256, b"seed") == first
    assert acc_eval(acc_gen(scheme, 6, 256, b"seed"), members) == acc_eval(first, members)
    assert acc_gen(scheme, 6, 256, b"other seed") != first


def test_trusted_setups_are_bounded():
    members = _members(3)
    kept = acc_gen(AccScheme.BILINEAR_EMULATED, 3, 128, b"kept")
    oldest = acc_gen(AccScheme.BILINEAR_EMULATED, 3, 128, b"oldest")
    z = acc_eval(kept, members)
    for i in range(MAX_TRUSTED_SETUPS + 8):
        acc_gen(AccScheme.BILINEAR_EMULATED, 3, 128, b"sweep-%d" % i)
        if i % 16 == 0:
            assert acc_eval(kept, members) == z
    assert len(accumulator._SETUPS) <= MAX_TRUSTED_SETUPS
    assert acc_eval(kept, members) == z
    with pytest.raises(ValueError):
        acc_eval(oldest, members)


def test_accumulator_rejects_bad_member_lists():
    ak = acc_gen(AccScheme.HASH_TREE, 3, 128, b"dealer")
    with pytest.raises(ValueError):
        acc_eval(ak, [b"a", b"b"])
    with pytest.raises(ValueError):
        acc_eval(ak, [b"a", b"a", b"b"])
    with pytest.raises(ValueError):
        acc_gen(AccScheme.HASH_TREE, 3, 64, b"dealer")


def test_size_model():
    sizes = SizeModel(10, 128)
    assert sizes.witness_bits == 128 * 4
    assert SizeModel(10, 128, AccScheme.BILINEAR_EMULATED).witness_bits == 128
    assert SizeModel(1, 256).witness_bits == 0
    assert sizes.multisig_bits == 138
    assert sizes.package_bits(6) == 48 + 512 + 16


@pytest.fixture
def authority():
    return SigningAuthority(5, b"k" * 32, b"session")


def test_multisig_sign_and_combine(authority):
    tag = b"HAPPY/3"
    sigs = [authority.signer(party).sign(tag) for party in (1, 2, 4)]
    combined = msig_combine(msig_combine(sigs[0], sigs[1]), sigs[2])
    assert combined.signers == frozenset({1, 2, 4})
    assert combined.chain_length == 3
    assert authority.verify(combined, tag)
    assert authority.verify(msig_combine(combined, sigs[1]), tag)
    assert not authority.verify(combined, b"HAPPY/4")
    assert not authority.verify(None, tag)


def test_multisig_rejects_forgeries(authority):
    tag = b"HAPPY/1"
    sig = authority.signer(2).sign(tag)
    claimed = MultiSig(tag, sig.aggregate, frozenset({2, 3}))
    assert not authority.verify(claimed, tag)
    assert not authority.verify(MultiSig(tag, b"", frozenset()), tag)
    assert not authority.verify(MultiSig(tag, sig.aggregate[:-1], sig.signers), tag)

    foreign = SigningAuthority(5, b"k" * 32, b"another session").signer(2).sign(tag)
    assert not authority.verify(foreign, tag)
    with pytest.raises(ValueError):
        msig_combine(sig, authority.signer(3).sign(b"HAPPY/2"))
