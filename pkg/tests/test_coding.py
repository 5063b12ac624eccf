import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bbext.coding import (
    Codeword,
    DataBlocks,
    FieldElem,
    brute_force_decode,
    pad_message,
    padded_share_bits,
    rs_decode,
    rs_encode,
    unpad_blocks,
)
from bbext.coding.galois import FIELD_MAX, gf_div, gf_inv, gf_mul, poly_divmod, poly_eval, solve_linear
from bbext.errors import DecodeFailure, PreconditionError

elements = st.integers(min_value=0, max_value=FIELD_MAX)
nonzero = st.integers(min_value=1, max_value=FIELD_MAX)


@given(elements, elements, elements)
def test_field_axioms(a, b, c):
    assert gf_mul(a, b) == gf_mul(b, a)
    assert gf_mul(a, gf_mul(b, c)) == gf_mul(gf_mul(a, b), c)
    assert gf_mul(a, b ^ c) == gf_mul(a, b) ^ gf_mul(a, c)
    assert gf_mul(a, 1) == a


@given(nonzero, elements)
def test_field_inverse(a, b):
    assert gf_mul(a, gf_inv(a)) == 1
    assert gf_mul(gf_div(b, a), a) == b


def test_field_elem():
    a, b = FieldElem(3), FieldElem(0xBEEF)
    assert a + a == FieldElem(0)
    assert (a * b) / b == a
    assert a ** -1 == a.inverse()
    assert a ** 0 == FieldElem(1)
    assert int(a * a.inverse()) == 1
    with pytest.raises(ValueError):
        FieldElem(1 << 16)
    with pytest.raises(ZeroDivisionError):
        FieldElem(0).inverse()


def test_poly_divmod():
    # (x + 2)(x + 3) over GF(2^16)
    product = [gf_mul(2, 3), 2 ^ 3, 1]
    quotient, remainder = poly_divmod(product, [3, 1])
    assert quotient[:2] == [2, 1]
    assert not any(remainder)
    assert poly_eval(product, 2) == 0


def test_solve_linear_inconsistent():
    assert solve_linear([[1, 1], [1, 1]], [1, 2]) is None
    assert solve_linear([[1, 0], [0, 1]], [5, 7]) == [5, 7]


def _random_data(rng: np.random.Generator, b: int, stripes: int) -> DataBlocks:
    return DataBlocks.from_symbols(rng.integers(0, FIELD_MAX + 1, size=(b, stripes)).tolist())


def _corrupt(cw: Codeword, position: int) -> Codeword:
    block = bytearray(cw.symbols[position])
    block[0] ^= 0x5A
    return cw.replace(position, bytes(block))


@st.composite
def decoding_cases(draw):
    n = draw(st.integers(min_value=2, max_value=12))
    b = draw(st.integers(min_value=1, max_value=n))
    c = draw(st.integers(min_value=0, max_value=(n - b) // 2))
    d = draw(st.integers(min_value=0, max_value=n - b - 2 * c))
    positions = draw(st.permutations(range(n)))
    return n, b, c, d, positions[:c], positions[c : c + d], draw(st.integers(0, 2**32 - 1))


@settings(max_examples=60, deadline=None)
@given(decoding_cases())
def test_rs_decode_corrects_errors_and_erasures(case):
    n, b, c, d, errors, erasures, seed = case
    rng = np.random.default_rng(seed)
    data = _random_data(rng, b, stripes=3)
    received = rs_encode(data, n).erase(erasures)
    for position in errors:
        received = _corrupt(received, position)
    assert rs_decode(received, c, d).blocks == data.blocks


@pytest.mark.parametrize("n, b", [(4, 2), (5, 1), (7, 3), (8, 4)])
def test_rs_decode_matches_brute_force(n, b):
    rng = np.random.default_rng(n * 100 + b)
    for _ in range(10):
        data = _random_data(rng, b, stripes=2)
        c = int(rng.integers(0, (n - b) // 2 + 1))
        d = int(rng.integers(0, n - b - 2 * c + 1))
        positions = rng.permutation(n).tolist()
        received = rs_encode(data, n).erase(positions[c : c + d])
        for position in positions[:c]:
            received = _corrupt(received, position)
        assert rs_decode(received, c, d).blocks == brute_force_decode(received, c, d).blocks == data.blocks


def test_rs_decode_rejects_bad_radius():
    data = DataBlocks.from_symbols([[1, 2], [3, 4]])
    cw = rs_encode(data, 4)
    with pytest.raises(PreconditionError):
        rs_decode(cw, c=2, d=0)
    with pytest.raises(DecodeFailure):
        rs_decode(cw.erase([0, 1]), c=0, d=1)


def test_rs_decode_detects_too_many_errors():
    data = DataBlocks.from_symbols([[7, 7, 7]])
    cw = rs_encode(data, 4)
    # three of four symbols moved to another codeword of the same code
    other = rs_encode(DataBlocks.from_symbols([[9, 9, 9]]), 4)
    mixed = Codeword((cw.symbols[0],) + other.symbols[1:], 1)
    assert rs_decode(mixed, c=1, d=0).blocks == DataBlocks.from_symbols([[9, 9, 9]]).blocks
    with pytest.raises(DecodeFailure):
        brute_force_decode(Codeword((cw.symbols[0], cw.symbols[1]) + other.symbols[2:], 1), c=1, d=0)


def test_rs_encode_dimensions():
    with pytest.raises(PreconditionError):
        rs_encode(DataBlocks.from_symbols([[1], [2], [3]]), 2)


@pytest.mark.parametrize("message", [b"", b"x", b"hello world", bytes(range(256))])
@pytest.mark.parametrize("b", [1, 3, 7])
def test_padding(message, b):
    data = pad_message(message, b)
    assert data.b == b
    assert data.original_bit_length == 8 * len(message)
    assert 8 * len(data.blocks[0]) == padded_share_bits(8 * len(message), b)
    assert unpad_blocks(data) == message


def test_unpad_rejects_garbage():
    data = pad_message(b"abc", 2)
    dirty = DataBlocks((b"abc\x01" + data.blocks[0][4:], data.blocks[1]), data.original_bit_length)
    with pytest.raises(DecodeFailure):
        unpad_blocks(dirty)
    huge_trailer = DataBlocks((bytes(6), bytes(4) + b"\xff\xff"), 0)
    with pytest.raises(DecodeFailure):
        unpad_blocks(huge_trailer)
