"""Reed-Solomon error/erasure recovery against the brute-force reference, and the padding layout."""
from typing import List

import numpy as np

from bbext.checks.base import PropertyResult, scaled
from bbext.coding import (
    Codeword,
    DataBlocks,
    brute_force_decode,
    pad_message,
    padded_share_bits,
    rs_decode,
    rs_encode,
    unpad_blocks,
)
from bbext.coding.reed_solomon import array_to_block, block_to_array
from bbext.errors import DecodeFailure

STRIPES = 2


def random_data(rng: np.random.Generator, b: int, stripes: int = STRIPES) -> DataBlocks:
    return DataBlocks.from_symbols(rng.integers(0, 1 << 16, size=(b, stripes)).tolist())


def corrupt(cw: Codeword, rng: np.random.Generator, c: int, d: int) -> Codeword:
    """Erase d random positions and replace c other ones by different blocks"""
    positions = rng.permutation(cw.n).tolist()
    received = cw.erase(positions[:d])
    for j in positions[d : d + c]:
        noise = rng.integers(1, 1 << 16, size=STRIPES)
        received = received.replace(j, array_to_block(block_to_array(cw.symbols[j]) ^ noise))
    return received


def _decode_trial(result: PropertyResult, rng, n: int, b: int, c: int, d: int, reference: bool):
    data = random_data(rng, b)
    received = corrupt(rs_encode(data, n), rng, c, d)
    try:
        decoded = rs_decode(received, c, d)
        ok = decoded == data
        if ok and reference:
            ok = brute_force_decode(received, c, d) == data
    except DecodeFailure as e:
        ok = False
        decoded = e
    result.record(ok, f"n={n} b={b} c={c} d={d}: {decoded!r}"[:200])


def run_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    rng = np.random.default_rng([seed, 1])

    exhaustive = PropertyResult("rs recovery, every (n, b, c, d) with n <= 8, vs reference")
    repeats = scaled(3, scale)
    for n in range(1, 9):
        for b in range(1, n + 1):
            for c in range((n - b) // 2 + 1):
                for d in range(n - b - 2 * c + 1):
                    for _ in range(repeats):
                        _decode_trial(exhaustive, rng, n, b, c, d, reference=True)

    randomized = PropertyResult("rs recovery, random (n, b, c, d) with n <= 12")
    for _ in range(scaled(1000, scale)):
        n = int(rng.integers(1, 13))
        b = int(rng.integers(1, n + 1))
        c = int(rng.integers(0, (n - b) // 2 + 1))
        d = int(rng.integers(0, n - b - 2 * c + 1))
        _decode_trial(randomized, rng, n, b, c, d, reference=False)

    padding = PropertyResult("padded blocks recover the message and match the share size model")
    for _ in range(scaled(200, scale)):
        size, b = int(rng.integers(0, 300)), int(rng.integers(1, 12))
        message = rng.bytes(size)
        data = pad_message(message, b)
        ok = unpad_blocks(data) == message and 8 * len(data.blocks[0]) == padded_share_bits(8 * size, b)
        padding.record(ok, f"{size} bytes into {b} blocks")

    return [exhaustive, randomized, padding]
