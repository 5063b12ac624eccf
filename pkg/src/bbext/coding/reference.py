"""
Brute-force reference decoder. It shares only the field arithmetic with the main codec and is meant for n <= 8.
"""
import itertools
from typing import Dict, List, Sequence

import numpy as np

from bbext.coding.galois import gf_inv, gf_mul
from bbext.coding.reed_solomon import Codeword, DataBlocks, array_to_block, block_to_array, evaluation_point
from bbext.errors import DecodeFailure


def _poly_mul_linear(poly: List[int], root: int) -> List[int]:
    """poly(x) * (x - root), coefficients lowest degree first"""
    out = [0] * (len(poly) + 1)
    for i, coef in enumerate(poly):
        out[i + 1] ^= coef
        out[i] ^= gf_mul(coef, root)
    return out


def lagrange_coefficients(points: Sequence[int], ys: Sequence[int]) -> List[int]:
    """Coefficients of the unique polynomial of degree < len(points) through (points[k], ys[k])"""
    result = [0] * len(points)
    for k, (xk, yk) in enumerate(zip(points, ys)):
        basis, denom = [1], 1
        for m, xm in enumerate(points):
            if m != k:
                basis = _poly_mul_linear(basis, xm)
                denom = gf_mul(denom, xk ^ xm)
        scale = gf_mul(yk, gf_inv(denom))
        for i, coef in enumerate(basis):
            result[i] ^= gf_mul(coef, scale)
    return result


def _horner(coeffs: Sequence[int], x: int) -> int:
    acc = 0
    for coef in reversed(coeffs):
        acc = gf_mul(acc, x) ^ coef
    return acc


def brute_force_decode(cw: Codeword, c: int, d: int) -> DataBlocks:
    """Try every b-subset of present positions and keep the candidates within c errors of the received word"""
    if cw.erasures > d:
        raise DecodeFailure("too many erasures")
    values: Dict[int, List[int]] = {j: block_to_array(s).tolist() for j, s in enumerate(cw.symbols) if s is not None}
    stripes = len(next(iter(values.values())))
    candidates = set()
    for subset in itertools.combinations(sorted(values), cw.b):
        points = [evaluation_point(j) for j in subset]
        per_stripe = [lagrange_coefficients(points, [values[j][s] for j in subset]) for s in range(stripes)]
        errors = sum(
            any(_horner(per_stripe[s], evaluation_point(j)) != values[j][s] for s in range(stripes)) for j in values
        )
        if errors <= c:
            candidates.add(tuple(tuple(per_stripe[s][i] for s in range(stripes)) for i in range(cw.b)))
    if len(candidates) != 1:
        raise DecodeFailure(f"{len(candidates)} candidate messages within radius {c}")
    (blocks,) = candidates
    return DataBlocks(tuple(array_to_block(np.asarray(block, dtype=np.int64)) for block in blocks), cw.b * stripes * 16)
