"""
GF(2^16) arithmetic backed by exp/log tables.
Scalar helpers work on python ints; the ``vec_*`` helpers work elementwise on numpy int64 arrays of field values.
"""
import dataclasses
from typing import List, Optional, Sequence

import numpy as np

from bbext.constants import GF_BITS, PRIMITIVE_POLY

FIELD_SIZE = 1 << GF_BITS
FIELD_MAX = FIELD_SIZE - 1  # order of the multiplicative group


def _build_tables(poly: int):
    exp = np.zeros(2 * FIELD_MAX, dtype=np.int64)
    log = np.zeros(FIELD_SIZE, dtype=np.int64)
    x = 1
    for i in range(FIELD_MAX):
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & FIELD_SIZE:
            x ^= poly
    # doubled so that exp[log[a] + log[b]] never needs a modulo
    exp[FIELD_MAX:] = exp[:FIELD_MAX]
    return exp, log


EXP, LOG = _build_tables(PRIMITIVE_POLY)


def gf_mul(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(EXP[LOG[a] + LOG[b]])


def gf_inv(a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^16)")
    return int(EXP[FIELD_MAX - LOG[a]])


def gf_div(a: int, b: int) -> int:
    return gf_mul(a, gf_inv(b))


def gf_pow(a: int, e: int) -> int:
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(EXP[(int(LOG[a]) * e) % FIELD_MAX])


def vec_scale(vec: np.ndarray, c: int) -> np.ndarray:
    """Multiply every element of ``vec`` by the scalar ``c``"""
    if c == 0:
        return np.zeros_like(vec)
    out = EXP[LOG[vec] + LOG[c]]
    out[vec == 0] = 0
    return out


def vec_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = EXP[LOG[a] + LOG[b]]
    out[(a == 0) | (b == 0)] = 0
    return out


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    """Horner evaluation, coefficients lowest degree first"""
    acc = 0
    for c in reversed(coeffs):
        acc = gf_mul(acc, x) ^ c
    return acc


def poly_divmod(num: Sequence[int], den: Sequence[int]):
    """Polynomial long division over GF(2^16), coefficients lowest degree first"""
    den = list(den)
    while den and den[-1] == 0:
        den.pop()
    if not den:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(num)
    quot = [0] * max(len(rem) - len(den) + 1, 1)
    lead_inv = gf_inv(den[-1])
    for shift in range(len(rem) - len(den), -1, -1):
        coef = gf_mul(rem[shift + len(den) - 1], lead_inv)
        quot[shift] = coef
        if coef:
            for i, d in enumerate(den):
                rem[shift + i] ^= gf_mul(coef, d)
    return quot, rem[: len(den) - 1]


def solve_linear(matrix: List[List[int]], rhs: List[int]) -> Optional[List[int]]:
    """
    Gaussian elimination over GF(2^16). Returns one solution of ``matrix @ x = rhs`` (free variables set to zero)
    or None if the system is inconsistent.
    """
    rows, cols = len(matrix), len(matrix[0]) if matrix else 0
    aug = [list(row) + [value] for row, value in zip(matrix, rhs)]
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if aug[i][c]), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = gf_inv(aug[r][c])
        aug[r] = [gf_mul(v, inv) for v in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [v ^ gf_mul(factor, p) for v, p in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    if any(aug[i][cols] for i in range(r, rows)):
        return None
    solution = [0] * cols
    for i, c in enumerate(pivots):
        solution[c] = aug[i][cols]
    return solution


def invert_matrix(matrix: List[List[int]]) -> List[List[int]]:
    size = len(matrix)
    aug = [list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(matrix)]
    for c in range(size):
        pivot = next((i for i in range(c, size) if aug[i][c]), None)
        if pivot is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        inv = gf_inv(aug[c][c])
        aug[c] = [gf_mul(v, inv) for v in aug[c]]
        for i in range(size):
            if i != c and aug[i][c]:
                factor = aug[i][c]
                aug[i] = [v ^ gf_mul(factor, p) for v, p in zip(aug[i], aug[c])]
    return [row[size:] for row in aug]


@dataclasses.dataclass(frozen=True)
class FieldElem:
    value: int

    def __post_init__(self):
        if not 0 <= self.value < FIELD_SIZE:
            raise ValueError(f"{self.value} is not an element of GF(2^16)")

    def __add__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(self.value ^ other.value)

    __sub__ = __add__

    def __mul__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(gf_mul(self.value, other.value))

    def __truediv__(self, other: "FieldElem") -> "FieldElem":
        return FieldElem(gf_div(self.value, other.value))

    def __pow__(self, exponent: int) -> "FieldElem":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FieldElem(gf_pow(self.value, exponent))

    def inverse(self) -> "FieldElem":
        return FieldElem(gf_inv(self.value))

    def __int__(self) -> int:
        return self.value
