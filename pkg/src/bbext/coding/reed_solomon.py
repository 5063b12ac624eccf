import dataclasses
import hashlib
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from bbext.coding.galois import (
    FIELD_MAX,
    FIELD_SIZE,
    gf_mul,
    gf_pow,
    invert_matrix,
    poly_divmod,
    poly_eval,
    solve_linear,
    vec_mul,
    vec_scale,
)
from bbext.errors import DecodeFailure, PreconditionError

SymbolBlock = bytes  # fixed-width 16-bit big-endian field elements

# how many random stripe combinations the error locator tries before giving up
_LOCATOR_ATTEMPTS = 4


def block_to_array(block: SymbolBlock) -> np.ndarray:
    return np.frombuffer(block, dtype=">u2").astype(np.int64)


def array_to_block(values: np.ndarray) -> SymbolBlock:
    return values.astype(">u2").tobytes()


def evaluation_point(position: int) -> int:
    """Codeword position j (0-based) holds the data polynomial evaluated at x = j + 1"""
    return position + 1


@dataclasses.dataclass(frozen=True)
class DataBlocks:
    blocks: Tuple[SymbolBlock, ...]
    original_bit_length: int

    def __post_init__(self):
        if not self.blocks:
            raise PreconditionError("DataBlocks needs at least one block")
        sizes = {len(block) for block in self.blocks}
        if len(sizes) != 1 or sizes.pop() % 2:
            raise PreconditionError("symbol-blocks must share one even byte length")
        if not 0 <= self.original_bit_length <= self.b * self.stripes * 16:
            raise PreconditionError(f"original_bit_length {self.original_bit_length} exceeds the block capacity")

    @classmethod
    def from_symbols(cls, blocks: Sequence[Sequence[int]]) -> "DataBlocks":
        arrays = [np.asarray(block, dtype=np.int64) for block in blocks]
        return cls(tuple(array_to_block(a) for a in arrays), 16 * sum(len(a) for a in arrays))

    @property
    def b(self) -> int:
        return len(self.blocks)

    @property
    def stripes(self) -> int:
        return len(self.blocks[0]) // 2

    def matrix(self) -> np.ndarray:
        return np.stack([block_to_array(block) for block in self.blocks])

    def symbols(self) -> List[List[int]]:
        return self.matrix().tolist()


@dataclasses.dataclass(frozen=True)
class Codeword:
    symbols: Tuple[Optional[SymbolBlock], ...]
    b: int

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def erasures(self) -> int:
        return sum(symbol is None for symbol in self.symbols)

    def erase(self, positions: Iterable[int]) -> "Codeword":
        positions = set(positions)
        return Codeword(tuple(None if j in positions else s for j, s in enumerate(self.symbols)), self.b)

    def replace(self, position: int, block: Optional[SymbolBlock]) -> "Codeword":
        symbols = list(self.symbols)
        symbols[position] = block
        return Codeword(tuple(symbols), self.b)


def _check_dimensions(n: int, b: int):
    if not 1 <= b <= n <= FIELD_MAX:
        raise PreconditionError(f"need 1 <= b <= n <= {FIELD_MAX}, got n={n}, b={b}")


def _evaluate(coeffs: np.ndarray, position: int) -> np.ndarray:
    x = evaluation_point(position)
    acc = coeffs[-1].copy()
    for i in range(len(coeffs) - 2, -1, -1):
        acc = vec_scale(acc, x) ^ coeffs[i]
    return acc


def rs_encode(data: DataBlocks, n: int) -> Codeword:
    """
    Evaluate the data polynomial (block i is the coefficient of x^i, stripe by stripe) at n fixed points.
    The map is linear over GF(2^16) and any b symbol-blocks determine the data.
    """
    _check_dimensions(n, data.b)
    coeffs = data.matrix()
    return Codeword(tuple(array_to_block(_evaluate(coeffs, j)) for j in range(n)), data.b)


def _interpolate(values: Dict[int, np.ndarray], positions: Sequence[int], b: int) -> np.ndarray:
    """Solve the b x b Vandermonde system at ``positions`` for the data coefficients"""
    vandermonde = [[gf_pow(evaluation_point(j), i) for i in range(b)] for j in positions]
    inverse = invert_matrix(vandermonde)
    stripes = len(values[positions[0]])
    coeffs = np.zeros((b, stripes), dtype=np.int64)
    for i in range(b):
        for k, j in enumerate(positions):
            if inverse[i][k]:
                coeffs[i] ^= vec_scale(values[j], inverse[i][k])
    return coeffs


def _disagreements(coeffs: np.ndarray, values: Dict[int, np.ndarray]) -> Set[int]:
    return {j for j, value in values.items() if not np.array_equal(_evaluate(coeffs, j), value)}


def _locate_errors(values: Dict[int, np.ndarray], b: int, c: int, attempt: int) -> Optional[Set[int]]:
    """
    Berlekamp-Welch on a random linear combination of all stripes. Every stripe is a codeword of the same code,
    so the combination is too, and it is corrupted (with high probability) exactly where some stripe is.
    """
    positions = sorted(values)
    digest = hashlib.sha256(b"".join(values[j].astype(">u2").tobytes() for j in positions)).digest()
    rng = np.random.default_rng([attempt, int.from_bytes(digest[:8], "big")])
    weights = rng.integers(1, FIELD_SIZE, size=len(values[positions[0]]), dtype=np.int64)

    xs = [evaluation_point(j) for j in positions]
    ys = [int(np.bitwise_xor.reduce(vec_mul(values[j], weights))) if weights.size else 0 for j in positions]

    # unknowns: Q(x) of degree < b + c, then E(x) = x^c + e_{c-1} x^{c-1} + ... + e_0
    matrix, rhs = [], []
    for x, y in zip(xs, ys):
        powers = [gf_pow(x, i) for i in range(b + c + 1)]
        matrix.append(powers[: b + c] + [gf_mul(y, powers[i]) for i in range(c)])
        rhs.append(gf_mul(y, powers[c]))
    solution = solve_linear(matrix, rhs)
    if solution is None:
        return None
    q, e = solution[: b + c], solution[b + c :] + [1]
    p, remainder = poly_divmod(q, e)
    if any(remainder):
        return None
    suspects = {j for j, x, y in zip(positions, xs, ys) if poly_eval(p, x) != y}
    return suspects if len(suspects) <= c else None


def rs_decode(cw: Codeword, c: int, d: int) -> DataBlocks:
    """
    Recover the data from a codeword with at most ``c`` corrupted and at most ``d`` erased symbol-blocks.

    :raises PreconditionError: if 2c + d > n - b
    :raises DecodeFailure: if more than d entries are erased or no codeword lies within c errors
    """
    n, b = cw.n, cw.b
    _check_dimensions(n, b)
    if c < 0 or d < 0 or 2 * c + d > n - b:
        raise PreconditionError(f"(c={c}, d={d}) exceeds the correction capacity n - b = {n - b}")
    if cw.erasures > d:
        raise DecodeFailure(f"{cw.erasures} erasures exceed the budget d={d}")

    values = {j: block_to_array(s) for j, s in enumerate(cw.symbols) if s is not None}
    if len({len(v) for v in values.values()}) != 1:
        raise PreconditionError("symbol-blocks of a codeword must share one stripe count")
    stripes = len(next(iter(values.values())))

    if c == 0:
        candidates = [set()]
    else:
        candidates = (_locate_errors(values, b, c, attempt) for attempt in range(_LOCATOR_ATTEMPTS))
    for suspects in candidates:
        if suspects is None:
            continue
        trusted = [j for j in sorted(values) if j not in suspects][:b]
        coeffs = _interpolate(values, trusted, b)
        if len(_disagreements(coeffs, values)) <= c:
            return DataBlocks(tuple(array_to_block(row) for row in coeffs), b * stripes * 16)
    raise DecodeFailure(f"no codeword within {c} errors and {cw.erasures} erasures")
