"""
Closed-form honest-bit predictions from the accounting model, and the least-squares fits that compare measured
runs against them.
"""
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from bbext.authentic import SizeModel
from bbext.coding import padded_share_bits
from bbext.data_structures import AccScheme, SessionParams
from bbext.oracles import OracleKind, model_cost


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r2: float

    def __iter__(self):
        return iter((self.slope, self.intercept, self.r2))


def fit_linear(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Least-squares line through (xs, ys) with its coefficient of determination"""
    x = np.asarray(xs, dtype=np.float64)
    y = np.asarray(ys, dtype=np.float64)
    if x.size < 2:
        raise ValueError("a linear fit needs at least two points")
    slope, intercept = np.polyfit(x, y, 1)
    residual = y - (slope * x + intercept)
    total = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 if total == 0 else 1.0 - float(np.sum(residual ** 2)) / total
    return LinearFit(float(slope), float(intercept), r2)


def share_bits(params: SessionParams) -> int:
    """Bits of one indexed share: the padded message split into b = n - t symbol-blocks"""
    return padded_share_bits(params.l, params.b)


def package_bits(params: SessionParams, scheme: AccScheme = AccScheme.HASH_TREE) -> int:
    sizes = SizeModel(params.n, params.k, scheme)
    return share_bits(params) + sizes.witness_bits + sizes.index_bits


def oracle_model_cost(kind: OracleKind, value_bits: int, params: SessionParams) -> int:
    return model_cost(kind, value_bits, params.n, params.k)


def dissemination_slope(params: SessionParams) -> float:
    """
    Honest bits per input bit when every party is happy: each party distributes n - 1 shares and forwards its own
    to n - 1 parties, every share carrying l / b bits.
    """
    n = params.n
    return 2 * n * (n - 1) / params.b


def sync_half_ba_bits(params: SessionParams, scheme: AccScheme = AccScheme.HASH_TREE) -> int:
    """Predicted honest bits of a fault-free sync-half-ba run on unanimous inputs with ideal oracles"""
    n = params.n
    dissemination = 2 * n * (n - 1) * package_bits(params, scheme)
    oracles = oracle_model_cost(OracleKind.SYNC_BA, params.k, params) + oracle_model_cost(OracleKind.SYNC_BA, 1, params)
    return dissemination + oracles


def extension_overhead_bound(params: SessionParams, scheme: AccScheme = AccScheme.HASH_TREE) -> int:
    """Allowance for everything but the l-dependent traffic: twice the k-bit agreement cost plus 2 n^2 witnesses"""
    sizes = SizeModel(params.n, params.k, scheme)
    agreement = oracle_model_cost(OracleKind.SYNC_BA, params.k, params)
    return 2 * (agreement + 2 * sizes.witness_bits * params.n ** 2)


def dolev_strong_bits(params: SessionParams, value_bits: int) -> int:
    """The (v + k)n^2 + n^3 model cost of one synchronous broadcast"""
    return oracle_model_cost(OracleKind.SYNC_BB, value_bits, params)


def eps_share_bits(l: int, n: int, epsilon: float) -> int:
    """ceil(l / (eps n)): the share size the (1 - eps) broadcast should approach"""
    return int(np.ceil(l / (epsilon * n)))
