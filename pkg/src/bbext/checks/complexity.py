"""
Scaled-down complexity measurements: honest bits of sync-half-ba are linear in l with the modelled slope and a
bounded intercept, and the (1 - eps) broadcast's shares grow as l / (eps n).
"""
from typing import List

from bbext.authentic import SizeModel
from bbext.checks.base import PropertyResult
from bbext.complexity import dissemination_slope, eps_share_bits, extension_overhead_bound, fit_linear
from bbext.data_structures import SessionParams, ThresholdRegime
from bbext.simnet import HONEST, run

K = 256
LINEAR_N = 10
EPS_N = 12
EPSILONS = (1 / 2, 1 / 4, 1 / 6)
MIN_R2 = 0.999
SLOPE_RANGE = (0.9, 1.3)
SHARE_TOLERANCE = 0.1


def message_lengths(scale: float) -> List[int]:
    return [1 << e for e in ((14, 16, 18, 20) if scale >= 1 else (10, 12, 14))]


def run_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    lengths = message_lengths(scale)
    t = (LINEAR_N - 1) // 2
    cells = []
    for l in lengths:
        params = SessionParams(n=LINEAR_N, t=t, l=l, k=K, regime=ThresholdRegime.HALF)
        outcome = run("sync-half-ba", params, adversary=HONEST, seed=seed)
        cells.append((params, outcome.metrics.honest_bits_total))

    fit = fit_linear([p.l for p, _ in cells], [bits for _, bits in cells])
    predicted = dissemination_slope(cells[0][0])
    linear = PropertyResult("sync-half-ba honest bits are linear in l")
    linear.record(fit.r2 >= MIN_R2, f"r2 = {fit.r2:.6f}")
    slope = PropertyResult("sync-half-ba slope matches the dissemination model")
    low, high = SLOPE_RANGE
    slope.record(low * predicted <= fit.slope <= high * predicted, f"slope {fit.slope:.3f}, model {predicted:.3f}")
    overhead = PropertyResult("sync-half-ba overhead beyond the l-dependent traffic stays within the model bound")
    for params, bits in cells:
        excess, bound = bits - fit.slope * params.l, extension_overhead_bound(params)
        overhead.record(excess <= bound, f"l={params.l}: {excess:.0f} > {bound}")

    blowup = PropertyResult("sync-eps-bb share size scales as l / (eps n)")
    l = 1 << (18 if scale >= 1 else 12)
    for epsilon in EPSILONS:
        params = SessionParams(
            n=EPS_N, t=EPS_N - round(epsilon * EPS_N), l=l, k=K, regime=ThresholdRegime.ONE_MINUS_EPS, epsilon=epsilon
        )
        outcome = run("sync-eps-bb", params, adversary=HONEST, seed=seed, trace=True)
        ideal_bits = eps_share_bits(l, EPS_N, epsilon)
        sizes = SizeModel(params.n, params.k)
        overhead_bits = sizes.witness_bits + sizes.index_bits
        # self-sends are free and traced with zero bits
        packages = [r for r in outcome.trace.records if r["msg_kind"] == "package" and r["from"] != r["to"]]
        measured = sorted({r["bits"] - overhead_bits for r in packages})
        ok = len(measured) == 1 and abs(measured[0] - ideal_bits) <= SHARE_TOLERANCE * ideal_bits
        blowup.record(ok, f"eps={epsilon:.3f}: shares of {measured} bits, expected ~{ideal_bits}")
    return [linear, slope, overhead, blowup]
