"""The short-message oracles as black boxes: concrete and ideal implementations under the same battery."""
from typing import List

from bbext.checks.base import PropertyResult, scaled
from bbext.checks.runs import K, check_run, scripts_for
from bbext.complexity import dolev_strong_bits
from bbext.data_structures import SessionParams, ThresholdRegime
from bbext.errors import Error
from bbext.oracles import OracleConfig
from bbext.protocols import ORACLE_PROTOCOLS, get_protocol
from bbext.simnet import run

PARTY_COUNTS = (4, 7)
ORACLE_MESSAGE_BITS = 64


def oracle_params(protocol: str, n: int) -> SessionParams:
    """Dolev-Strong runs with t = n - 1, the others with the largest t their concrete protocol tolerates"""
    spec = get_protocol(protocol)
    l = 8 if spec.input_kind == "bit" else ORACLE_MESSAGE_BITS
    if spec.regime is ThresholdRegime.ONE_MINUS_EPS:
        return SessionParams(n=n, t=n - 1, l=l, k=K, regime=spec.regime, epsilon=1 / n)
    t = (n - 1) // 2 if spec.regime is ThresholdRegime.HALF else (n - 1) // 3
    return SessionParams(n=n, t=t, l=l, k=K, regime=spec.regime)


def run_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    results = []
    seeds = range(seed, seed + scaled(20, scale))
    for label, config in (("concrete", OracleConfig.concrete()), ("ideal", OracleConfig())):
        for protocol in ORACLE_PROTOCOLS:
            result = PropertyResult(f"{protocol} ({label}): termination, agreement and validity")
            for n in PARTY_COUNTS:
                params = oracle_params(protocol, n)
                for script in scripts_for(protocol):
                    for run_seed in seeds:
                        check_run(result, protocol, params, script, run_seed, oracles=config)
            results.append(result)

    cost = PropertyResult("dolev-strong honest bits within 2x of (v + k)n^2 + n^3")
    for n in (4, 7, 10):
        params = oracle_params("oracle-dolev-strong", n)
        try:
            outcome = run("oracle-dolev-strong", params, seed=seed, oracles=OracleConfig.concrete())
        except Error as e:
            cost.record(False, f"n={n}: {e!r}")
            continue
        measured, model = outcome.metrics.honest_bits_total, dolev_strong_bits(params, params.l)
        cost.record(model / 2 <= measured <= 2 * model, f"n={n}: measured {measured}, model {model}")
    results.append(cost)
    return results
