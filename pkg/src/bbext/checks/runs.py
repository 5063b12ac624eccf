import dataclasses
from typing import Iterable, List, Optional

from bbext.checks.base import PropertyResult
from bbext.data_structures import SessionParams, ThresholdRegime, max_faults
from bbext.errors import Error
from bbext.oracles import OracleConfig
from bbext.protocols import get_protocol
from bbext.simnet import AdversaryScript, RunResult, adversary_battery, check_properties, run
from bbext.simnet.scheduler import FifoPolicy, LifoPolicy, RandomPolicy, StarveHonestPolicy, TargetedDelayPolicy

K = 128
MESSAGE_BITS = 64
EPSILONS = (0.25, 0.5)
POLICIES = (FifoPolicy, LifoPolicy, RandomPolicy, StarveHonestPolicy, TargetedDelayPolicy)


def params_for(protocol: str, n: int, l: int = MESSAGE_BITS, epsilon: Optional[float] = None) -> SessionParams:
    """Session parameters with the largest t the protocol's regime allows"""
    spec = get_protocol(protocol)
    if spec.input_kind == "bit":
        l = 8
    t = max_faults(spec.regime, n, epsilon)
    return SessionParams(n=n, t=t, l=l, k=K, regime=spec.regime, epsilon=epsilon)


def session_grid(protocol: str, ns: Iterable[int]) -> List[SessionParams]:
    spec = get_protocol(protocol)
    epsilons = EPSILONS if spec.regime is ThresholdRegime.ONE_MINUS_EPS else (None,)
    return [params_for(protocol, n, epsilon=epsilon) for n in ns for epsilon in epsilons]


def scripts_for(protocol: str) -> List[AdversaryScript]:
    return [script for script in adversary_battery() if script.applies(protocol)]


def explored_scripts(protocol: str) -> List[AdversaryScript]:
    """Every battery behavior under every delivery policy"""
    return [
        dataclasses.replace(script, name=f"{script.name}+{policy.__name__}", policy=policy)
        for script in scripts_for(protocol)
        for policy in POLICIES
    ]


def check_run(
    result: PropertyResult,
    protocol: str,
    params: SessionParams,
    adversary: AdversaryScript,
    seed: int,
    oracles: Optional[OracleConfig] = None,
    trace: bool = False,
) -> Optional[RunResult]:
    """Run one session and record whether it satisfies its definition; invariant violations count as failures"""
    where = f"{protocol} n={params.n} t={params.t} adversary={adversary.name} seed={seed}"
    try:
        outcome = run(protocol, params, adversary=adversary, seed=seed, oracles=oracles, trace=trace)
    except Error as e:
        result.record(False, f"{where}: {e!r}")
        return None
    verdict = check_properties(outcome)
    result.record(verdict.ok, f"{where}: {'; '.join(verdict.details)}")
    return outcome
