"""Termination, Agreement and Validity of every extension protocol across the adversary battery."""
from collections import defaultdict
from typing import List

from bbext.checks.base import PropertyResult, scaled
from bbext.checks.runs import check_run, explored_scripts, scripts_for, session_grid
from bbext.oracles import OracleConfig
from bbext.simnet import HONEST

SYNC_PROTOCOLS = ("sync-half-ba", "sync-half-bb", "sync-half-bb-reduction", "sync-eps-bb", "sync-ef-ba", "sync-ef-bb")
ASYNC_PROTOCOLS = ("async-third-ba", "async-third-rb", "async-ef-rb")
PARTY_COUNTS = (4, 7, 10)
ONE_SHOT_KINDS = ("package", "forward")
EXPLORED_ORACLES = {"ideal": OracleConfig(), "concrete": OracleConfig.concrete()}


def _battery(protocol: str, seeds: range) -> PropertyResult:
    result = PropertyResult(f"{protocol}: termination, agreement and validity under the battery")
    for params in session_grid(protocol, PARTY_COUNTS):
        for script in scripts_for(protocol):
            for seed in seeds:
                check_run(result, protocol, params, script, seed)
    return result


def _one_shot_steps(seeds: range) -> PropertyResult:
    """Distribution and sharing each happen in a single round per honest party across all iterations"""
    result = PropertyResult("sync-eps-bb: runs are correct and send distribution and sharing at most once")
    for params in session_grid("sync-eps-bb", PARTY_COUNTS):
        for script in (HONEST,) + tuple(s for s in scripts_for("sync-eps-bb") if s.corrupt_sender):
            for seed in seeds:
                outcome = check_run(result, "sync-eps-bb", params, script, seed, trace=True)
                if outcome is None:
                    continue
                ticks = defaultdict(set)
                for record in outcome.trace.records:
                    if record["from"] in outcome.honest and record["msg_kind"] in ONE_SHOT_KINDS:
                        ticks[record["from"], record["msg_kind"]].add(record["tick"])
                repeated = sorted(key for key, sent in ticks.items() if len(sent) > 1)
                result.record(not repeated, f"n={params.n} {script.name} seed={seed}: repeated {repeated}")
    return result


def run_sync_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    seeds = range(seed, seed + scaled(100, scale))
    results = [_battery(protocol, seeds) for protocol in SYNC_PROTOCOLS]
    results.append(_one_shot_steps(range(seed, seed + scaled(10, scale))))
    return results


def run_async_suite(scale: float = 1.0, seed: int = 0) -> List[PropertyResult]:
    results = [_battery(protocol, range(seed, seed + scaled(100, scale))) for protocol in ASYNC_PROTOCOLS]
    for protocol in ASYNC_PROTOCOLS:
        for label, oracles in EXPLORED_ORACLES.items():
            explored = PropertyResult(f"{protocol}: every behavior under every delivery policy, n = 4, {label} oracles")
            for params in session_grid(protocol, (4,)):
                for script in explored_scripts(protocol):
                    for run_seed in range(seed, seed + scaled(20, scale)):
                        check_run(explored, protocol, params, script, run_seed, oracles=oracles)
            results.append(explored)
    return results
