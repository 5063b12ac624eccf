"""
Run one property suite and report every property with its trials and failures.

python -m bbext.cli.run_check star --scale 0.1 --report star.json
"""
import argparse
import sys
import time
from typing import List, Optional

import configargparse
import simplejson as json
from dotenv import load_dotenv
from tabulate import tabulate

from bbext.checks import SUITES, PropertyResult, run_suite
from bbext.constants import DEFAULT_SEED
from bbext.utils.logging import get_logger

logger = get_logger(__name__)


def render(results: List[PropertyResult]) -> str:
    rows = [(r.name, r.trials, r.failures, "ok" if r.ok else "FAIL") for r in results]
    return tabulate(rows, headers=("property", "trials", "failures", "result"), tablefmt="grid")


def report(suite: str, scale: float, seed: int, results: List[PropertyResult], elapsed: float) -> dict:
    return {
        "suite": suite,
        "scale": scale,
        "seed": seed,
        "ok": all(r.ok for r in results),
        "elapsed_seconds": round(elapsed, 3),
        "properties": [r.to_dict() for r in results],
    }


def cmd_check(suite: str, scale: float = 1.0, seed: int = DEFAULT_SEED, report_path: Optional[str] = None) -> int:
    started = time.perf_counter()
    results = run_suite(suite, scale, seed)
    summary = report(suite, scale, seed, results, time.perf_counter() - started)
    print(render(results))
    if report_path:
        with open(report_path, "w") as f:
            f.write(json.dumps(summary, indent=2) + "\n")
        logger.info(f"Report written to {report_path}")
    for result in results:
        for detail in result.details:
            logger.warning(f"{result.name}: {detail}")
    return 0 if summary["ok"] else 1


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    # fmt:off
    parser = configargparse.ArgParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter,
                                      auto_env_var_prefix="BBEXT_")
    parser.add_argument("suite", choices=sorted(SUITES), help="Property suite to run")
    parser.add_argument("--scale", type=float, default=1.0, help="Multiplier on every trial count")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED, help="Base seed of the suite")
    parser.add_argument("--report", type=str, default=None, help="Where to write the JSON report")
    # fmt:on
    args = parser.parse_args(argv)
    return cmd_check(args.suite, args.scale, args.seed, args.report)


if __name__ == "__main__":
    sys.exit(main())
