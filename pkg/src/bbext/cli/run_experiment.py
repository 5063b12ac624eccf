"""
Parameter sweeps: one metrics JSON per (protocol, n, t, l, adversary, seed) cell and an aggregate CSV.

python -m bbext.cli.run_experiment --config configs/sync_half_ba_linear.json --workers 4
"""
import argparse
import csv
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

import configargparse
import simplejson as json
from dotenv import load_dotenv

from bbext.cli.config import ExperimentConfig, TRule
from bbext.constants import DEFAULT_SEED, SEED_ENV_VAR
from bbext.data_structures import AccScheme, SessionParams
from bbext.errors import ConfigurationError, Error
from bbext.oracles import OracleConfig
from bbext.simnet import check_properties, run
from bbext.utils.logging import get_logger

logger = get_logger(__name__)

CSV_COLUMNS = ("protocol", "n", "t", "l", "adversary", "seed", "honest_bits", "oracle_bits", "rounds")

EXIT_OK, EXIT_PROPERTY_FAILURE, EXIT_CONFIG_ERROR = 0, 1, 2


@dataclass(frozen=True)
class Cell:
    protocol: str
    params: SessionParams
    adversary: str
    seed: int
    oracles: OracleConfig
    acc: AccScheme

    @property
    def key(self):
        return (self.protocol, self.params.n, self.params.t, self.params.l, self.adversary, self.seed)

    @property
    def file_name(self) -> str:
        p = self.params
        return f"{self.protocol}_n{p.n}_t{p.t}_l{p.l}_{self.adversary}_s{self.seed}.json"


def run_cell(cell: Cell) -> Dict:
    """Run one cell; an invariant violation is reported in the record instead of escaping the worker"""
    record = {
        "protocol": cell.protocol,
        "n": cell.params.n,
        "t": cell.params.t,
        "l": cell.params.l,
        "adversary": cell.adversary,
        "seed": cell.seed,
        "params": cell.params.to_dict(),
        "oracles": cell.oracles.to_dict(),
        "acc": cell.acc.value,
    }
    try:
        result = run(
            cell.protocol,
            cell.params,
            adversary=cell.adversary,
            seed=cell.seed,
            oracles=cell.oracles,
            acc_scheme=cell.acc,
        )
    except Error as e:
        record.update(ok=False, error=repr(e), metrics=None, properties=None)
        return record
    verdict = check_properties(result)
    record.update(
        ok=verdict.ok,
        error=None,
        metrics=result.metrics.to_dict(),
        properties={
            "termination": verdict.termination,
            "agreement": verdict.agreement,
            "validity": verdict.validity,
            "details": verdict.details,
        },
    )
    return record


def csv_row(record: Dict) -> Dict:
    metrics = record["metrics"] or {}
    row = {column: record[column] for column in CSV_COLUMNS[:6]}
    row["honest_bits"] = metrics.get("honest_bits_total", "")
    row["oracle_bits"] = sum(metrics.get("bits_by_oracle", {}).values()) if metrics else ""
    row["rounds"] = metrics.get("rounds_or_events_elapsed", "")
    return row


def cmd_run(config: ExperimentConfig) -> int:
    """
    Run every cell of a sweep and write its files under ``config.out``.

    :returns: 0 if every run satisfied its definition, 1 if one did not, 2 for parameters no session accepts
    """
    oracles = config.oracle_config()
    try:
        cells = [
            Cell(config.protocol, params, adversary, seed, oracles, config.acc)
            for params, adversary, seed in config.cells()
        ]
    except ValueError as e:
        logger.error(f"Invalid session parameters: {e}")
        return EXIT_CONFIG_ERROR
    logger.info(f"Running {len(cells)} cells of {config.protocol} with {config.workers} workers")
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            records = list(pool.map(run_cell, cells))
    else:
        records = [run_cell(cell) for cell in cells]
    ordered = sorted(zip(cells, records), key=lambda pair: pair[0].key)

    os.makedirs(config.out, exist_ok=True)
    for cell, record in ordered:
        with open(os.path.join(config.out, cell.file_name), "w") as f:
            f.write(json.dumps(record, indent=2) + "\n")
    csv_path = os.path.join(config.out, "metrics.csv")
    with open(csv_path, "w", newline="") as f:
        writer = csv.DictWriter(f, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for _, record in ordered:
            writer.writerow(csv_row(record))
    logger.info(f"Wrote {len(ordered)} metrics files and {csv_path}")

    failed = [record for _, record in ordered if not record["ok"]]
    for record in failed:
        details = record["error"] or "; ".join(record["properties"]["details"])
        logger.error(f"{record['protocol']} n={record['n']} {record['adversary']} seed={record['seed']}: {details}")
    return EXIT_PROPERTY_FAILURE if failed else EXIT_OK


def _list(cast):
    def parse(text: str) -> List:
        return [cast(item) for item in text.split(",") if item.strip()]

    return parse


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    # fmt:off
    parser = configargparse.ArgParser(formatter_class=argparse.ArgumentDefaultsHelpFormatter,
                                      auto_env_var_prefix="BBEXT_")
    parser.add_argument("--config", type=str, default=None, help="JSON sweep config; flags below override it")
    parser.add_argument("--protocol", type=str, default=None, help="Registered protocol name")
    parser.add_argument("--n", type=_list(int), default=None, help="Comma-separated party counts")
    parser.add_argument("--l", type=_list(str), default=None,
                        help="Comma-separated message lengths, in bits or as sizes like 32KiB")
    parser.add_argument("--t", type=int, default=None, help="Number of faults; implies --t_rule explicit")
    parser.add_argument("--t_rule", type=str, default=None, choices=[rule.value for rule in TRule],
                        help="How t follows from n")
    parser.add_argument("--k", type=int, default=None, help="Security parameter, 128 or 256")
    parser.add_argument("--epsilon", type=float, default=None, help="Honest fraction of the (1 - eps) regime")
    parser.add_argument("--seed", type=_list(int), default=None,
                        help=f"Comma-separated seeds, {DEFAULT_SEED} unless given in the config or {SEED_ENV_VAR}")
    parser.add_argument("--adversary", type=_list(str), default=None, help="Comma-separated battery names")
    parser.add_argument("--oracle", type=str, action="append", default=None,
                        help="kind=impl, e.g. sync_bb=concrete; may repeat")
    parser.add_argument("--acc", type=str, default=None, choices=[scheme.value for scheme in AccScheme],
                        help="Accumulator scheme")
    parser.add_argument("--out", type=str, default=None, help="Output directory")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for the sweep")
    # fmt:on
    args = parser.parse_args(argv)

    overrides = dict(
        protocol=args.protocol,
        n=args.n,
        l=args.l,
        t=args.t,
        t_rule=args.t_rule or ("explicit" if args.t is not None else None),
        k=args.k,
        epsilon=args.epsilon,
        adversaries=args.adversary,
        seeds=args.seed,
        acc=args.acc,
        out=args.out,
        workers=args.workers,
    )
    try:
        if args.oracle:
            overrides["oracles"] = dict(item.split("=", 1) for item in args.oracle)
        config = ExperimentConfig.load(args.config, **overrides)
    except (ConfigurationError, ValueError, OSError) as e:
        logger.error(f"Invalid configuration: {e}")
        return EXIT_CONFIG_ERROR
    return cmd_run(config)


if __name__ == "__main__":
    sys.exit(main())
