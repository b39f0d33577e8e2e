"""Command-line entry points.

``bsqn run`` executes a config file (or bundled preset) and writes the
CSV/summary artifacts; ``bsqn oracle-check`` runs the small-scale
equivalence gates and exits nonzero on any failure; ``bsqn estimate``
performs a single estimation run and prints a JSON report.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .harness import estimate_once, load_config, oracle_check, preset_path, run_to_files


def _cmd_run(args) -> int:
    path = Path(args.config)
    if not path.exists():
        try:
            path = preset_path(args.config)
        except ValueError:
            print(f"error: no such config file or preset: {args.config}", file=sys.stderr)
            return 2
    try:
        cfg = load_config(path)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    csv_path, summary_path = run_to_files(cfg, args.out, full=args.full)
    print(f"wrote {csv_path}")
    print(f"wrote {summary_path}")
    return 0


def _cmd_oracle_check(args) -> int:
    report = oracle_check()
    for gate in report["gates"]:
        status = "PASS" if gate["passed"] else "FAIL"
        metric = gate.get("max_error", gate.get("p_value"))
        kind = "max_error" if "max_error" in gate else "p_value"
        print(f"{status}  {gate['gate']}  {kind}={metric:.3g}")
    print("all gates passed" if report["passed"] else "gate failure")
    return 0 if report["passed"] else 1


def _cmd_estimate(args) -> int:
    try:
        report = estimate_once(
            graph_spec=args.graph,
            noise_spec=args.noise,
            protocol=args.protocol,
            shots=args.shots,
            seed=args.seed,
            M=args.M,
            strategy=args.strategy,
            target_b=args.target_b,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsqn",
        description="Bell-sampling estimation toolkit for noisy graph states",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run an experiment config or preset")
    p_run.add_argument("--config", required=True, help="config file path or preset name")
    p_run.add_argument(
        "--full", action="store_true", help="use full trial counts instead of desk scale"
    )
    p_run.add_argument("--out", default="results", help="output directory")
    p_run.set_defaults(func=_cmd_run)

    p_oracle = sub.add_parser("oracle-check", help="run small-scale equivalence gates")
    p_oracle.set_defaults(func=_cmd_oracle_check)

    p_est = sub.add_parser("estimate", help="single estimation run, JSON report")
    p_est.add_argument("--graph", required=True, help="complete:<n> or path:<n>")
    p_est.add_argument(
        "--noise", required=True, help="model spec, e.g. depolarizing:F=0.9"
    )
    p_est.add_argument(
        "--protocol",
        required=True,
        choices=["bsqn_full", "bsqn_random", "dge"],
    )
    p_est.add_argument("--shots", type=int, required=True)
    p_est.add_argument("--seed", type=int, required=True)
    p_est.add_argument("--M", type=int, default=None, help="sampled index count")
    p_est.add_argument(
        "--strategy",
        default="complete_overlap_y",
        choices=["naive", "complete_overlap_y", "complete_disjoint_y"],
    )
    p_est.add_argument("--target-b", dest="target_b", type=int, default=0)
    p_est.set_defaults(func=_cmd_estimate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
