"""Command-line front end.

Exit codes: 0 verified, 1 counterexample or engine disagreement,
2 usage error, 3 inconclusive.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from lefschetz.analysis import (
    FAILURES_AT,
    INCONCLUSIVE,
    Engine,
    rank_profile,
    verify_report,
)
from lefschetz.combinatorics import ContractError, LinearSystem, PowerSequence
from lefschetz.inverse_systems import QuotientQuery, quotient_dim
from lefschetz.oracle import ConfigError, PrimeFieldConfig, oracle_linsys_dim, oracle_quotient_dim
from lefschetz.reduction import dim_linear_system
from lefschetz.sweep import run_sweep, summarize

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def int_list(text: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    return vals


def int_range(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split("..", 1))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a range like 5..10, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _powers(vals: list[int], min_r: int = 3) -> PowerSequence:
    ps = PowerSequence(vals)
    if ps.r < min_r:
        raise UsageError(f"need at least {min_r} powers for an artinian quotient, got {ps.r}")
    return ps


def _config(args) -> PrimeFieldConfig:
    return PrimeFieldConfig.from_env(prime=args.prime, trials=args.trials, seed=args.seed)


def _add_oracle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--oracle", action="store_true", help="cross-check with the prime-field oracle")
    p.add_argument("--prime", type=int, default=None, help="oracle prime (env LEFSCHETZ_PRIME)")
    p.add_argument("--trials", type=int, default=None, help="oracle trials (default 3)")
    p.add_argument("--seed", type=int, default=None, help="oracle seed (env LEFSCHETZ_SEED)")


def cmd_hf(args) -> int:
    ps = _powers(args.powers)
    cfg = _config(args) if args.oracle else None
    values, engines, undetermined = [], [], []
    for j in range(sum(ps) + 1):
        d = quotient_dim(QuotientQuery(ps, j)).dim
        engine = Engine.COMBINATORIAL
        if d is None:
            undetermined.append(j)
            if cfg is None:
                values.append(None)
                engines.append(engine.value)
                continue
            d, engine = oracle_quotient_dim(ps, j, None, cfg), Engine.ORACLE
        if d == 0:
            break
        values.append(d)
        engines.append(engine.value)
    if args.format == "json":
        print(json.dumps({"powers": list(ps), "hilbert": values, "engines": engines,
                          "undetermined": undetermined}))
    elif args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["degree", "dim", "engine"])
        for j, (d, e) in enumerate(zip(values, engines)):
            w.writerow([j, "" if d is None else d, e])
    else:
        print(",".join("?" if d is None else str(d) for d in values))
    if undetermined and cfg is None:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_linsys(args) -> int:
    if args.degree < 0:
        raise UsageError("degree must be >= 0")
    sys_ = LinearSystem(args.degree, args.mults)
    res = dim_linear_system(sys_)
    out: dict = {"degree": sys_.degree, "mults": list(sys_.mults), "dim": res.dim, "exact": res.exact}
    if args.trace:
        out["trace"] = res.trace.to_dict()
    code = EXIT_OK if res.exact else EXIT_INCONCLUSIVE
    if args.oracle:
        cfg = _config(args)
        od = oracle_linsys_dim(sys_, cfg)
        out.update(oracle=od, prime=cfg.prime, seed=cfg.seed)
        if res.exact:
            out["agree"] = od == res.dim
            code = EXIT_OK if od == res.dim else EXIT_FAIL
        else:
            code = EXIT_OK
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(f"dim {sys_} = {res}")
        if args.trace:
            for step in res.trace.steps:
                print(f"  {step}")
        if args.oracle:
            status = "" if not res.exact else (" AGREE" if out["agree"] else " DISAGREE")
            print(f"oracle = {out['oracle']}{status}")
    return code


def cmd_verify(args) -> int:
    ps = _powers(args.powers)
    if args.shift < 1:
        raise UsageError("shift must be >= 1")
    cfg = _config(args) if args.oracle else None
    report = verify_report(ps, cfg, k=args.shift)
    out = report.to_dict()
    out.update(engine=Engine.COMBINATORIAL.value, prime=None, seed=None)
    status = report.verdict.status
    disagree = False
    if cfg is not None:
        orep = rank_profile(ps, args.shift, Engine.ORACLE, cfg)
        disagree = [r.dims() for r in orep.rows] != [r.dims() for r in report.rows]
        out.update(engine="Combinatorial+Oracle", prime=cfg.prime, seed=cfg.seed,
                   oracle={"rows": [r.to_dict() for r in orep.rows], "verdict": str(orep.verdict)},
                   agree=not disagree)
        if status == INCONCLUSIVE:
            status = orep.verdict.status
        elif orep.verdict.status == FAILURES_AT:
            status = FAILURES_AT
    if args.format == "json":
        print(json.dumps(out))
    else:
        print(f"powers {ps}  shift {args.shift}")
        print(f"{'j':>4} {'src':>6} {'tgt':>6} {'quot':>6} {'rank':>6}  maximal")
        for row in report.rows:
            cells = ["?" if v is None else str(v)
                     for v in (row.dim_source, row.dim_target, row.dim_quotient, row.rank)]
            print(f"{row.degree:>4} " + " ".join(f"{c:>6}" for c in cells) + f"  {row.maximal}")
        print(f"verdict: {report.verdict}")
        if cfg is not None:
            print(f"oracle verdict: {out['oracle']['verdict']}  {'DISAGREE' if disagree else 'AGREE'}")
    if status == FAILURES_AT or disagree:
        return EXIT_FAIL
    if status == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.count < 1:
        raise UsageError("count must be >= 1")
    if args.r[0] < 3 or args.a[0] < 1:
        raise UsageError("need r >= 3 and powers >= 1")
    cfg = _config(args)
    with open(args.out, "a") as fh:
        records = run_sweep(args.r, args.a, args.count, cfg.seed, cfg.prime, cfg.trials, args.jobs, fh)
    summary = summarize(records)
    summary.update(out=args.out, seed=cfg.seed, prime=cfg.prime)
    if args.format == "json":
        print(json.dumps(summary))
    else:
        print(f"sequences: {summary['count']}  cases: {summary['cases']}")
        print(f"engine agreements: {summary['agreements']}/{summary['count']}")
        print(f"failures: {len(summary['failures'])}  disagreements: {len(summary['disagreements'])}")
        print(f"records appended to {args.out}")
    return EXIT_OK if not summary["failures"] and not summary["disagreements"] else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lefschetz", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hf", help="Hilbert function of R/(L_1^a_1, ..., L_r^a_r)")
    p.add_argument("--powers", type=int_list, required=True)
    p.add_argument("--format", choices=("table", "json", "csv"), default="table")
    _add_oracle_flags(p)
    p.set_defaults(func=cmd_hf)

    p = sub.add_parser("linsys", help="dimension of L(j; b_1, ..., b_n)")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--mults", type=int_list, default=[])
    p.add_argument("--trace", action="store_true")
    p.add_argument("--format", choices=("table", "json"), default="table")
    _add_oracle_flags(p)
    p.set_defaults(func=cmd_linsys)

    p = sub.add_parser("verify", help="maximal rank of x L^k in every degree")
    p.add_argument("--powers", type=int_list, required=True)
    p.add_argument("--shift", type=int, default=2)
    p.add_argument("--format", choices=("table", "json"), default="table")
    _add_oracle_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="seeded random verification campaign (JSONL)")
    p.add_argument("--r", type=int_range, default=(5, 10))
    p.add_argument("--a", type=int_range, default=(1, 12))
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out", default="sweep.jsonl")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--prime", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ContractError, ConfigError) as exc:
        print(f"lefschetz {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
