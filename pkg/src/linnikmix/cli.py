"""Command-line front end.

    linnikmix sample   --family linnik --alpha 1 --method normal_ml --n 1000 --seed 7
    linnikmix eval     --family mittag_leffler --delta 0.5 --function cdf --grid 0:10:0.1
    linnikmix identity --all --seed 1
    linnikmix identity --id lemma6 --delta 0.4 --delta-prime 0.8
    linnikmix randsum  theorem4_alpha1.cfg

Exit status: 0 success, 1 statistical failure, 2 usage or config error.
Outputs depend only on the arguments, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import importlib.resources
import os
import sys
from pathlib import Path

import numpy as np

from . import identities, randsum, stattest
from .families import FAMILIES, FUNCTIONS, DistributionSpec, SampleBatch, SpecError, evaluate

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# flag name -> parameter name, shared by sample/eval/identity
_PARAM_FLAGS = {
    "alpha": "alpha",
    "alpha_prime": "alpha_prime",
    "alpha0": "alpha0",
    "delta": "delta",
    "delta_prime": "delta_prime",
    "gamma": "gamma",
    "gamma_prime": "gamma_prime",
    "rho": "rho",
}


class UsageError(Exception):
    pass


def _add_param_flags(p, names):
    for name in names:
        p.add_argument("--" + name.replace("_", "-"), type=float, dest=name, default=None)


def _given_params(args, names):
    return {_PARAM_FLAGS[k]: getattr(args, k) for k in names if getattr(args, k, None) is not None}


def _spec_from_args(args):
    if args.spec:
        return DistributionSpec.parse(args.spec)
    if not args.family:
        raise UsageError("give --family or --spec")
    params = _given_params(args, ("alpha", "alpha_prime", "alpha0", "delta", "gamma", "rho"))
    return DistributionSpec(args.family, tuple(params.items()), args.method)


@contextlib.contextmanager
def _open_out(path):
    if path in (None, "-"):
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf8", newline="") as fh:
            yield fh


def _parse_grid(text):
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"grid must be start:stop:step, got {text!r}")
        start, stop, step = (float(v) for v in parts)
        if step <= 0 or stop < start:
            raise UsageError(f"grid needs step > 0 and stop >= start, got {text!r}")
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        return start + step * np.arange(count)
    return np.array([float(v) for v in text.split(",") if v.strip()])


def cmd_sample(args):
    spec = _spec_from_args(args)
    if args.n < 1:
        raise UsageError(f"--n must be positive, got {args.n}")
    batch = SampleBatch.generate(spec, args.n, args.seed)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([spec.to_text()])
        for v in batch.values:
            w.writerow([repr(float(v))])
    return EXIT_OK


def cmd_eval(args):
    spec = _spec_from_args(args)
    try:
        grid = _parse_grid(args.grid)
    except ValueError as exc:
        raise UsageError(f"bad --grid {args.grid!r}: {exc}") from None
    values = evaluate(spec, args.function, grid)
    with _open_out(args.out) as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", args.function])
        for x, v in zip(grid, values):
            w.writerow([repr(float(x)), repr(float(v))])
    return EXIT_OK


def cmd_identity(args):
    overrides = _given_params(args, tuple(_PARAM_FLAGS))
    if args.all:
        if overrides:
            raise UsageError("parameter overrides need --id")
        cases = identities.build_cases("all")
    else:
        if args.id not in identities.IDENTITY_IDS:
            print(f"unknown identity id {args.id!r}; valid ids: {', '.join(identities.IDENTITY_IDS)}",
                  file=sys.stderr)
            return EXIT_USAGE
        if overrides:
            try:
                cases = [identities.make_case(args.id, **overrides)]
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            cases = identities.build_cases(args.id)
    try:
        reports = stattest.run_identity_suite(cases, seed=args.seed, n=args.n, level=args.level,
                                              workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    with _open_out(args.out) as fh:
        stattest.write_jsonl(reports, fh)
    return EXIT_OK if stattest.suite_passed(reports) else EXIT_FAIL


def _resolve_config(path):
    p = Path(path)
    if p.is_file():
        return p
    bundled = importlib.resources.files("linnikmix") / "configs" / p.name
    if p.parent == Path(".") and bundled.is_file():
        return bundled
    raise UsageError(f"config file not found: {path}")


def cmd_randsum(args):
    path = _resolve_config(args.config)
    cfg = randsum.parse_config(path.read_text(encoding="utf8"), str(args.config))
    report = randsum.run_randsum_experiment(cfg, level=args.level, workers=args.workers)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = Path(args.config).stem
    with open(out_dir / f"{stem}.json", "w", encoding="utf8", newline="") as fh:
        randsum.write_report_json(report, fh)
    with open(out_dir / f"{stem}.csv", "w", encoding="utf8", newline="") as fh:
        randsum.write_report_csv(report, fh)
    verdict = "passes" if report.linnik_passed else "FAILS"
    print(f"{stem}: Linnik({cfg.alpha:g}) test at n={cfg.n_values[-1]} {verdict} "
          f"(p={report.p_sum[-1]:.4g}); index test p={report.p_index[-1]:.4g}; "
          f"normal test p={report.p_normal[-1]:.4g}", file=sys.stderr)
    return EXIT_OK if report.linnik_passed and report.index_passed else EXIT_FAIL


def build_parser():
    parser = argparse.ArgumentParser(prog="linnikmix", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    workers_default = int(os.environ.get("LINNIKMIX_WORKERS", "1"))

    def spec_flags(p):
        p.add_argument("--family", choices=FAMILIES)
        p.add_argument("--spec", help="full spec text, e.g. 'linnik:alpha=1.0,method=normal_ml'")
        p.add_argument("--method")
        _add_param_flags(p, ("alpha", "alpha_prime", "alpha0", "delta", "gamma", "rho"))
        p.add_argument("--out", help="output path (default: stdout)")

    p = sub.add_parser("sample", help="write draws as CSV")
    spec_flags(p)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("eval", help="tabulate pdf/cdf/cf/laplace on a grid")
    spec_flags(p)
    p.add_argument("--function", choices=FUNCTIONS, required=True)
    p.add_argument("--grid", required=True, help="start:stop:step or a comma-separated list")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("identity", help="run identity checks, JSON lines out")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--all", action="store_true")
    g.add_argument("--id")
    _add_param_flags(p, tuple(_PARAM_FLAGS))
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--level", type=float, default=stattest.DEFAULT_LEVEL)
    p.add_argument("--workers", type=int, default=workers_default)
    p.add_argument("--out")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("randsum", help="run a random-sum experiment from a config file")
    p.add_argument("config")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--level", type=float, default=stattest.DEFAULT_LEVEL)
    p.add_argument("--workers", type=int, default=workers_default)
    p.set_defaults(func=cmd_randsum)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, SpecError, randsum.ConfigError, ValueError) as exc:
        print(f"linnikmix {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
