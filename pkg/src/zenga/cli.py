"""``zenga`` command line tool.

Exit status is 0 on success, 2 on bad usage or invalid input, 1 otherwise.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from typing import Optional, Sequence

import numpy as np

from . import io as zio
from .asymptotics import (asymptotic_variance, confidence_interval, delta_variance,
                          population_report)
from .distribution import empirical_distribution, from_frequency_table
from .indices import gini_empirical, gini_population, zenga_empirical, zenga_population
from .influence import influence_profile, numeric_influence
from .montecarlo import MIN_REPLICATES, StudyConfig, run_study


class UsageError(ValueError):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _load_dist(path: str):
    return zio.parse_dist_spec(_read(path)).to_distribution()


def _load_freq(path: str, rule: str):
    return from_frequency_table(zio.parse_frequency_csv(_read(path)), rule)


def _sizes(text: str):
    try:
        sizes = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma list of integers: {text!r}") from None
    if not sizes or any(s < 2 for s in sizes):
        raise argparse.ArgumentTypeError("sizes must be integers >= 2")
    return sizes


def _reps(text: str):
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if b < MIN_REPLICATES:
        raise argparse.ArgumentTypeError(f"--reps must be >= {MIN_REPLICATES}")
    return b


def _level(text: str):
    v = float(text)
    if not 0 < v < 1:
        raise argparse.ArgumentTypeError("level must lie in (0, 1)")
    return v


def _f(x) -> str:
    return zio.fmt_float(x)


def cmd_compute(args) -> str:
    scale = 100.0 if args.percent else 1.0
    lines = []
    if args.freq:
        support, counts = _load_freq(args.freq, args.repr)
        z, dec = zenga_empirical(counts, support)
        g = gini_empirical(counts, support)
        rep = confidence_interval(counts, support, args.level)
        lines.append(f"n: {counts.n}")
    else:
        dist = _load_dist(args.dist)
        z, dec = zenga_population(dist)
        g = gini_population(dist)
        rep = population_report(dist, args.n, args.level)
    lines += [f"zenga: {_f(scale * z)}", f"gini: {_f(scale * g)}",
              f"asymptotic_sd: {_f(np.sqrt(rep.sigma2_corrected))}"]
    if rep.n:
        lines += [f"std_error: {_f(scale * rep.std_error)}",
                  f"ci_level: {_f(rep.level)}",
                  f"ci_low: {_f(scale * rep.ci_low)}",
                  f"ci_high: {_f(scale * rep.ci_high)}"]
    lines.append("")
    lines.append("decomposition:")
    return "\n".join(lines) + "\n" + zio.write_report(dec, "csv")


def cmd_simulate(args) -> str:
    dist = _load_dist(args.dist)
    cfg = StudyConfig(dist, args.sizes, args.reps, args.seed, args.level, args.workers)
    report = run_study(cfg)
    _write(args.out, zio.write_report(report, "csv"))
    if args.qq:
        _write(args.qq, zio.write_pairs(report.qq, ("theoretical", "empirical")))
    if args.kde:
        _write(args.kde, zio.write_pairs(report.kde, ("x", "density")))
    return ""


def cmd_influence(args) -> str:
    dist = _load_dist(args.dist)
    prof = influence_profile(dist)
    if not args.numeric:
        out = zio.write_report(prof, "csv")
        return out + f"if_variance: {_f(prof.if_variance)}\n"
    if dist.m == 1:
        num = np.zeros(1)
    else:
        num = np.array([numeric_influence(dist, k, args.eps) for k in range(1, dist.m + 1)])
    diff = np.abs(num - prof.if_values)
    rows = list(zip(prof.values, prof.if_values, num, diff))
    out = zio.write_table(["x", "if_value", "numeric_if", "abs_diff"], rows)
    return out + f"if_variance: {_f(prof.if_variance)}\nmax_abs_diff: {_f(diff.max())}\n"


def cmd_variance(args) -> str:
    dist = _load_dist(args.dist)
    one = dist.m == 1
    compute = {
        "literal": lambda: 0.0 if one else asymptotic_variance(dist, "literal"),
        "corrected": lambda: 0.0 if one else asymptotic_variance(dist, "corrected"),
        "delta": lambda: 0.0 if one else delta_variance(dist),
        "if": lambda: influence_profile(dist).if_variance,
    }
    if args.mode != "all":
        return f"{args.mode}: {_f(compute[args.mode]())}\n"
    vals = {k: fn() for k, fn in compute.items()}
    lines = [f"{k}: {_f(v)}" for k, v in vals.items()]
    lines.append("relative differences:")
    for a, b in itertools.combinations(vals, 2):
        denom = max(abs(vals[a]), abs(vals[b]))
        rel = 0.0 if denom == 0 else abs(vals[a] - vals[b]) / denom
        lines.append(f"  {a} vs {b}: {_f(rel)}")
    c, lit = vals["corrected"], vals["literal"]
    if max(c, lit) > 0 and abs(lit - c) > 1e-6 * max(c, lit):
        lines.append("WARNING: literal H'Sigma H disagrees with the corrected, delta-method "
                     "and influence-function variances; use the corrected value.")
    return "\n".join(lines) + "\n"


def _ranks(values, tol=1e-12):
    """Competition ranks, 1 = least unequal; values within ``tol`` tie."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0] * len(values)
    for pos, i in enumerate(order):
        if pos and abs(values[i] - values[order[pos - 1]]) <= tol:
            ranks[i] = ranks[order[pos - 1]]
        else:
            ranks[i] = pos + 1
    return ranks


def cmd_compare(args) -> str:
    paths = args.freq
    if len(paths) < 2:
        raise UsageError("compare needs at least two --freq inputs")
    labels = args.labels.split(",") if args.labels else [f"input{i + 1}" for i in range(len(paths))]
    if len(labels) != len(paths):
        raise UsageError(f"{len(labels)} labels given for {len(paths)} inputs")
    scale = 100.0 if args.percent else 1.0
    zs, gs = [], []
    for p in paths:
        support, counts = _load_freq(p, args.repr)
        zs.append(zenga_empirical(counts, support)[0])
        gs.append(gini_empirical(counts, support))
    zr, gr = _ranks(zs), _ranks(gs)
    cols, rows = ["label"], [[lab] for lab in labels]
    if args.index in ("zenga", "both"):
        cols += ["zenga", "zenga_rank"]
        for r, z, k in zip(rows, zs, zr):
            r += [_f(scale * z), str(k)]
    if args.index in ("gini", "both"):
        cols += ["gini", "gini_rank"]
        for r, g, k in zip(rows, gs, gr):
            r += [_f(scale * g), str(k)]
    lines = [",".join(cols)] + [",".join(r) for r in rows]
    notes = []
    for name, rk in (("zenga", zr), ("gini", gr)):
        if args.index in (name, "both") and len(set(rk)) < len(rk):
            tied = [lab for lab, k in zip(labels, rk) if rk.count(k) > 1]
            notes.append(f"note: tie under {name}: {', '.join(tied)}")
    if args.index == "both" and zr != gr:
        moved = [lab for lab, a, b in zip(labels, zr, gr) if a != b]
        notes.append(f"note: zenga and gini order the inputs differently ({', '.join(moved)})")
    return "\n".join(lines + notes) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zenga", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Zenga and Gini indices with standard error and CI")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--freq", metavar="PATH", help="frequency-table CSV ('-' for stdin)")
    src.add_argument("--dist", metavar="PATH", help="distribution spec JSON ('-' for stdin)")
    p.add_argument("--repr", choices=["midpoint", "custom"], default="midpoint")
    p.add_argument("--level", type=_level, default=0.95)
    p.add_argument("--n", type=int, default=None,
                   help="with --dist, sample size for the standard error and CI")
    p.add_argument("--percent", action="store_true", help="print indices times 100")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("simulate", help="Monte Carlo study of the plug-in estimator")
    p.add_argument("--dist", metavar="PATH", required=True)
    p.add_argument("--sizes", type=_sizes, default=[100, 200, 500, 750, 1000, 1500])
    p.add_argument("--reps", type=_reps, default=3000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--level", type=_level, default=0.95)
    p.add_argument("--workers", type=int, default=1, help="sampling threads")
    p.add_argument("--out", metavar="PATH", default="-")
    p.add_argument("--qq", metavar="PATH")
    p.add_argument("--kde", metavar="PATH")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("influence", help="influence function at each support point")
    p.add_argument("--dist", metavar="PATH", required=True)
    p.add_argument("--numeric", action="store_true", help="add the contamination quotient")
    p.add_argument("--eps", type=float, default=None)
    p.set_defaults(func=cmd_influence)

    p = sub.add_parser("variance", help="asymptotic variance of sqrt(n)(Z_hat - Z)")
    p.add_argument("--dist", metavar="PATH", required=True)
    p.add_argument("--mode", choices=["literal", "corrected", "delta", "if", "all"],
                   default="corrected")
    p.set_defaults(func=cmd_variance)

    p = sub.add_parser("compare", help="rank several grouped datasets by Zenga and Gini")
    p.add_argument("--freq", metavar="PATH", nargs="+", required=True)
    p.add_argument("--labels", metavar="LIST", help="comma-separated labels")
    p.add_argument("--index", choices=["zenga", "gini", "both"], default="both")
    p.add_argument("--repr", choices=["midpoint", "custom"], default="midpoint")
    p.add_argument("--percent", action="store_true")
    p.set_defaults(func=cmd_compare)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "influence":
        if args.eps is not None and not args.numeric:
            parser.error("--eps requires --numeric")
        if args.eps is None:
            args.eps = 1e-6
    if args.command == "simulate" and args.workers < 1:
        parser.error("--workers must be >= 1")
    try:
        out = args.func(args)
    except ValueError as e:
        print(f"zenga {args.command}: error: {e}", file=sys.stderr)
        return 2
    except Exception as e:  # noqa: BLE001
        print(f"zenga {args.command}: internal error: {e!r}", file=sys.stderr)
        return 1
    if out:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
