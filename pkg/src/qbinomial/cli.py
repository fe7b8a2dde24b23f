"""Command-line front end.

Exit codes: 0 on success, 1 when ``verify`` finds a mismatch, 2 on a usage
error (bad flags, out-of-range values, or conditioning on a
zero-probability event).
"""

from __future__ import annotations

import argparse
import json
import sys
from collections.abc import Sequence
from fractions import Fraction
from math import sqrt

from ._util import as_fraction
from .distribution import (
    ExperimentParams,
    conditional_T_given_Y,
    conditional_Y_given_T,
    joint_pmf,
    joint_pmf_table,
    marginal_T,
    marginal_Y,
    moments,
    q_generalized_pmf,
    referee_normalized_pmf,
)
from .errors import CapExceededError, ZeroProbabilityError
from .partitions import gaussian_polynomial
from .sampler import homogeneity_report, run_batch
from .serialize import (
    decimal_string,
    fraction_to_json,
    joint_table_to_json,
    records_to_csv,
)
from .verify import DEFAULT_PI_GRID, run_checks
from .words import expand_noncommutative, inversions, qlambda_transpositions

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2

WHICH = ("joint", "T", "Y", "T|Y", "Y|T", "qpoly", "referee")


class UsageError(Exception):
    pass


def _fraction(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _probability(text: str) -> Fraction:
    pi = _fraction(text)
    if not 0 < pi < 1:
        raise argparse.ArgumentTypeError(f"pi must satisfy 0 < pi < 1, got {pi}")
    return pi


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {value}")
    return value


def _pi_list(text: str) -> list[Fraction]:
    return [_probability(part) for part in text.split(",") if part.strip()]


def _approx(x: Fraction) -> str:
    return f"{x}  (~ {decimal_string(x)})" if Fraction(x).denominator != 1 else str(x)


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# -- gp -----------------------------------------------------------------------


def cmd_gp(args: argparse.Namespace) -> int:
    poly = gaussian_polynomial(args.n, args.k)
    coeffs = list(poly.coefficients)
    if args.format == "json":
        _emit(json.dumps(
            {"n": args.n, "k": args.k, "coefficients": coeffs, "degree": poly.degree}
        ))
    elif args.format == "csv":
        lines = ["power,coefficient"] + [f"{j},{c}" for j, c in enumerate(coeffs)]
        _emit("\n".join(lines))
    elif poly.is_zero():
        _emit("0 (zero polynomial)")
    else:
        _emit(" ".join(map(str, coeffs)) + f" (degree {poly.degree})")
    return EXIT_OK


# -- pmf ----------------------------------------------------------------------


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [f"--{name}" for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError(f"--which {args.which} requires {', '.join(missing)}")


def _pmf_rows(args: argparse.Namespace) -> tuple[list[str], list[tuple[tuple, Fraction]], str]:
    """Key column names, ``(keys, value)`` rows and a label template."""
    n, which = args.n, args.which
    if which == "T|Y":
        _need(args, "k")
        if not 0 <= args.k <= n:
            raise UsageError(f"--k must lie in 0..{n}")
        ts = [args.t] if args.t is not None else range(args.k * (n - args.k) + 1)
        rows = [((t,), conditional_T_given_Y(n, args.k, t)) for t in ts]
        return ["t"], rows, f"P(T={{0}} | Y={args.k})"

    _need(args, "pi")
    params = ExperimentParams(n, args.pi)
    if which == "joint":
        if args.k is not None and args.t is not None:
            return ["k", "t"], [((args.k, args.t), joint_pmf(params, args.k, args.t))], \
                "P(Y={0}, T={1})"
        cells = joint_pmf_table(params).cells()
        rows = [((k, t), p) for k, t, p in cells
                if (args.k is None or k == args.k) and (args.t is None or t == args.t)]
        return ["k", "t"], rows, "P(Y={0}, T={1})"
    if which == "T":
        ts = [args.t] if args.t is not None else range(params.max_t() + 1)
        return ["t"], [((t,), marginal_T(params, t)) for t in ts], "P(T={0})"
    if which == "Y":
        ks = [args.k] if args.k is not None else range(n + 1)
        return ["k"], [((k,), marginal_Y(params, k)) for k in ks], "P(Y={0})"
    if which == "Y|T":
        _need(args, "t")
        ks = [args.k] if args.k is not None else range(n + 1)
        rows = [((k,), conditional_Y_given_T(params, args.t, k)) for k in ks]
        return ["k"], rows, f"P(Y={{0}} | T={args.t})"
    if which == "referee":
        _need(args, "q")
        ks = [args.k] if args.k is not None else range(n + 1)
        rows = [((k,), referee_normalized_pmf(params, args.q, k)) for k in ks]
        return ["k"], rows, f"P_referee(Y={{0}}; q={args.q})"
    raise AssertionError(which)


def _joint_grid(rows: list[tuple[tuple, Fraction]], n: int) -> str:
    """k rows by t columns, blank outside the support."""
    cells = {keys: value for keys, value in rows}
    ts = sorted({t for _, t in cells})
    ks = sorted({k for k, _ in cells}) or list(range(n + 1))
    body = [["k\\t"] + [str(t) for t in ts]]
    for k in ks:
        body.append([str(k)] + [str(cells[(k, t)]) if (k, t) in cells else "." for t in ts])
    widths = [max(len(r[i]) for r in body) for i in range(len(body[0]))]
    return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in body)


def _cmd_qpoly(args: argparse.Namespace) -> int:
    _need(args, "pi")
    params = ExperimentParams(args.n, args.pi)
    ks = [args.k] if args.k is not None else range(args.n + 1)
    polys = {k: q_generalized_pmf(params, k) for k in ks}
    if args.format == "json":
        _emit(json.dumps({
            "which": "qpoly",
            "n": args.n,
            "pi": fraction_to_json(params.pi),
            "polynomials": [
                {"k": k, "coefficients": [fraction_to_json(c) for c in p.coefficients]}
                for k, p in polys.items()
            ],
        }))
    elif args.format == "csv":
        rows = [((k, j), c) for k, p in polys.items() for j, c in enumerate(p.coefficients)]
        _emit(records_to_csv(["k", "power"], rows))
    else:
        _emit("\n".join(f"P_q(Y={k}) = {p}" for k, p in polys.items()))
    return EXIT_OK


def cmd_pmf(args: argparse.Namespace) -> int:
    if args.which == "qpoly":
        return _cmd_qpoly(args)
    keys, rows, label = _pmf_rows(args)
    if args.format == "json":
        payload = {
            "which": args.which,
            "n": args.n,
            "pi": fraction_to_json(args.pi) if args.pi is not None else None,
            "entries": [
                {**dict(zip(keys, kv)), "value": fraction_to_json(v)} for kv, v in rows
            ],
        }
        if args.which == "joint" and args.k is None and args.t is None:
            payload = {"which": "joint", **joint_table_to_json(
                joint_pmf_table(ExperimentParams(args.n, args.pi)))}
        _emit(json.dumps(payload))
    elif args.format == "csv":
        _emit(records_to_csv(keys, rows))
    elif args.which == "joint" and len(rows) > 1:
        total = sum((v for _, v in rows), Fraction(0))
        _emit(_joint_grid(rows, args.n) + f"\n{len(rows)} cells, total = {total}")
    else:
        _emit("\n".join(f"{label.format(*kv)} = {_approx(v)}" for kv, v in rows))
    return EXIT_OK


# -- moments ------------------------------------------------------------------


def cmd_moments(args: argparse.Namespace) -> int:
    params = ExperimentParams(args.n, args.pi)
    m = moments(params)
    named = [
        ("E(Y)", m.e_y), ("E(T)", m.e_t), ("E(T^2)", m.e_t2), ("V(T)", m.v_t),
        ("E(YT)", m.e_yt), ("Cov(Y,T)", m.cov_yt),
    ]
    if args.format == "json":
        _emit(json.dumps({
            "n": args.n,
            "pi": fraction_to_json(params.pi),
            "moments": {name: fraction_to_json(v) for name, v in named},
            "conditional": [
                {"k": k, "mean": fraction_to_json(mean), "variance": fraction_to_json(var)}
                for k, (mean, var) in m.conditional.items()
            ],
        }))
    elif args.format == "csv":
        rows = [((name, ""), v) for name, v in named]
        for k, (mean, var) in m.conditional.items():
            rows += [((f"E(T|Y={k})", k), mean), ((f"V(T|Y={k})", k), var)]
        _emit(records_to_csv(["quantity", "k"], rows))
    else:
        lines = [f"{name} = {_approx(v)}" for name, v in named]
        for k, (mean, var) in m.conditional.items():
            lines.append(f"E(T|Y={k}) = {mean}    V(T|Y={k}) = {var}")
        _emit("\n".join(lines))
    return EXIT_OK


# -- verify -------------------------------------------------------------------


def cmd_verify(args: argparse.Namespace) -> int:
    pis = args.pi or list(DEFAULT_PI_GRID)
    failures = total = 0
    for result in run_checks(args.n_max, pis):
        total += 1
        if not result.passed:
            failures += 1
        if not args.quiet or not result.passed:
            _emit(result.line())
    _emit(f"{total - failures}/{total} checks passed")
    return EXIT_OK if failures == 0 else EXIT_VERIFY_FAILED


# -- sample / homogeneity -----------------------------------------------------


def cmd_sample(args: argparse.Namespace) -> int:
    params = ExperimentParams(args.n, args.pi)
    batch = run_batch(params, args.seed, args.count, lanes=args.lanes)
    exact = moments(params)
    se = sqrt(exact.v_t / batch.count)
    z = (batch.mean_t - float(exact.e_t)) / se if se else 0.0
    if args.format == "json":
        _emit(json.dumps({
            **batch.summary(),
            "exact_e_t": fraction_to_json(exact.e_t),
            "e_t_standard_error": se,
            "e_t_z": z,
            "cells": [
                {"k": k, "t": t, "count": c, "exact": fraction_to_json(joint_pmf(params, k, t))}
                for (k, t), c in batch.counts.items()
            ],
        }))
    elif args.format == "csv":
        lines = ["k,t,count,frequency,exact_numerator,exact_denominator"]
        for (k, t), c in batch.counts.items():
            p = joint_pmf(params, k, t)
            lines.append(f"{k},{t},{c},{c / batch.count!r},{p.numerator},{p.denominator}")
        _emit("\n".join(lines))
    else:
        s = batch.summary()
        _emit("\n".join([
            f"n={s['n']} pi={s['pi']} seed={s['seed']} count={s['count']}",
            f"mean Y   = {s['mean_y']!r}  (exact {exact.e_y})",
            f"mean T   = {s['mean_t']!r}  (exact {exact.e_t}, z = {z:+.3f})",
            f"var T    = {s['var_t']!r}  (exact {exact.v_t})",
            f"mean YT  = {s['mean_yt']!r}  (exact {exact.e_yt})",
            f"cov(Y,T) = {s['cov_yt']!r}  (exact {exact.cov_yt})",
            f"distinct (k,t) cells observed: {s['cells']}",
        ]))
    return EXIT_OK


def _read_words(args: argparse.Namespace) -> list[str]:
    if args.word:
        return list(args.word)
    if args.file in (None, "-"):
        lines = sys.stdin.read().splitlines()
    else:
        with open(args.file, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    return [line.strip() for line in lines if line.strip()]


def cmd_homogeneity(args: argparse.Namespace) -> int:
    reports = [homogeneity_report(w) for w in _read_words(args)]
    if not reports:
        raise UsageError("no sequences given")
    if args.format == "table":
        for r in reports:
            _emit((
                f"{r.word}: n={r.n} k={r.k} t={r.t} (max {r.max_t}) "
                f"mean={r.mean} variance={r.variance} "
                f"P(T<=t|Y=k)={r.percentile} ~ {decimal_string(r.percentile, 6)} "
                f"-> {r.classification}"
            ))
    else:
        _emit(json.dumps([r.to_dict() for r in reports]))
    return EXIT_OK


def cmd_expand(args: argparse.Namespace) -> int:
    pairs = expand_noncommutative(args.n)
    if args.format == "json":
        _emit(json.dumps([
            {"word": str(w), "k": lam.k, "partition": list(lam.parts), "t": inversions(w)}
            for lam, w in pairs
        ]))
    else:
        sep = "," if args.format == "csv" else "  "
        lines = [sep.join(["outcome", "monomial", "partition", "transpositions", "t"])]
        for lam, w in pairs:
            trs = "".join(str(tr) for tr in reversed(qlambda_transpositions(lam, args.n, lam.k)))
            part = str(lam).replace(",", " ") if args.format == "csv" else str(lam)
            lines.append(sep.join(
                [str(w), w.as_monomial(), part, trs or "()", str(inversions(w))]
            ))
        _emit("\n".join(lines))
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbinomial",
        description="Exact joint distribution of successes and inversions in Bernoulli trials.",
    )
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("table", "json", "csv"), default="table")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gp", parents=[fmt], help="Gaussian polynomial coefficients")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_gp)

    p = sub.add_parser("pmf", parents=[fmt], help="exact pmfs of Y and T")
    p.add_argument("--which", choices=WHICH, default="joint")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--pi", type=_probability, help="success probability, e.g. 1/2 or 0.3")
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--q", type=_fraction, help="numeric q for --which referee")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("moments", parents=[fmt], help="closed-form moments")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--pi", type=_probability, required=True)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("verify", help="check closed forms against enumeration")
    p.add_argument("--n-max", type=_nonneg, default=10)
    p.add_argument("--pi", type=_pi_list, help="comma-separated list, e.g. 1/3,9/10")
    p.add_argument("--quiet", action="store_true", help="print failures and the tally only")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sample", parents=[fmt], help="Monte-Carlo simulation")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--pi", type=_probability, required=True)
    p.add_argument("--count", type=int, default=100_000)
    p.add_argument("--seed", type=_nonneg, default=0)
    p.add_argument("--lanes", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("homogeneity", help="homogeneity report for observed F/S sequences")
    p.add_argument("file", nargs="?", help="one F/S sequence per line; '-' or omitted for stdin")
    p.add_argument("--word", action="append", help="sequence given inline (repeatable)")
    p.add_argument("--format", choices=("table", "json"), default="json")
    p.set_defaults(func=cmd_homogeneity)

    p = sub.add_parser("expand", parents=[fmt], help="outcome/partition correspondence")
    p.add_argument("--n", type=_nonneg, required=True)
    p.set_defaults(func=cmd_expand)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ZeroProbabilityError, CapExceededError, ValueError, OSError) as exc:
        print(f"qbinomial {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
