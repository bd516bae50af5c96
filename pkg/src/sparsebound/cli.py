"""Command-line front end.

Subcommands: ``eval`` (exact bound and profile values), ``curves`` (level
curve vertices as CSV or JSON), ``verify`` (property suites), ``brute``
(small-depth enumeration report), ``extremize`` and ``corollary``
(constructive extremizers with attainment reports).  Every printed value is
an exact rational string.  Exit status: 0 all checks pass, 1 a violation or
missed attainment was found, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction
from typing import Sequence

from .candidate import (
    Family,
    bellman_value,
    classify_region,
    corollary_bound,
    curve_vertices,
    f_region,
    f_value,
    g_region,
    g_value,
    vertex_f,
    vertex_g,
)
from .dyadic import config_to_json
from .extremal import (
    attainment_report,
    corollary_config,
    curve_vertex_config,
    curve_vertex_target,
    AttainmentTarget,
)
from .rational import DomainError, format_rational, parse_rational
from .verify import (
    ExhaustiveModeError,
    SampleSpec,
    SUITE_NAMES,
    brute_force_sup,
    run_suite,
)


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparsebound",
        description="Exact level-set bounds for dyadic sparse averaging operators.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate the bound or a boundary profile")
    p_eval.add_argument("--which", choices=("B", "f", "g"), default="B")
    p_eval.add_argument("args", nargs="+", type=_rational, metavar="RATIONAL")

    p_curves = sub.add_parser("curves", help="emit level-curve vertices")
    p_curves.add_argument("m_max", type=int)
    p_curves.add_argument("--family", choices=("F", "G"), default="F")
    p_curves.add_argument("--format", choices=("csv", "json"), default="csv")
    p_curves.add_argument("--output", "-o", default=None)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=SUITE_NAMES + ("all",))
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--count", type=int, default=1000)

    p_brute = sub.add_parser(
        "brute",
        help="enumerate configurations at one depth",
        description="Exhaustive up to depth 3; deeper runs need --sample. "
        "Set SPARSEBOUND_WORKERS to fan the enumeration across processes.",
    )
    p_brute.add_argument("depth", type=int)
    p_brute.add_argument("--sample", type=int, default=None)
    p_brute.add_argument("--seed", type=int, default=0)
    p_brute.add_argument(
        "--lambda", dest="lambdas", type=_rational, action="append", default=[]
    )
    p_brute.add_argument("--format", choices=("json", "csv"), default="json")
    p_brute.add_argument("--output", "-o", default=None)

    p_ext = sub.add_parser("extremize", help="construct a curve-vertex extremizer")
    p_ext.add_argument("m", type=int)
    p_ext.add_argument("k", type=int)

    p_cor = sub.add_parser("corollary", help="construct a lattice-bound extremizer")
    p_cor.add_argument("n", type=int)
    p_cor.add_argument("N", type=int)

    return parser


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
    else:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)


def _cmd_eval(args: argparse.Namespace) -> int:
    values = args.args
    if args.which == "B":
        if len(values) != 3:
            raise DomainError("eval --which B needs x A lambda")
        x, a, level = values
        result = bellman_value(x, a, level)
        tag = classify_region(x, a, level).describe()
    else:
        if len(values) != 2:
            raise DomainError(f"eval --which {args.which} needs x lambda")
        x, level = values
        if args.which == "f":
            result = f_value(x, level)
            tag = f_region(x, level).describe()
        else:
            result = g_value(x, level)
            tag = g_region(x, level).describe()
    print(f"{format_rational(result)} ({tag})")
    return 0


def _cmd_curves(args: argparse.Namespace) -> int:
    if args.m_max < 0:
        raise DomainError("m_max must be nonnegative")
    family = Family(args.family)
    vertex = vertex_f if family is Family.F else vertex_g
    if args.format == "json":
        payload = []
        for m in range(args.m_max + 1):
            verts = curve_vertices(family, m)
            payload.append(
                {
                    "m": m,
                    "vertices": [
                        [format_rational(p.x), format_rational(p.y)] for p in verts
                    ],
                }
            )
        _emit(json.dumps(payload, indent=2), args.output)
        return 0
    rows = [["m", "k", "x", "lambda"]]
    for m in range(args.m_max + 1):
        rows.append([str(m), "", "0", "0"])
        for k in range(m, -1, -1):
            p = vertex(k, m)
            rows.append([str(m), str(k), format_rational(p.x), format_rational(p.y)])
    text = "\n".join(",".join(row) for row in rows) + "\n"
    _emit(text, args.output)
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    spec = SampleSpec(seed=args.seed, count=args.count)
    names = SUITE_NAMES if args.suite == "all" else (args.suite,)
    report = []
    failed = False
    for name in names:
        violations = run_suite(name, spec)
        report.append(
            {
                "check": name,
                "samples": args.count,
                "violations": [v.to_json() for v in violations],
            }
        )
        failed = failed or bool(violations)
    print(json.dumps(report, indent=2))
    return 1 if failed else 0


def _cmd_brute(args: argparse.Namespace) -> int:
    report = brute_force_sup(
        args.depth, lambda_values=args.lambdas, sample=args.sample, seed=args.seed
    )
    if args.format == "json":
        _emit(json.dumps(report.to_json(), indent=2), args.output)
    else:
        text = "\n".join(",".join(row) for row in report.to_csv_rows()) + "\n"
        _emit(text, args.output)
    return 0 if report.domination else 1


def _attainment_exit(config, target: AttainmentTarget) -> int:
    report = attainment_report(config, target)
    payload = {"config": config_to_json(config), "report": report}
    print(json.dumps(payload, indent=2))
    return 0 if report["attained"] else 1


def _cmd_extremize(args: argparse.Namespace) -> int:
    if not 0 <= args.k <= args.m:
        raise DomainError("extremize needs 0 <= k <= m")
    config = curve_vertex_config(args.m, args.k)
    return _attainment_exit(config, curve_vertex_target(args.m, args.k))


def _cmd_corollary(args: argparse.Namespace) -> int:
    if args.n < 0 or args.N < 3:
        raise DomainError("corollary needs n >= 0 and N >= 3")
    config = corollary_config(args.n, args.N)
    point = vertex_f(args.n, args.N + args.n - 3)
    target = AttainmentTarget(point.x, Fraction(2), point.y, corollary_bound(args.n, args.N))
    return _attainment_exit(config, target)


_DISPATCH = {
    "eval": _cmd_eval,
    "curves": _cmd_curves,
    "verify": _cmd_verify,
    "brute": _cmd_brute,
    "extremize": _cmd_extremize,
    "corollary": _cmd_corollary,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _DISPATCH[args.command](args)
    except ExhaustiveModeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
