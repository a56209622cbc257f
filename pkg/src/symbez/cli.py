"""Command-line front end for solving and verifying symmetric intersections.

Exit codes: 0 success or pass, 1 verification failure, 2 parse or usage
error, 3 numerical failure.  All errors are printed to stderr with the
prefix "error:"; --json switches every command to machine output.
"""

from __future__ import annotations

import argparse
import json
import sys

from .fixedpoints import catalog, full_catalog
from .exactnum import render_exact
from .parse import PolyParseError, parse_poly
from .poly import random_symmetric, render_poly, to_elementary_basis
from .solver import (
    CommonFactorError,
    DegenerateSystemError,
    IntersectionReport,
    SolveOptions,
    solve_p2,
    solve_p3,
)
from .verify import (
    P2_PRODUCT_CAP,
    mix_seed,
    orbit_type_independence,
    verify_p2_table,
    verify_p3_constraints,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_solve_flags(sub):
    # -h is the third input form, so these subcommands keep only --help
    sub.add_argument("--help", action="help", help="show this help message")
    sub.add_argument("--space", choices=("p2", "p3"), default="p2")
    sub.add_argument("-f", dest="f_text", metavar="POLY", required=True)
    sub.add_argument("-g", dest="g_text", metavar="POLY", required=True)
    sub.add_argument("-h", dest="h_text", metavar="POLY", default=None)
    sub.add_argument("--basis", choices=("monomial", "elementary"), default="monomial")
    sub.add_argument("--precision", type=int, default=128, metavar="BITS")
    sub.add_argument("--tolerance", type=float, default=1e-8)
    sub.add_argument("--json", action="store_true")


def _add_sampling_flags(sub, default_trials):
    sub.add_argument("--trials", type=int, default=default_trials)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--precision", type=int, default=128, metavar="BITS")
    sub.add_argument("--json", action="store_true")


def build_parser() -> _Parser:
    parser = _Parser(prog="symbez", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(
        dest="command", required=True, parser_class=_Parser
    )

    solve = commands.add_parser(
        "solve", add_help=False,
        help="intersect symmetric forms and report every point",
    )
    _add_solve_flags(solve)
    solve.set_defaults(func=_cmd_solve)

    orbit = commands.add_parser(
        "orbit-type", add_help=False,
        help="intersect symmetric forms and report only the orbit type",
    )
    _add_solve_flags(orbit)
    orbit.set_defaults(func=_cmd_orbit_type)

    table = commands.add_parser(
        "verify-table", help="sample the plane classification over a degree grid"
    )
    table.add_argument("--space", choices=("p2", "p3"), default="p2")
    table.add_argument("--max-product", type=int, default=20)
    _add_sampling_flags(table, default_trials=10)
    table.set_defaults(func=_cmd_verify_table)

    vp3 = commands.add_parser(
        "verify-p3", help="sample a space degree triple against its constraints"
    )
    vp3.add_argument("degrees", type=int, nargs=3, metavar="DEGREE")
    _add_sampling_flags(vp3, default_trials=5)
    vp3.set_defaults(func=_cmd_verify_p3)

    indep = commands.add_parser(
        "independence",
        help="check the orbit type is the same for every sampled instance",
    )
    indep.add_argument("degrees", type=int, nargs="+", metavar="DEGREE")
    indep.add_argument("--space", choices=("p2", "p3"), default=None)
    _add_sampling_flags(indep, default_trials=10)
    indep.set_defaults(func=_cmd_independence)

    fixed = commands.add_parser(
        "fixed-points", help="list the catalog of symmetric fixed-point families"
    )
    fixed.add_argument("stabilizer", nargs="?", default=None)
    fixed.add_argument("--space", choices=("p2", "p3"), default=None)
    fixed.add_argument("--json", action="store_true")
    fixed.set_defaults(func=_cmd_fixed_points)

    rand = commands.add_parser(
        "random-instance", help="draw seeded random symmetric forms"
    )
    rand.add_argument("degrees", type=int, nargs="+", metavar="DEGREE")
    rand.add_argument("--space", choices=("p2", "p3"), default="p2")
    rand.add_argument("--seed", type=int, default=0)
    rand.add_argument("--basis", choices=("monomial", "elementary"), default="monomial")
    rand.add_argument("--json", action="store_true")
    rand.set_defaults(func=_cmd_random_instance)

    return parser


# ----- solving commands -----


def _solve_report(args) -> IntersectionReport:
    num_vars = 3 if args.space == "p2" else 4
    options = SolveOptions(
        precision_bits=args.precision, match_tolerance=args.tolerance
    )
    f = parse_poly(args.f_text, num_vars, basis=args.basis)
    g = parse_poly(args.g_text, num_vars, basis=args.basis)
    if args.space == "p2":
        if args.h_text is not None:
            raise ValueError("the plane intersection takes exactly two forms")
        return solve_p2(f, g, options)
    if args.h_text is None:
        raise ValueError("the space intersection needs a third form via -h")
    h = parse_poly(args.h_text, num_vars, basis=args.basis)
    return solve_p3(f, g, h, options=options)


def _point_line(index: int, point) -> str:
    coords = " : ".join(point.coords_json())
    flags = [
        "exact" if point.exact is not None else "numeric",
        "real" if point.is_real else "complex",
    ]
    if not point.transverse:
        flags.append("non-transverse")
    return (
        f"point {index}: [{coords}]  stabilizer {point.stabilizer_name}"
        f"  multiplicity {point.multiplicity}  " + "  ".join(flags)
    )


def _obstruction_line(ob) -> str:
    blob = ob.to_json()
    extras = []
    if blob["which_input"] is not None:
        extras.append(f"input {blob['which_input']}")
    if blob["line"] is not None:
        extras.append(f"line {blob['line']}")
    if blob["jacobian_rank"] is not None:
        extras.append(f"jacobian rank {blob['jacobian_rank']}")
    if blob["note"]:
        extras.append(blob["note"])
    detail = f" ({'; '.join(extras)})" if extras else ""
    return f"obstruction: {blob['kind']} at {blob['point']}{detail}"


def _cmd_solve(args) -> int:
    report = _solve_report(args)
    if args.json:
        print(json.dumps(report.to_json(), indent=2))
        return 0
    print(f"space: {report.space}")
    print("degrees: " + " ".join(str(d) for d in report.degrees))
    print(f"bezout: {report.bezout}")
    print(f"transverse: {'yes' if report.transverse else 'no'}")
    for index, point in enumerate(report.points):
        print(_point_line(index, point))
    for ob in report.obstructions:
        print(_obstruction_line(ob))
    if report.orbit_type is not None:
        print(f"orbit type: {report.orbit_type.render()}")
    if report.transverse:
        print(f"real points: {report.real_count}")
    for note in report.notes:
        print(f"note: {note}")
    return 0


def _cmd_orbit_type(args) -> int:
    report = _solve_report(args)
    if args.json:
        blob = {
            "space": report.space,
            "degrees": list(report.degrees),
            "transverse": report.transverse,
            "orbit_type": None
            if report.orbit_type is None
            else report.orbit_type.render(),
            "real_count": report.real_count,
        }
        print(json.dumps(blob, indent=2))
        return 0
    print(f"transverse: {'yes' if report.transverse else 'no'}")
    if report.orbit_type is not None:
        print(f"orbit type: {report.orbit_type.render()}")
    if report.transverse:
        print(f"real points: {report.real_count}")
    return 0


# ----- verification commands -----


def _verdict_text(run) -> str:
    if run.counts.get("vacuous"):
        return f"{run.verdict} (vacuous)"
    return run.verdict


def _cmd_verify_table(args) -> int:
    if args.space != "p2":
        print("error: verify-table covers the plane; use verify-p3", file=sys.stderr)
        return 2
    if args.max_product < 1:
        raise ValueError("--max-product must be at least 1")
    if args.max_product > P2_PRODUCT_CAP:
        raise ValueError(f"--max-product exceeds the cap {P2_PRODUCT_CAP}")
    cells = [
        (d, e)
        for d in range(1, args.max_product + 1)
        for e in range(d, args.max_product + 1)
        if d * e <= args.max_product
    ]
    runs = [
        verify_p2_table(d, e, trials=args.trials, seed=args.seed,
                        precision_bits=args.precision)
        for d, e in cells
    ]
    all_passed = all(run.passed for run in runs)
    if args.json:
        blob = {
            "space": "P2",
            "max_product": args.max_product,
            "trials": args.trials,
            "seed": args.seed,
            "precision_bits": args.precision,
            "cells": [run.to_json() for run in runs],
            "all_passed": all_passed,
        }
        print(json.dumps(blob, indent=2))
        return 0 if all_passed else 1
    print(" d  e  expected                verdict          transverse/draws")
    for (d, e), run in zip(cells, runs):
        expected = run.params["expected"]
        ratio = f"{run.counts['transverse']}/{run.counts['draws']}"
        print(f"{d:>2} {e:>2}  {expected:<22}  {_verdict_text(run):<15}  {ratio}")
    failed = sum(1 for run in runs if not run.passed)
    if failed:
        print(f"{failed} of {len(runs)} cells did not pass")
        return 1
    print(f"all {len(runs)} cells passed")
    return 0


def _trial_line(trial) -> str:
    parts = [f"trial {trial.index}: {trial.outcome}"]
    if trial.orbit_type is not None:
        parts.append(trial.orbit_type)
    if trial.real_count is not None:
        parts.append(f"real {trial.real_count}")
    if trial.note:
        parts.append(f"({trial.note})")
    return "  ".join(parts)


def _cmd_verify_p3(args) -> int:
    run = verify_p3_constraints(
        tuple(args.degrees), trials=args.trials, seed=args.seed,
        precision_bits=args.precision,
    )
    if args.json:
        print(json.dumps(run.to_json(), indent=2))
        return 0 if run.passed else 1
    print("degrees: " + " ".join(str(d) for d in args.degrees))
    admissible = run.params["congruence_admissible"]
    print(f"congruence admissible: {'yes' if admissible else 'no'}")
    for trial in run.trials:
        print(_trial_line(trial))
    print(f"verdict: {_verdict_text(run)}")
    return 0 if run.passed else 1


def _cmd_independence(args) -> int:
    space = args.space
    if space is None:
        if len(args.degrees) == 2:
            space = "p2"
        elif len(args.degrees) == 3:
            space = "p3"
        else:
            raise ValueError("give two degrees for the plane or three for space")
    run = orbit_type_independence(
        space.upper(), tuple(args.degrees), trials=args.trials, seed=args.seed,
        precision_bits=args.precision,
    )
    if args.json:
        print(json.dumps(run.to_json(), indent=2))
        return 0 if run.passed else 1
    print("degrees: " + " ".join(str(d) for d in args.degrees))
    for trial in run.trials:
        print(_trial_line(trial))
    if "orbit_type" in run.counts:
        print(f"orbit type: {run.counts['orbit_type']}")
    print(f"verdict: {_verdict_text(run)}")
    return 0 if run.passed else 1


# ----- catalog and sampling commands -----


def _cmd_fixed_points(args) -> int:
    dims = {"p2": (2,), "p3": (3,)}.get(args.space, (2, 3))
    sections = []
    for dim in dims:
        if args.stabilizer is None:
            families = full_catalog(dim)
        else:
            families = catalog(dim, args.stabilizer)
        sections.append((dim, families))
    if args.json:
        blob = []
        for dim, families in sections:
            blob.append({
                "space": f"P{dim}",
                "families": [
                    {
                        "group": fam.group_name,
                        "stabilizer": fam.stabilizer_name,
                        "pattern": fam.pattern_text(),
                        "params": fam.param_count,
                        "excluded": [render_exact(v) for v in fam.excluded],
                        "admissible": fam.admissible,
                    }
                    for fam in families
                ],
            })
        print(json.dumps(blob, indent=2))
        return 0
    for dim, families in sections:
        print(f"P{dim} catalog ({len(families)} families)")
        for fam in families:
            flags = "admissible" if fam.admissible else "inadmissible"
            if fam.excluded:
                banned = ", ".join(render_exact(v) for v in fam.excluded)
                flags += f"  excluding {banned}"
            print(
                f"  {fam.stabilizer_name:<8} {fam.pattern_text():<28}"
                f" params {fam.param_count}  {flags}"
            )
    return 0


def _cmd_random_instance(args) -> int:
    num_vars = 3 if args.space == "p2" else 4
    forms = [
        random_symmetric(num_vars, degree, seed=mix_seed(args.seed, index))
        for index, degree in enumerate(args.degrees)
    ]
    if args.basis == "elementary":
        texts = [to_elementary_basis(f).to_text() for f in forms]
    else:
        texts = [render_poly(f) for f in forms]
    if args.json:
        blob = {
            "space": args.space.upper(),
            "degrees": list(args.degrees),
            "seed": args.seed,
            "basis": args.basis,
            "forms": texts,
        }
        print(json.dumps(blob, indent=2))
        return 0
    for degree, text in zip(args.degrees, texts):
        print(f"degree {degree}: {text}")
    return 0


# ----- entry point -----


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except PolyParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CommonFactorError as exc:
        print(f"error: common factor: {exc}", file=sys.stderr)
        return 2
    except DegenerateSystemError as exc:
        print(f"error: degenerate system: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
