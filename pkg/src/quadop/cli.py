"""Command-line front end.

Subcommands: dims, dual, koszul, reduce. Exit codes: 0 success (including an
inconclusive Koszulity test), 1 the series test certifies non-Koszulity,
2 usage or DSL parse errors, 3 capacity limits, 4 an internal cross-check
failed (prime rank disagreement or dual-route mismatch). JSON reports are
byte-stable across runs once --no-timing is passed.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .errors import CapacityError, CrossCheckError, ParseError, QuadopError
from .ideal import DimTable, dims
from .identities import parse_expression
from .lieadmiss import jacobiator_conditions, normal_form
from .pairing import koszul_dual
from .presets import PRESET_NAMES, load_relations_file, preset_space
from .series import koszul_obstruction

EXIT_OK = 0
EXIT_NOT_KOSZUL = 1
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_CROSSCHECK = 4


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadop",
        description="Exact computations for binary quadratic operads.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, needs_operad=True):
        if needs_operad:
            group = p.add_mutually_exclusive_group(required=True)
            group.add_argument("--operad", choices=PRESET_NAMES, help="preset name")
            group.add_argument("--relations-file", help="JSON relations file")
        p.add_argument("--json", action="store_true", help="machine-readable report")
        p.add_argument("--no-timing", action="store_true", help="omit timing from the report")

    p_dims = sub.add_parser("dims", help="dimensions of the multilinear components")
    add_common(p_dims)
    p_dims.add_argument("--max-arity", type=int, default=5)
    p_dims.add_argument("--method", choices=("recursive", "direct"), default="recursive")
    p_dims.add_argument("--field", default="auto", help="rational | prime:P | auto")
    p_dims.add_argument(
        "--arity-cap", type=int, default=None,
        help="raise the dims arity cap (default 6; 7 is experimental)",
    )

    p_dual = sub.add_parser("dual", help="Koszul dual relations")
    add_common(p_dual)
    p_dual.add_argument(
        "--route", choices=("pairing", "lieadm", "both"), default="pairing",
        help="annihilator pairing, Lie-admissibility extraction, or cross-check",
    )

    p_koszul = sub.add_parser("koszul", help="series obstruction test")
    add_common(p_koszul)
    p_koszul.add_argument("--order", type=int, default=5)
    p_koszul.add_argument("--method", choices=("recursive", "direct"), default="recursive")
    p_koszul.add_argument("--field", default="auto")
    p_koszul.add_argument("--arity-cap", type=int, default=None)

    p_reduce = sub.add_parser("reduce", help="normal form of a degree-3 expression")
    add_common(p_reduce)
    p_reduce.add_argument("expression", help="DSL expression or equation")

    return parser


def _parse_field(text):
    if text in ("auto", "rational"):
        return text
    if isinstance(text, str) and text.startswith("prime:"):
        try:
            return int(text.split(":", 1)[1])
        except ValueError:
            raise ParseError(f"bad prime in field spec {text!r}")
    raise ParseError(f"unrecognized field {text!r}; use rational, prime:P or auto")


def _resolve_space(args):
    if getattr(args, "operad", None):
        return args.operad, preset_space(args.operad)
    return load_relations_file(args.relations_file)


def _dim_section(table: DimTable) -> list[int]:
    return [e.dim for e in table.entries]


def _field_summary(table: DimTable) -> str:
    seen = []
    for e in table.entries:
        if e.field != "-" and e.field not in seen:
            seen.append(e.field)
    return "; ".join(seen) if seen else "-"


def _report_header(argv, name) -> dict:
    return {
        "command": "quadop " + " ".join(argv),
        "operad": name,
        "versions": {"quadop": __version__},
    }


def cmd_dims(args, argv) -> tuple[dict, int]:
    name, space = _resolve_space(args)
    table = dims(
        space,
        max_arity=args.max_arity,
        method=args.method,
        field=_parse_field(args.field),
        name=name,
        arity_cap=args.arity_cap,
    )
    report = _report_header(argv, name)
    report["dims"] = _dim_section(table)
    report["field"] = _field_summary(table)
    return report, EXIT_OK


def cmd_dual(args, argv) -> tuple[dict, int]:
    name, space = _resolve_space(args)
    routes = {}
    if args.route in ("pairing", "both"):
        routes["pairing"] = koszul_dual(space)
    if args.route in ("lieadm", "both"):
        routes["lieadm"] = jacobiator_conditions(space)
    primary = routes.get("pairing", routes.get("lieadm"))
    report = _report_header(argv, name)
    dual_section = {"generators": list(primary.generators_dsl()), "dim": primary.dim}
    code = EXIT_OK
    if args.route == "both":
        agree = routes["pairing"] == routes["lieadm"]
        dual_section["routes_agree"] = agree
        if not agree:
            code = EXIT_CROSSCHECK
    report["dual"] = dual_section
    return report, code


def cmd_koszul(args, argv) -> tuple[dict, int]:
    name, space = _resolve_space(args)
    verdict = koszul_obstruction(
        space,
        order=args.order,
        method=args.method,
        field=_parse_field(args.field),
        name=name,
        arity_cap=args.arity_cap,
    )
    report = _report_header(argv, name)
    report["dims"] = _dim_section(verdict.table)
    report["dual_dims"] = _dim_section(verdict.dual_table)
    report["koszul"] = {
        "verdict": verdict.verdict,
        "obstruction_order": verdict.obstruction_order,
        "obstruction_coefficient": (
            _frac_str(verdict.obstruction_coefficient)
            if verdict.obstruction_coefficient is not None
            else None
        ),
    }
    report["field"] = _field_summary(verdict.table)
    return report, EXIT_NOT_KOSZUL if verdict.obstructed else EXIT_OK


def cmd_reduce(args, argv) -> tuple[dict, int]:
    name, space = _resolve_space(args)
    combo, is_equation = parse_expression(args.expression)
    nf = normal_form(combo, space)
    report = _report_header(argv, name)
    section = {
        "input": args.expression,
        "normal_form": nf.render(),
        "in_span": space.contains(combo),
    }
    if is_equation:
        section["equation"] = True
    report["reduce"] = section
    return report, EXIT_OK


def _print_human(report: dict) -> None:
    print(f"operad: {report['operad']}")
    if "dims" in report:
        print(f"dims: {report['dims']}")
    if "dual_dims" in report:
        print(f"dual dims: {report['dual_dims']}")
    if "dual" in report:
        section = report["dual"]
        print(f"dual dimension: {section['dim']}")
        for g in section["generators"]:
            print(f"  {g}")
        if "routes_agree" in section:
            print(f"routes agree: {'PASS' if section['routes_agree'] else 'FAIL'}")
    if "koszul" in report:
        k = report["koszul"]
        if k["verdict"] == "not-koszul":
            print(
                f"verdict: NOT-KOSZUL (obstruction at t^{k['obstruction_order']}, "
                f"coefficient {k['obstruction_coefficient']})"
            )
        else:
            print("verdict: INCONCLUSIVE (no obstruction at the computed order)")
    if "reduce" in report:
        r = report["reduce"]
        print(f"input: {r['input']}")
        print(f"normal form: {r['normal_form']}")
        print(f"in relation span: {r['in_span']}")
    if "field" in report:
        print(f"field: {report['field']}")
    if "timing" in report:
        print(f"elapsed: {report['timing']['seconds']}s")


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    handlers = {
        "dims": cmd_dims,
        "dual": cmd_dual,
        "koszul": cmd_koszul,
        "reduce": cmd_reduce,
    }
    start = time.perf_counter()
    try:
        report, code = handlers[args.command](args, argv)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except CrossCheckError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except QuadopError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if not args.no_timing:
        report["timing"] = {"seconds": round(time.perf_counter() - start, 3)}
    if args.json:
        print(json.dumps(report, indent=2))
    else:
        _print_human(report)
    return code


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
