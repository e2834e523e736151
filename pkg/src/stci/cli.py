"""Command-line interface.

Subcommands:

* ``report``       full invariant report for an ideal expression
* ``eval``         evaluate an expression to its canonical generators
* ``decompose``    irreducible components and minimal primes
* ``verify-paper`` run the built-in reference suite of known values
* ``fuzz``         run the checkers over seeded random ideals

Exit codes: 0 success / all checks pass, 1 some check failed, 2 usage or
parse error, 3 a resource bound was hit.  ``--horizon`` falls back to the
``STCI_HORIZON`` environment variable, flags win.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import invariants
from .core import FieldSpec, MonomialIdeal, ResourceLimitError
from .decomposition import irreducible_decomposition, minimal_primes
from .parser import EvaluationError, ParseError, evaluate, format_program, parse
from .verification import RandomIdealSpec, fuzz, run_reference_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3

REPORT_SCHEMA = {
    "type": "object",
    "required": ["ring", "ideal", "invariants", "flags"],
    "additionalProperties": False,
    "properties": {
        "ring": {
            "type": "object",
            "required": ["variables", "field"],
            "additionalProperties": False,
            "properties": {
                "variables": {"type": "array", "items": {"type": "string"}},
                "field": {"type": "string"},
            },
        },
        "ideal": {
            "type": "object",
            "required": ["generators"],
            "additionalProperties": False,
            "properties": {
                "generators": {"type": "array", "items": {"type": "string"}},
            },
        },
        "invariants": {
            "type": "object",
            "required": [
                "mu", "height", "dim_quotient", "depth", "proj_dim", "cd",
                "fgrade", "analytic_spread", "ara", "dg", "min_depth_powers",
            ],
            "additionalProperties": False,
            "properties": {
                "mu": {"type": "integer"},
                "height": {"type": "integer"},
                "dim_quotient": {"type": "integer"},
                "depth": {"type": "integer"},
                "proj_dim": {"type": "integer"},
                "cd": {"type": "integer"},
                "fgrade": {"type": "integer"},
                "analytic_spread": {"type": "integer"},
                "ara": {
                    "type": "object",
                    "required": ["lower", "upper", "certified"],
                    "additionalProperties": False,
                    "properties": {
                        "lower": {"type": "integer"},
                        "upper": {"type": "integer"},
                        "certified": {"type": "boolean"},
                    },
                },
                "dg": {
                    "type": "object",
                    "required": ["value", "horizon", "certified"],
                    "additionalProperties": False,
                    "properties": {
                        "value": {"type": "integer"},
                        "horizon": {"type": "integer"},
                        "certified": {"type": "boolean", "const": False},
                    },
                },
                "min_depth_powers": {
                    "type": "object",
                    "required": ["value", "horizon"],
                    "additionalProperties": False,
                    "properties": {
                        "value": {"type": "integer"},
                        "horizon": {"type": "integer"},
                    },
                },
            },
        },
        "flags": {
            "type": "object",
            "required": [
                "squarefree", "cohen_macaulay", "cohomologically_ci",
                "stci_certified",
            ],
            "additionalProperties": False,
            "properties": {
                "squarefree": {"type": "boolean"},
                "cohen_macaulay": {"type": "boolean"},
                "cohomologically_ci": {"type": "boolean"},
                "stci_certified": {"type": "boolean"},
            },
        },
    },
}


def _read_program(arg: str) -> str:
    if os.path.isfile(arg):
        with open(arg, "r", encoding="utf-8") as fh:
            return fh.read()
    return arg


def _resolve_horizon(value: int | None) -> int:
    if value is not None:
        return value
    env = os.environ.get("STCI_HORIZON")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"bad STCI_HORIZON value {env!r}") from None
    return 3


def _parse_ideal(arg: str, field: FieldSpec):
    text = _read_program(arg)
    ctx, node = parse(text, field)
    return ctx, node, evaluate(ctx, node)


def report_payload(ctx, ideal: MonomialIdeal, rep) -> dict:
    return {
        "ring": {
            "variables": list(ctx.variables),
            "field": str(ctx.field),
        },
        "ideal": {"generators": ideal.generator_strings()},
    } | rep.invariants_dict()


def _cmd_report(args) -> int:
    field = FieldSpec.parse(args.field)
    horizon = _resolve_horizon(args.horizon)
    ctx, _, ideal = _parse_ideal(args.expr, field)
    rep = invariants.report(ideal, horizon=horizon, field=field)
    payload = report_payload(ctx, ideal, rep)
    if args.json:
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(str(ctx))
    print(f"ideal {ideal}")
    inv = payload["invariants"]
    for key in ("mu", "height", "dim_quotient", "depth", "proj_dim", "cd",
                "fgrade", "analytic_spread"):
        print(f"{key:<18} {inv[key]}")
    ara = inv["ara"]
    certified = "certified" if ara["certified"] else "interval"
    print(f"{'ara':<18} [{ara['lower']}, {ara['upper']}] {certified}")
    print(f"{'dg':<18} {inv['dg']['value']} (horizon {inv['dg']['horizon']}, "
          "uncertified)")
    print(f"{'min_depth_powers':<18} {inv['min_depth_powers']['value']} "
          f"(horizon {inv['min_depth_powers']['horizon']}, uncertified)")
    flags = payload["flags"]
    flag_text = " ".join(f"{k}={str(v).lower()}" for k, v in flags.items())
    print(f"{'flags':<18} {flag_text}")
    return EXIT_OK


def _cmd_eval(args) -> int:
    field = FieldSpec.parse(args.field)
    ctx, node, ideal = _parse_ideal(args.expr, field)
    if args.json:
        payload = {
            "ring": {"variables": list(ctx.variables), "field": str(ctx.field)},
            "ideal": {"generators": ideal.generator_strings()},
            "canonical": format_program(ctx, node),
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"ring {', '.join(ctx.variables)}; {ideal}")
    return EXIT_OK


def _cmd_decompose(args) -> int:
    field = FieldSpec.parse(args.field)
    ctx, _, ideal = _parse_ideal(args.expr, field)
    components = irreducible_decomposition(ideal)
    primes = minimal_primes(ideal)
    if args.json:
        payload = {
            "ring": {"variables": list(ctx.variables), "field": str(ctx.field)},
            "ideal": {"generators": ideal.generator_strings()},
            "components": [c.ideal().generator_strings() for c in components],
            "minimal_primes": [p.generator_strings() for p in primes],
        }
        print(json.dumps(payload, indent=2))
        return EXIT_OK
    print(str(ctx))
    print(f"ideal {ideal}")
    for c in components:
        print(f"component {c.ideal()}")
    for p in primes:
        print(f"minimal prime {p}")
    return EXIT_OK


def _print_check_lines(results) -> None:
    width = max(len(r.name) for r in results)
    for r in results:
        print(f"{r.verdict.upper():<15} {r.name:<{width}}")


def _cmd_verify_paper(args) -> int:
    horizon = _resolve_horizon(args.horizon)
    results = run_reference_suite(horizon=horizon)
    failed = [r for r in results if r.failed]
    if args.json:
        payload = {
            "horizon": horizon,
            "checks": [r.to_json_dict() for r in results],
            "all_pass": not failed,
        }
        print(json.dumps(payload, indent=2))
    else:
        _print_check_lines(results)
        print(f"{len(results)} checks, {len(failed)} failures")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _cmd_fuzz(args) -> int:
    horizon = _resolve_horizon(args.horizon)
    spec = RandomIdealSpec(
        n=args.n,
        squarefree=args.squarefree,
        max_exponent=args.max_exponent,
        max_generators=args.max_generators,
        seed=args.seed,
    )
    results = fuzz(spec, args.count, horizon=horizon, jobs=args.jobs)
    failed = [r for r in results if r.failed]
    if args.json:
        payload = {
            "spec": {
                "n": spec.n,
                "squarefree": spec.squarefree,
                "max_exponent": spec.max_exponent,
                "max_generators": spec.max_generators,
                "seed": spec.seed,
            },
            "count": args.count,
            "horizon": horizon,
            "checks": [r.to_json_dict() for r in results],
            "all_pass": not failed,
        }
        print(json.dumps(payload, indent=2))
    else:
        if results:
            _print_check_lines(results)
        print(f"{len(results)} checks, {len(failed)} failures")
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def build_arg_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="stci",
        description="Invariants of monomial ideals and checks of the "
                    "inequality chain ht <= cd <= ara <= l <= mu.",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_common(p, expr=True):
        if expr:
            p.add_argument("expr", help="ideal program text or a file containing one")
            p.add_argument("--field", default="rational",
                           help="coefficient field: rational or fp:<q>")
        p.add_argument("--json", action="store_true", help="structured output")

    p_report = sub.add_parser("report", help="compute the full invariant report")
    add_common(p_report)
    p_report.add_argument("--horizon", type=int, default=None,
                          help="power horizon for min-depth and dg (default 3)")
    p_report.add_argument("--jobs", type=int, default=1,
                          help="parallel workers for independent subtasks")
    p_report.set_defaults(func=_cmd_report)

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    add_common(p_eval)
    p_eval.set_defaults(func=_cmd_eval)

    p_dec = sub.add_parser("decompose",
                           help="irreducible components and minimal primes")
    add_common(p_dec)
    p_dec.set_defaults(func=_cmd_decompose)

    p_verify = sub.add_parser("verify-paper",
                              help="run the built-in reference checks")
    add_common(p_verify, expr=False)
    p_verify.add_argument("--horizon", type=int, default=None)
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.set_defaults(func=_cmd_verify_paper)

    p_fuzz = sub.add_parser("fuzz", help="run checkers on seeded random ideals")
    add_common(p_fuzz, expr=False)
    p_fuzz.add_argument("--n", type=int, default=4, help="number of variables")
    p_fuzz.add_argument("--squarefree", action="store_true")
    p_fuzz.add_argument("--max-exponent", type=int, default=3)
    p_fuzz.add_argument("--max-generators", type=int, default=5)
    p_fuzz.add_argument("--seed", type=int, default=0)
    p_fuzz.add_argument("--count", type=int, default=20)
    p_fuzz.add_argument("--horizon", type=int, default=None)
    p_fuzz.add_argument("--jobs", type=int, default=1)
    p_fuzz.set_defaults(func=_cmd_fuzz)
    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (ParseError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
