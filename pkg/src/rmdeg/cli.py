"""Command-line front end.

Exit status:
  0  success, no bound violated
  1  some bound verdict is "violated", or a stage failed unexpectedly
  2  malformed input (JSON, polynomial syntax, invalid map)
  3  Groebner budget exceeded
  4  point sampling failed
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .document import InputError, corpus_names, corpus_text, document_from_forms, resolve_input
from .fiber import SamplingError
from .groebner import DEFAULT_BUDGET, Budget, BudgetExceeded
from .parse import ParseError
from .report import STAGE_DEPENDENCIES, assemble_report, compare_with_rationals

EXIT_OK, EXIT_VIOLATED, EXIT_PARSE, EXIT_BUDGET, EXIT_SAMPLING = 0, 1, 2, 3, 4

PIPELINE_COMMANDS = ("analyze", "degree", "bounds", "rees", "betti", "jdrank")


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("input", nargs="?", help="JSON input file or bundled example name")
    p.add_argument("--forms", help='comma-separated forms, e.g. "x^2,y*z,z^2" (map on P^n)')
    p.add_argument("--vars", help="comma-separated variables for --forms")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--char", type=int, default=None, help="characteristic: 0 or a prime")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--budget-pairs", type=int, default=None, help="S-pair cap per Groebner run")
    p.add_argument("--budget-deg", type=int, default=None, help="degree cap per Groebner run")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rmdeg", description="Degree of rational maps and its bounds.")
    parser.add_argument("--version", action="version", version=f"rmdeg {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "analyze": "full report",
        "degree": "degree via general fibers",
        "bounds": "all bounds with verdicts",
        "rees": "Rees ideal, special fiber and x-linear part",
        "betti": "Betti table of the base ideal",
        "jdrank": "Jacobian dual rank",
    }
    for name in PIPELINE_COMMANDS:
        _add_common(sub.add_parser(name, help=helps[name]))
    ex = sub.add_parser("examples", help="bundled example corpus")
    ex.add_argument("action", choices=("list", "show"))
    ex.add_argument("name", nargs="?")
    return parser


def _document(args):
    if args.forms:
        if not args.vars:
            raise InputError("--forms needs --vars")
        doc = document_from_forms(args.forms, args.vars, args.char or 0)
    elif args.input:
        doc = resolve_input(args.input)
    else:
        raise InputError("give an input file, an example name, or --forms/--vars")
    budget = None
    if args.budget_pairs is not None or args.budget_deg is not None:
        cur = doc.options.budget
        budget = Budget(args.budget_pairs if args.budget_pairs is not None else cur.max_pairs,
                        args.budget_deg if args.budget_deg is not None else cur.max_degree)
    if args.trials is not None and args.trials < 1:
        raise InputError("--trials must be at least 1")
    try:
        return doc.with_overrides(args.char, args.seed, args.trials, budget), doc.characteristic
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _partial_text(command: str, report) -> str:
    doc = report.as_json()
    if command == "betti":
        b = report.betti
        return b.staircase() + f"\nregularity: {b.regularity if b.betti else '-'}"
    if command == "jdrank":
        line = f"jdrank: {report.s}"
        if not report.spec.has_variety:
            line += f" (n = {report.spec.n}: {'birational' if report.s == report.spec.n else 'not birational'})"
        return line
    if command == "degree":
        d = doc["degree"]
        return f"degree: {d['value']}\ndistribution: {d['distribution']}\nreg proxy: {d['reg_proxy']}"
    return report.render_text()


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "examples":
        if args.action == "list":
            print("\n".join(corpus_names()), file=out)
            return EXIT_OK
        if not args.name:
            print("error: examples show needs a name", file=err)
            return EXIT_PARSE
        try:
            print(corpus_text(args.name), end="", file=out)
        except InputError as exc:
            print(f"error: {exc}", file=err)
            return EXIT_PARSE
        return EXIT_OK

    try:
        doc, original_char = _document(args)
        spec = doc.to_spec()
        report = assemble_report(spec, doc.options, STAGE_DEPENDENCIES[args.command])
        if spec.ring.p and not original_char:
            compare_with_rationals(report, doc.with_overrides(characteristic=0).to_spec())
    except ParseError as exc:
        caret = f"\n  {exc.text}\n  {' ' * exc.position}^" if exc.text else ""
        print(f"parse error: {exc}{caret}", file=err)
        return EXIT_PARSE
    except InputError as exc:
        print(f"input error: {exc}", file=err)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"budget exceeded in stage {getattr(exc, 'stage', '?')}: {exc}", file=err)
        return EXIT_BUDGET
    except SamplingError as exc:
        print(f"sampling failed in stage {getattr(exc, 'stage', '?')}: {exc}", file=err)
        return EXIT_SAMPLING
    except Exception as exc:  # noqa: BLE001 - every stage error maps to a status
        print(f"error in stage {getattr(exc, 'stage', '?')}: {type(exc).__name__}: {exc}", file=err)
        return EXIT_VIOLATED

    if args.json:
        print(json.dumps(report.as_json(), indent=2, sort_keys=True), file=out)
    else:
        print(_partial_text(args.command, report), file=out)
    return EXIT_VIOLATED if report.violated else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
