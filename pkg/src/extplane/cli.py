"""Command line front end.

Every subcommand returns a :class:`CommandResult`; ``main`` prints it and
exits with its code (0 pass or value, 1 failed check, 2 usage error).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence, TextIO

from . import verify
from .algebra import Expr
from .rewrite import CalculusType, apply_derivative, build_ruleset, exterior_d, normalize
from .syntax import ParseError, expr_to_json, format_expr, parse_expr

PASS, FAIL, VALUE = "pass", "fail", "value"


@dataclass
class CommandResult:
    command: str
    status: str
    payload: dict[str, Any] = field(default_factory=dict)
    lines: list[str] = field(default_factory=list)   # text-mode rendering

    @property
    def exit_code(self) -> int:
        if self.status == "usage":
            return 2
        return 1 if self.status == FAIL else 0

    def as_json(self) -> dict[str, Any]:
        return {"command": self.command, "status": self.status,
                "exit_code": self.exit_code, "payload": self.payload}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")

    def exit(self, status: int = 0, message: str | None = None):
        # --help lands here; report it as a value rather than exiting
        raise _HelpRequested(message or "")


class _HelpRequested(Exception):
    pass


def _calc_type(text: str) -> CalculusType:
    try:
        return CalculusType.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _complex_pair(text: str) -> complex:
    parts = text.split(",")
    try:
        re_, im = (float(x) for x in parts) if len(parts) == 2 else (float(parts[0]), 0.0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected <re>,<im>, got {text!r}") from None
    return complex(re_, im)


def _globals(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--output", choices=("text", "json"), default=default("text"))
    parser.add_argument("--seed", type=int, default=default(0),
                        help="seed for the randomized checks")
    parser.add_argument("--unicode", action="store_true", default=default(False),
                        help="print generators as θ φ Θ Φ ∂θ ∂φ")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="extplane", description="Differential calculi on the quantum exterior plane.")
    _globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True

    def add(name: str, help_: str, typed: bool = True, expr: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        _globals(p, suppress=True)
        if typed:
            p.add_argument("--type", dest="calc_type", type=_calc_type, required=True,
                           metavar="{1|2}")
        if expr:
            p.add_argument("expr", help="expression, or - to read standard input")
        return p

    add("normalize", "normal form of an expression", expr=True)
    add("d", "exterior derivative of an expression", expr=True)
    p = add("derive", "partial derivative of an expression", expr=True)
    p.add_argument("--wrt", choices=("theta", "phi"), required=True)
    add("solve-ansatz", "solve the coefficient constraints (both branches)", typed=False)
    for name, help_ in (("consistency", "products, Leibniz rule, d^2 = 0 and derivative relations"),
                        ("confluence", "critical pairs of the rule set")):
        p = add(name, help_)
        p.add_argument("--theta-Phi-sign", type=int, choices=(1, -1), default=1,
                       help="sign of the Theta*phi term in the type II theta*Phi rule")
    add("ybe", "Yang-Baxter equation, plain and braid form")
    add("rcheck", "R-matrix form of the calculus with resolved scalings")
    add("rtt", "quantum group relations from R T1 T2 = T2 T1 R")
    add("covariance", "coaction images of the relations")
    p = add("fock", "oscillator representation on the two-mode Fock space")
    p.add_argument("--q", type=_complex_pair, required=True, metavar="RE,IM")
    add("verify-all", "run every check", typed=False)
    return parser


# -- subcommands ------------------------------------------------------------------

def _read_expr(args) -> Expr:
    text = sys.stdin.read() if args.expr == "-" else args.expr
    return parse_expr(text)


def _expr_payload(args, source: Expr, result: Expr) -> CommandResult:
    text = format_expr(result, unicode=args.unicode)
    return CommandResult(args.command, VALUE, {
        "type": args.calc_type.label, "input": format_expr(source),
        "result": format_expr(result), "result_terms": expr_to_json(result)}, [text])


def cmd_normalize(args) -> CommandResult:
    e = _read_expr(args)
    return _expr_payload(args, e, normalize(e, build_ruleset(args.calc_type)))


def cmd_d(args) -> CommandResult:
    e = _read_expr(args)
    return _expr_payload(args, e, exterior_d(e, build_ruleset(args.calc_type)))


def cmd_derive(args) -> CommandResult:
    e = _read_expr(args)
    i = 1 if args.wrt == "theta" else 2
    return _expr_payload(args, e, apply_derivative(i, e, build_ruleset(args.calc_type)))


def _check_result(command: str, checks: list[verify.Check], lines: list[str] | None = None) -> CommandResult:
    ok = all(c.ok for c in checks)
    payload = {"ok": ok, "checks": [c.as_dict() for c in checks]}
    body = lines if lines is not None else []
    verdicts = [f"{'PASS' if c.ok else 'FAIL'}  {c.family}: {c.name}" for c in checks]
    return CommandResult(command, PASS if ok else FAIL, payload, body + verdicts)


def cmd_solve_ansatz(args) -> CommandResult:
    check = verify.ansatz_check()
    lines = []
    for b in check.details["branches"]:
        lines.append(f"type {b['type']}:")
        lines += [f"  {k} = {v}" for k, v in b["coefficients"].items()]
    return _check_result(args.command, [check], lines)


def cmd_consistency(args) -> CommandResult:
    check = verify.consistency_check(args.calc_type, theta_Phi_sign=args.theta_Phi_sign)
    lines = [f"{check.details['checked']} identities checked"]
    lines += [f"  {f['group']}: {f['name']} leaves {f['residual']}" for f in check.details["failures"]]
    return _check_result(args.command, [check], lines)


def cmd_confluence(args) -> CommandResult:
    check = verify.confluence_check(args.calc_type, args.theta_Phi_sign)
    lines = [f"{check.details['overlaps_checked']} overlaps checked"]
    lines += [f"  {f['word']}: {f['left']}  vs  {f['right']}" for f in check.details["failures"]]
    return _check_result(args.command, [check], lines)


def cmd_ybe(args) -> CommandResult:
    check = verify.ybe_check_for(args.calc_type)
    lines = [f"R12 R13 R23 = R23 R13 R12: {check.details['plain']}",
             f"braid form with R-hat:     {check.details['braid']}"]
    return _check_result(args.command, [check], lines)


def cmd_rcheck(args) -> CommandResult:
    check = verify.rform_check(args.calc_type)
    lines = []
    for fam in check.details["families"]:
        scaling = f" (scaling {fam['scaling']})" if fam["scaling"] else ""
        lines.append(f"{fam['name']}{scaling}: {'ok' if fam['ok'] else 'mismatch'}")
        lines += [f"  {r['label']}: {r['note']}" for r in fam["relations"] if r["note"]]
    return _check_result(args.command, [check], lines)


def cmd_rtt(args) -> CommandResult:
    check = verify.rtt_check(args.calc_type)
    lines = [f"{r} = 0" for r in check.details["relations"]]
    return _check_result(args.command, [check], lines)


def cmd_covariance(args) -> CommandResult:
    check = verify.covariance_check(args.calc_type)
    lines = [f"{'ok  ' if r['ok'] else 'FAIL'} {r['relation']}" for r in check.details["relations"]]
    lines.append(f"commutative a, b, c, d: {check.details['commutative_control_nonzero']} relations not covariant")
    return _check_result(args.command, [check], lines)


def cmd_fock(args) -> CommandResult:
    try:
        check = verify.fock_check(args.calc_type, args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    lines = [f"{r['relation']}: {r['residual']:.3e}" for r in check.details["per_relation"]]
    lines.append(f"max residual {check.details['max_residual']:.3e}")
    return _check_result(args.command, [check], lines)


def cmd_verify_all(args) -> CommandResult:
    result = _check_result(args.command, verify.all_checks(args.seed))
    result.payload["seed"] = args.seed
    return result


COMMANDS: dict[str, Callable[[argparse.Namespace], CommandResult]] = {
    "normalize": cmd_normalize, "d": cmd_d, "derive": cmd_derive,
    "solve-ansatz": cmd_solve_ansatz, "consistency": cmd_consistency,
    "confluence": cmd_confluence, "ybe": cmd_ybe, "rcheck": cmd_rcheck, "rtt": cmd_rtt,
    "covariance": cmd_covariance, "fock": cmd_fock, "verify-all": cmd_verify_all,
}


def _wants_json(argv: Sequence[str]) -> bool:
    return any(a == "--output=json" or (a == "--output" and b == "json")
               for a, b in zip(argv, list(argv[1:]) + [""]))


def run_command(argv: Sequence[str]) -> CommandResult:
    argv = list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        return CommandResult("usage", "usage", {"error": str(exc)}, [str(exc)])
    except _HelpRequested as exc:
        text = str(exc) or parser.format_help()
        return CommandResult("help", VALUE, {"help": text}, [text.rstrip()])
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UsageError) as exc:
        return CommandResult(args.command, "usage", {"error": str(exc)}, [str(exc)])
    except ValueError as exc:
        # inputs outside an operation's domain, such as d of a derivative
        return CommandResult(args.command, "usage", {"error": str(exc)}, [f"error: {exc}"])


def render(result: CommandResult, output: str, stream: TextIO) -> None:
    if output == "json":
        json.dump(result.as_json(), stream, indent=2, sort_keys=True)
        stream.write("\n")
        return
    color = stream.isatty() and "NO_COLOR" not in os.environ
    for line in result.lines:
        if color and line.startswith("PASS"):
            line = f"\033[32mPASS\033[0m{line[4:]}"
        elif color and line.startswith("FAIL"):
            line = f"\033[31mFAIL\033[0m{line[4:]}"
        stream.write(line + "\n")


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    result = run_command(argv)
    output = "json" if _wants_json(argv) else "text"
    stream = sys.stderr if result.status == "usage" and output == "text" else sys.stdout
    render(result, output, stream)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
