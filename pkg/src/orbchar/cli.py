"""Command-line front end: ``orbchar chi|invariants|gb|selftest``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import euler_calculus as ec
from . import invariants as inv
from .euler_calculus import MalformedFunctionError, MalformedSpaceError
from .gb.scenarios import DEFAULT_GRID, DEFAULT_TOL, SCENARIOS, run_scenario
from .groups import GroupPresentation, GroupTableError, parse_presentation
from .lie import UnsupportedGroupError
from .ring import AtomRegistry, set_default_registry
from .selftest import FAULTS, run_selftest

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def load_json(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def parse_gamma(text: str) -> GroupPresentation:
    if Path(text).is_file():
        data = load_json(text)
        try:
            return GroupPresentation.from_json(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"{text}: bad presentation: {exc}") from None
    try:
        return parse_presentation(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _number(v):
    if isinstance(v, str):
        return Fraction(v)
    if isinstance(v, (int, float)) and not isinstance(v, bool):
        return v
    raise InputError(f"integrand value {v!r} is not a number")


def _render(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else v.numerator
    return v


def cmd_chi(args) -> dict:
    try:
        space = ec.DefinableSpace.from_json(load_json(args.space))
    except MalformedSpaceError as exc:
        raise InputError(f"{args.space}: {exc}") from None
    report = {"file": args.space, "chi": ec.euler_char(space)}
    if args.function:
        values = load_json(args.function)
        if not isinstance(values, dict):
            raise InputError(f"{args.function}: expected an object mapping labels to values")
        try:
            f = ec.ConstructibleFunction({k: _number(v) for k, v in values.items()})
            report["integral"] = _render(ec.integrate(f, space))
        except MalformedFunctionError as exc:
            raise InputError(f"{args.function}: {exc}") from None
    return report


def cmd_invariants(args) -> dict:
    try:
        model = inv.GroupoidModel.from_json(load_json(args.model))
    except (MalformedSpaceError, GroupTableError, UnsupportedGroupError) as exc:
        raise InputError(f"{args.model}: {exc}") from None
    gamma = parse_gamma(args.gamma)
    un = inv.chi_un(model)
    return {
        "file": args.model,
        "gamma": args.gamma,
        "chi_un": str(un),
        "chi_un_terms": un.to_json(),
        "chi_gamma": inv.chi_gamma(model, gamma),
        "chi_es": _render(inv.chi_es(model)),
        "chi_gamma_es": _render(inv.chi_gamma_es(model, gamma)),
    }


def cmd_gb(args) -> tuple[dict, bool]:
    if args.scenario not in SCENARIOS:
        raise InputError(f"unknown scenario {args.scenario!r}; available: {', '.join(SCENARIOS)}")
    res = run_scenario(args.scenario, args.grid)
    out = res.to_json()
    out["tol"] = args.tol
    out["ok"] = res.ok(args.tol)
    return out, out["ok"]


def cmd_selftest(args) -> tuple[dict, bool]:
    rep = run_selftest(args.seed, args.trials, args.inject_fault)
    return rep.to_json(), rep.ok


def _text(report: dict, indent: str = "") -> str:
    lines = []
    for k, v in report.items():
        if isinstance(v, dict):
            lines.append(f"{indent}{k}:")
            lines.append(_text(v, indent + "  "))
        elif isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{indent}{k}:")
            for item in v:
                lines.append(indent + "  - " + ", ".join(f"{a}={b}" for a, b in item.items()))
        else:
            lines.append(f"{indent}{k}: {v}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--iso-cap", type=int, default=None,
                        help="largest group order handled by isomorphism testing (default 64)")

    p = argparse.ArgumentParser(prog="orbchar", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("chi", parents=[common], help="Euler characteristic of a cell-counted space")
    c.add_argument("space")
    c.add_argument("--function", help="JSON object mapping stratum labels to integrand values")

    i = sub.add_parser("invariants", parents=[common], help="chi_un, chi_gamma, chi_es, chi_gamma_es")
    i.add_argument("model")
    i.add_argument("--gamma", default="Z", help="Z, Z^k, Z/n, Fk, 1 or a presentation JSON file")

    g = sub.add_parser("gb", parents=[common], help="sphere-bundle Gauss-Bonnet scenarios")
    g.add_argument("scenario", help=", ".join(SCENARIOS))
    g.add_argument("--grid", type=int, default=DEFAULT_GRID)
    g.add_argument("--tol", type=float, default=DEFAULT_TOL)

    s = sub.add_parser("selftest", parents=[common], help="seeded property suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--inject-fault", choices=sorted(FAULTS), default=None, help=argparse.SUPPRESS)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.iso_cap is not None:
        set_default_registry(AtomRegistry(cap=args.iso_cap))
    ok = True
    try:
        if args.command == "chi":
            report = cmd_chi(args)
        elif args.command == "invariants":
            report = cmd_invariants(args)
        elif args.command == "gb":
            report, ok = cmd_gb(args)
        else:
            report, ok = cmd_selftest(args)
    except (InputError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"orbchar: error: {msg}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        print(json.dumps(report, sort_keys=True))
    else:
        print(_text(report))
    if not ok and args.command == "selftest":
        for p in report["properties"]:
            if p["failed"]:
                print(f"orbchar: property violated: {p['name']}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
