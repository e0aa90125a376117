"""Command-line interface: the `pm` tool.

Subcommands: bracket, mechanise, project, evolve, table, group, verify.
Exit codes: 0 success, 1 verification failure, 2 parse/usage error,
3 mathematical error (pole, dimension mismatch, division by zero).
"""

import argparse
import json
import re
import sys
from fractions import Fraction

from .brackets import BracketResult, sector_bracket
from .dynamics import (
    evolve_qc_jet,
    evolve_taylor,
    jet_trajectory_numeric,
    trajectory_numeric,
)
from .errors import (
    IndexOutOfRange,
    ParseError,
    PMechError,
    PoleAtClassicalLimit,
)
from .heisenberg import (
    CoadjointPoint,
    HGroupElement,
    classical_rep_phase,
    coadjoint,
    hn_multiply,
    phase_value,
)
from .mechanise import mechanise_universal, project_cc, project_qc, project_qq
from .parser import parse_symbol
from .symbols import JetObservable, KIND_P, KIND_Q, Symbol, var_id
from .verify import SUITES, run_suite

SECTOR_CHOICES = ("universal", "qq", "cc", "qc")


class UsageError(Exception):
    pass


# -- small input parsers -----------------------------------------------------


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}: {exc}") from None


def _fraction_list(text: str):
    return [_fraction(part) for part in text.split(",") if part.strip() != ""]


def _group_element(text: str) -> HGroupElement:
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError(f"group element must be 's;x1,..;y1,..', got {text!r}")
    s = _fraction(parts[0])
    x = _fraction_list(parts[1])
    y = _fraction_list(parts[2])
    return HGroupElement(s, x, y)


def _coadjoint_point(text: str) -> CoadjointPoint:
    parts = text.split(";")
    if len(parts) != 3:
        raise UsageError(f"point must be 'h;q1,..;p1,..', got {text!r}")
    return CoadjointPoint(
        _fraction(parts[0]), _fraction_list(parts[1]), _fraction_list(parts[2])
    )


_VAR_RE = re.compile(r"^([qp])([12])(?:_(\d+))?$")


def _phase_point(text: str, n: int) -> dict:
    point = {}
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise UsageError(f"point entries look like q1=1, got {chunk!r}")
        name, value = chunk.split("=", 1)
        match = _VAR_RE.match(name.strip())
        if not match:
            raise UsageError(f"unknown variable {name!r}")
        kind = KIND_Q if match.group(1) == "q" else KIND_P
        sector = int(match.group(2))
        index = int(match.group(3) or 1)
        if index > n:
            raise UsageError(f"index of {name!r} exceeds n={n}")
        point[var_id(sector, kind, index)] = _fraction(value.strip())
    return point


# -- output helpers ----------------------------------------------------------


def _result_dict(result: BracketResult, hbar_name: str) -> dict:
    if result.kind == "jet":
        return {
            "kind": "jet",
            "terms": result.jet.value.to_json_terms(hbar_name),
            "jet_derivative": result.jet.derivative.to_json_terms(hbar_name),
        }
    return {"kind": "symbol", "terms": result.symbol.to_json_terms(hbar_name)}


def _print_json(obj):
    print(json.dumps(obj, indent=2))


def _float_pair(value) -> tuple:
    return float(value.re), float(value.im)


def _csv_row(values) -> str:
    return ",".join(repr(float(v)) if isinstance(v, float) else str(v) for v in values)


def _hbar_name(sector: str) -> str:
    return "h" if sector == "qc" else "h1"


# -- subcommands -------------------------------------------------------------


def cmd_bracket(args) -> int:
    lhs = parse_symbol(args.lhs, args.n)
    rhs = parse_symbol(args.rhs, args.n)
    if args.mechanise and args.sector != "cc":
        lhs = mechanise_universal(lhs).symbol
        rhs = mechanise_universal(rhs).symbol
    h1 = _fraction(args.h1) if args.h1 is not None else None
    h2 = _fraction(args.h2) if args.h2 is not None else None
    try:
        result = sector_bracket(args.sector, lhs, rhs, h1, h2)
    except PoleAtClassicalLimit:
        print(
            "error: pole at h2=0: pair is not quantum-classically admissible",
            file=sys.stderr,
        )
        return 3
    if args.output == "json":
        _print_json(
            {"sector": args.sector, "result": _result_dict(result, _hbar_name(args.sector))}
        )
    else:
        print(result.render())
    return 0


def cmd_mechanise(args) -> int:
    symbol = mechanise_universal(parse_symbol(args.expr, args.n)).symbol
    if args.output == "json":
        _print_json(
            {
                "sector": "universal",
                "result": _result_dict(BracketResult.of_symbol(symbol), "h1"),
            }
        )
    else:
        print(symbol.render())
    return 0


def cmd_project(args) -> int:
    mech = mechanise_universal(parse_symbol(args.expr, args.n))
    if args.sector == "cc":
        result = BracketResult.of_symbol(project_cc(mech))
    elif args.sector == "qc":
        result = BracketResult.of_jet(project_qc(mech))
    else:
        h1 = _fraction(args.h1) if args.h1 is not None else None
        h2 = _fraction(args.h2) if args.h2 is not None else None
        result = BracketResult.of_symbol(project_qq(mech, h1, h2))
    if args.output == "json":
        _print_json(
            {"sector": args.sector, "result": _result_dict(result, _hbar_name(args.sector))}
        )
    else:
        print(result.render())
    return 0


def cmd_evolve(args) -> int:
    hamiltonian = parse_symbol(args.hamiltonian, args.n)
    observable = parse_symbol(args.observable, args.n)
    if args.mechanise and args.sector != "cc":
        hamiltonian = mechanise_universal(hamiltonian).symbol
        observable = mechanise_universal(observable).symbol
    hbar_name = _hbar_name(args.sector)

    if args.sector == "qc":
        jets = evolve_qc_jet(hamiltonian, observable, args.order, args.bracket_order)
        coeff_results = [BracketResult.of_jet(j) for j in jets]
    else:
        series = evolve_taylor(
            args.sector, hamiltonian, observable, args.order, args.bracket_order
        )
        coeff_results = [BracketResult.of_symbol(c) for c in series.coeffs]

    if args.times is not None:
        if args.at is None:
            raise UsageError("--times needs --at to fix the phase point")
        point = _phase_point(args.at, args.n)
        times = _fraction_list(args.times)
        h1 = _fraction(args.h1) if args.h1 is not None else Fraction(0)
        h2 = _fraction(args.h2) if args.h2 is not None else Fraction(0)
        if args.sector == "qc":
            rows = jet_trajectory_numeric(jets, point, times, h1)
            print("t,value_re,value_im,deriv_re,deriv_im")
            for t, value, deriv in rows:
                print(_csv_row((float(t),) + _float_pair(value) + _float_pair(deriv)))
        else:
            rows = trajectory_numeric(series, point, times, h1, h2)
            print("t,value_re,value_im")
            for t, value in rows:
                print(_csv_row((float(t),) + _float_pair(value)))
        return 0

    if args.output == "csv":
        raise UsageError("csv output needs --times (and --at)")
    if args.output == "json":
        _print_json(
            {
                "sector": args.sector,
                "order": args.order,
                "coefficients": [_result_dict(r, hbar_name) for r in coeff_results],
            }
        )
    else:
        for k, result in enumerate(coeff_results):
            print(f"f{k} = {result.render()}")
    return 0


def cmd_table(args) -> int:
    rows = []
    for sector in (1, 2):
        for index in range(1, args.n + 1):
            suffix = "" if index == 1 else f"_{index}"
            for kind, label in ((KIND_Q, "Q"), (KIND_P, "P")):
                classical = Symbol.variable(var_id(sector, kind, index), args.n)
                mech = mechanise_universal(classical)
                jet = project_qc(mech)
                rows.append(
                    {
                        "observable": f"{label}{sector}{suffix}",
                        "qq": mech.symbol,
                        "qc": jet,
                        "cc": project_cc(mech),
                    }
                )
    if args.output == "json":
        _print_json(
            {
                "n": args.n,
                "rows": [
                    {
                        "observable": row["observable"],
                        "qq": row["qq"].to_json_terms("h1"),
                        "qc_value": row["qc"].value.to_json_terms("h"),
                        "qc_derivative": row["qc"].derivative.to_json_terms("h"),
                        "cc": row["cc"].to_json_terms("h1"),
                    }
                    for row in rows
                ],
            }
        )
        return 0
    printed = [
        (
            row["observable"],
            row["qq"].render(),
            row["qc"].render(),
            row["cc"].render(),
        )
        for row in rows
    ]
    headers = ("observable", "qq", "qc", "cc")
    widths = [
        max(len(headers[col]), max(len(row[col]) for row in printed))
        for col in range(4)
    ]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    print(line)
    print("-" * len(line))
    for row in printed:
        print("  ".join(cell.ljust(w) for cell, w in zip(row, widths)))
    return 0


def cmd_group(args) -> int:
    if args.op == "mul":
        if args.lhs is None or args.rhs is None:
            raise UsageError("group mul needs --lhs and --rhs")
        print(hn_multiply(_group_element(args.lhs), _group_element(args.rhs)))
        return 0
    if args.op == "coadjoint":
        if args.g is None or args.point is None:
            raise UsageError("group coadjoint needs --g and --point")
        print(coadjoint(_group_element(args.g), _coadjoint_point(args.point)))
        return 0
    # phase
    if args.g is None or args.q is None or args.p is None:
        raise UsageError("group phase needs --g, --q and --p")
    theta = classical_rep_phase(
        _fraction_list(args.q), _fraction_list(args.p), _group_element(args.g)
    )
    value = phase_value(theta)
    re = 0.0 if abs(value.real) < 1e-12 else value.real
    im = 0.0 if abs(value.imag) < 1e-12 else value.imag
    print(f"theta = {theta}")
    print(f"value = {re:g}{im:+g}j")
    return 0


def cmd_verify(args) -> int:
    return 0 if run_suite(args.suite) else 1


# -- argument parsing --------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pm",
        description="Exact brackets and dynamics on one or two Heisenberg sectors.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, sector=True):
        if sector:
            p.add_argument("--sector", choices=SECTOR_CHOICES, default="universal")
        p.add_argument("--n", type=int, default=1, help="degrees of freedom per sector")
        p.add_argument("--output", choices=("text", "json", "csv"), default="text")

    b = sub.add_parser("bracket", help="evaluate a sector bracket")
    add_common(b)
    b.add_argument("--lhs", required=True)
    b.add_argument("--rhs", required=True)
    b.add_argument("--mechanise", action="store_true",
                   help="apply the momentum Lambda factors before bracketing")
    b.add_argument("--h1", default=None)
    b.add_argument("--h2", default=None)
    b.set_defaults(func=cmd_bracket)

    m = sub.add_parser("mechanise", help="lift a classical polynomial")
    add_common(m, sector=False)
    m.add_argument("expr")
    m.set_defaults(func=cmd_mechanise)

    pr = sub.add_parser("project", help="project a classical polynomial into a sector")
    add_common(pr)
    pr.add_argument("expr")
    pr.add_argument("--h1", default=None)
    pr.add_argument("--h2", default=None)
    pr.set_defaults(func=cmd_project)

    e = sub.add_parser("evolve", help="Taylor evolution under the dynamic equation")
    add_common(e)
    e.add_argument("--hamiltonian", required=True)
    e.add_argument("--observable", required=True)
    e.add_argument("--order", type=int, default=8)
    e.add_argument("--mechanise", action="store_true")
    e.add_argument("--bracket-order", choices=("H-first", "f-first"), default="H-first")
    e.add_argument("--at", default=None, help="phase point, e.g. q1=1,p2=3/2")
    e.add_argument("--h1", default=None)
    e.add_argument("--h2", default=None)
    e.add_argument("--times", default=None, help="comma-separated rational times")
    e.set_defaults(func=cmd_evolve)

    t = sub.add_parser("table", help="representation table of the generators")
    add_common(t, sector=False)
    t.set_defaults(func=cmd_table)

    g = sub.add_parser("group", help="Heisenberg group operations")
    g.add_argument("--op", choices=("mul", "coadjoint", "phase"), required=True)
    g.add_argument("--lhs", default=None)
    g.add_argument("--rhs", default=None)
    g.add_argument("--g", default=None)
    g.add_argument("--point", default=None)
    g.add_argument("--q", default=None)
    g.add_argument("--p", default=None)
    g.set_defaults(func=cmd_group)

    v = sub.add_parser("verify", help="run the self-verification suites")
    v.add_argument("--suite", choices=tuple(SUITES) + ("all",), default="all")
    v.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return code if isinstance(code, int) else 2
    try:
        return args.func(args)
    except (ParseError, IndexOutOfRange, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PMechError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
