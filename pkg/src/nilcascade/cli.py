"""Command-line front end: parse JSON inputs, dispatch to the library, emit
deterministic JSON (exit 0), a structured validation error (exit 1), or an
internal-invariant error (exit 2)."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .algebra import WindowAlgebra
from .cascade import cascade
from .coadjoint import (LinearForm, beta_rank, coadjoint_matrix, coadjoint_series,
                        invariants_regular, orbit_invariants, regular_orbit_ideal,
                        vergne_polarization)
from .criterion import lambda_matrix, nontriviality_verdict
from .enveloping import is_central, symmetrize
from .errors import NilcascadeError, ValidationError
from .generators import canonical_generator, ideal_generators, parse_pair
from .poly import SymPoly, poisson_bracket
from .rationals import format_rational, parse_rational
from .roots import OrderSpec, Root, Window, parse_root


def _load_json(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise ValidationError("io", f"cannot read {path}: {exc}", path)
    except json.JSONDecodeError as exc:
        raise ValidationError("bad-json", f"invalid JSON in {path}: {exc}", path)


def _load_order(path: str) -> OrderSpec:
    return OrderSpec.from_json(_load_json(path), path)


def _load_form(path: str) -> LinearForm:
    return LinearForm.from_json(_load_json(path), path)


def _load_poly(path: str) -> SymPoly:
    return SymPoly.from_json(_load_json(path), path)


def _load_vector(path: str) -> dict:
    data = _load_json(path)
    if not isinstance(data, dict) or "entries" not in data:
        raise ValidationError("bad-vector", "vector file needs an 'entries' list", path)
    out: dict = {}
    for entry in data["entries"]:
        root = parse_root(entry["root"], path)
        out[root] = out.get(root, Fraction(0)) + parse_rational(entry["coeff"], path)
    return {r: c for r, c in out.items() if c != 0}


def _parse_window(text: str) -> list[int]:
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part]
    except ValueError:
        raise ValidationError("bad-window", f"cannot parse window {text!r}")


def _vector_json(vec: dict) -> list[dict]:
    return [{"root": str(r), "coeff": format_rational(c)}
            for r, c in sorted(vec.items(), key=lambda kv: kv[0].sort_key())]


def _algebra(args) -> WindowAlgebra:
    order = _load_order(args.order)
    return WindowAlgebra(order, _parse_window(args.window))


# -- command handlers ---------------------------------------------------------


def _cmd_cascade(args):
    order = _load_order(args.order)
    result = cascade(order, args.limit)
    return {"cascade": [str(r) for r in result.roots], "terminated": result.terminated}


def _cmd_central_gen(args):
    order = _load_order(args.order)
    beta = parse_root(args.beta)
    gen = canonical_generator(beta, order)
    return {"beta": str(beta), "window": list(gen.window),
            "xi": gen.xi.to_json(), "delta": gen.delta.to_json()}


def _cmd_check_central(args):
    algebra = _algebra(args)
    poly = _load_poly(args.poly)
    for gamma in algebra.pbw_roots:
        bracket = poisson_bracket(poly, SymPoly.var(gamma), algebra)
        if bracket:
            return {"poisson_central": False, "witness": str(gamma), "bracket": bracket.to_json()}
    return {"poisson_central": True, "witness": None, "bracket": None}


def _cmd_pbw_central(args):
    algebra = _algebra(args)
    poly = _load_poly(args.poly)
    report = is_central(symmetrize(poly, algebra), algebra)
    return {"central": report.central,
            "witness": None if report.witness is None else str(report.witness)}


def _cmd_poisson_bracket(args):
    algebra = _algebra(args)
    f = _load_poly(args.f)
    g = _load_poly(args.g)
    return {"result": poisson_bracket(f, g, algebra).to_json()}


def _cmd_polarize(args):
    algebra = _algebra(args)
    form = _load_form(args.form)
    form.check_window(algebra.order)
    rank = beta_rank(form, algebra)
    basis = vergne_polarization(form, algebra)
    return {"rank": rank, "dimension": len(basis),
            "basis": [_vector_json(v) for v in basis]}


def _cmd_orbit_invariants(args):
    algebra = _algebra(args)
    form = _load_form(args.form)
    form.check_window(algebra.order)
    values = orbit_invariants(form, algebra)
    regular = invariants_regular(values, algebra.rank)
    generators = regular_orbit_ideal(form, algebra)
    return {"invariants": [format_rational(v) for v in values], "regular": regular,
            "generators": None if generators is None else [g.to_json() for g in generators]}


def _cmd_coadjoint(args):
    algebra = _algebra(args)
    form = _load_form(args.form)
    form.check_window(algebra.order)
    x = _load_vector(args.x)
    payload: dict = {}
    if args.method in ("matrix", "both"):
        by_matrix = coadjoint_matrix(x, form, algebra)
        payload["matrix"] = _vector_json(by_matrix)
    if args.method in ("series", "both"):
        by_series = coadjoint_series(x, form, algebra)
        payload["series"] = _vector_json(by_series)
    if args.method == "both":
        payload["agree"] = payload["matrix"] == payload["series"]
    return payload


def _cmd_ideal_gens(args):
    order = _load_order(args.order)
    pair = parse_pair(args.pair)
    window = Window.build(order, _parse_window(args.window))
    result = ideal_generators(pair, args.k, window, order)
    return {"generators": [g.to_json() for g in result.generators],
            "is_zero_ideal": result.is_zero_ideal}


def _cmd_criterion(args):
    order = _load_order(args.order)
    form = _load_form(args.form)
    return nontriviality_verdict(order, form, max_window=args.max_window).to_json()


def _cmd_rank(args):
    order = _load_order(args.order)
    form = _load_form(args.form)
    pair = parse_pair(args.pair)
    matrix = lambda_matrix(form, pair, order, _parse_window(args.rows), _parse_window(args.cols))
    from . import linalg
    return {"rank": linalg.rank(matrix),
            "matrix": [[format_rational(v) for v in row] for row in matrix]}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nilcascade")
    parser.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cascade", help="Kostant cascade of an order")
    p.add_argument("--order", required=True)
    p.add_argument("--limit", type=int, required=True)
    p.set_defaults(handler=_cmd_cascade)

    p = sub.add_parser("central-gen", help="canonical generator xi_beta and Delta_beta")
    p.add_argument("--order", required=True)
    p.add_argument("--beta", required=True)
    p.set_defaults(handler=_cmd_central_gen)

    p = sub.add_parser("check-central", help="Poisson centrality of a polynomial")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(handler=_cmd_check_central)

    p = sub.add_parser("pbw-central", help="centrality of the symmetrized polynomial in U(n)")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(handler=_cmd_pbw_central)

    p = sub.add_parser("poisson-bracket", help="Poisson bracket of two polynomials")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.set_defaults(handler=_cmd_poisson_bracket)

    p = sub.add_parser("polarize", help="Vergne polarization at a linear form")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--lambda", dest="form", required=True)
    p.set_defaults(handler=_cmd_polarize)

    p = sub.add_parser("orbit-invariants", help="A-type orbit invariants c_i")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--lambda", dest="form", required=True)
    p.set_defaults(handler=_cmd_orbit_invariants)

    p = sub.add_parser("coadjoint", help="coadjoint transport of a linear form by exp(x)")
    p.add_argument("--order", required=True)
    p.add_argument("--window", required=True)
    p.add_argument("--lambda", dest="form", required=True)
    p.add_argument("--x", required=True)
    p.add_argument("--method", choices=("matrix", "series", "both"), default="both")
    p.set_defaults(handler=_cmd_coadjoint)

    p = sub.add_parser("ideal-gens", help="window generators of the ideal I(p, k)")
    p.add_argument("--order", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--window", required=True)
    p.set_defaults(handler=_cmd_ideal_gens)

    p = sub.add_parser("criterion", help="nontriviality verdict for I(lambda)")
    p.add_argument("--order", required=True)
    p.add_argument("--lambda", dest="form", required=True)
    p.add_argument("--max-window", type=int, default=8)
    p.set_defaults(handler=_cmd_criterion)

    p = sub.add_parser("rank", help="submatrix of [lambda]_p and its exact rank")
    p.add_argument("--order", required=True)
    p.add_argument("--lambda", dest="form", required=True)
    p.add_argument("--pair", required=True)
    p.add_argument("--rows", required=True)
    p.add_argument("--cols", required=True)
    p.set_defaults(handler=_cmd_rank)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except ValidationError as exc:
        print(json.dumps({"error": exc.payload()}, separators=(",", ":")))
        return 1
    except NilcascadeError as exc:
        print(json.dumps({"error": {"code": "internal", "message": str(exc)}}, separators=(",", ":")))
        return 2
    if args.pretty:
        print(json.dumps(payload, indent=2))
    else:
        print(json.dumps(payload, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
