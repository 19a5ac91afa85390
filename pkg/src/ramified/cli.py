"""Command-line interface: JSON in, JSON out, one subcommand per operation.

Every subcommand is a thin adapter over the library; outputs are
byte-stable given the same inputs.  Domain errors exit 1 with a
machine-readable record on stderr; usage errors (including unreadable
input files) exit 2.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import amplify as amplify_mod
from . import classify as classify_mod
from .covering import BranchingDatum, Constellation, branching_datum, genus_rh
from .decompose import (
    FactorTag,
    critical_datum,
    decompose_poly,
    radical_inverse,
    ritt_verdict,
    verify_radical_inverse,
)
from .errors import RamifiedError
from .exemplars import ExemplarSpec, exemplar
from .galois import dominates, fibered_product, galois_closure, monodromy_group
from .perm import DEFAULT_CAP
from .poly import ExactPolynomial, poly_from
from .quartic import solve_quartic_pencil
from .radicals import (
    chebyshev,
    eval_multi,
    expr_to_json,
    invert_chebyshev,
    invert_power,
    solve_cubic,
)

CAP_ENV = "RAMIFIED_CAP"


class _UsageError(Exception):
    pass


def _cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"invalid {CAP_ENV}={raw!r}")


def _fmt(value) -> str:
    """JSON with floats at 17 significant digits (double round trip)."""
    if isinstance(value, float):
        return format(value, ".17g")
    if isinstance(value, dict):
        items = ", ".join(f"{json.dumps(k)}: {_fmt(v)}" for k, v in value.items())
        return "{" + items + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return json.dumps(value)


def _emit(doc, text_mode: bool):
    if text_mode and isinstance(doc, dict):
        for key, value in doc.items():
            print(f"{key}: {_fmt(value)}")
    elif text_mode and isinstance(doc, list):
        for row in doc:
            print(_fmt(row))
    else:
        print(_fmt(doc))


def _c2j(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _load_constellation(path: str) -> Constellation:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise _UsageError(f"cannot read constellation from {path}: {exc}")
    return Constellation.from_json(data)


def _parse_coeffs(raw: str) -> ExactPolynomial:
    """Comma-separated coefficients, highest degree first (as written on paper)."""
    try:
        parts = [Fraction(tok.strip()) for tok in raw.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise _UsageError(f"bad coefficient list {raw!r}: {exc}")
    return poly_from(list(reversed(parts)))


def _datum_json(d: BranchingDatum) -> list[dict]:
    return [{"point": label, "order": order} for label, order in d.entries]


# ---------------------------------------------------------------------------
# subcommand handlers

def _cmd_datum(args) -> dict:
    c = _load_constellation(args.input)
    datum, passport = branching_datum(c)
    return {
        "degree": c.degree,
        "datum": _datum_json(datum),
        "passport": [list(ct) for ct in passport],
    }


def _cmd_genus(args) -> dict:
    c = _load_constellation(args.input)
    return {"degree": c.degree, "genus": genus_rh(c)}


def _cmd_classify(args) -> dict:
    orders = [int(tok) for tok in args.orders.split(",") if tok.strip()]
    return classify_mod.classify_orders(orders).to_json()


def _cmd_closure(args) -> dict:
    c = _load_constellation(args.input)
    closed = galois_closure(c, cap=_cap())
    return closed.to_json()


def _cmd_fprod(args) -> dict:
    c1 = _load_constellation(args.inputs[0])
    c2 = _load_constellation(args.inputs[1])
    comps = fibered_product(c1, c2)
    return {"components": [c.to_json() for c in comps]}


def _cmd_dominates(args) -> dict:
    c1 = _load_constellation(args.inputs[0])
    c2 = _load_constellation(args.inputs[1])
    return {"dominates": dominates(c1, c2)}


def _cmd_exemplar(args) -> dict:
    family = {f.value.lower(): f for f in classify_mod.DatumFamily}[args.family.lower()]
    spec = ExemplarSpec(family, args.param)
    return exemplar(spec).to_json()


def _cmd_enumerate(args):
    rows = classify_mod.enumerate_galois_data(args.genus, args.nmax)
    return [{"orders": list(orders), "n": n} for orders, n in rows]


def _cmd_amplify(args) -> dict:
    c = _load_constellation(args.input)
    extension = amplify_mod.cyclic_unbranched_extension(c, args.d)
    return {
        "constellation": extension.to_json(),
        "report": {
            "genus_before": genus_rh(c),
            "genus_after": genus_rh(extension),
            "monodromy_before": monodromy_group(c, cap=_cap()).order,
            "monodromy_after": monodromy_group(extension, cap=_cap()).order,
        },
    }


def _cmd_invert(args) -> dict:
    w = Fraction(args.w)
    if args.family == "power":
        expr = invert_power(args.n, w)
        poly = ExactPolynomial.monomial(args.n)
    else:
        expr = invert_chebyshev(args.n, w)
        poly = chebyshev(args.n)
    values = eval_multi(expr)
    on_fiber = [
        v for v in values if abs(poly.eval_complex(v) - complex(w)) < 1e-8 * (1 + abs(w))
    ]
    return {
        "family": args.family,
        "n": args.n,
        "w": str(w),
        "expr": expr_to_json(expr),
        "values": [_c2j(v) for v in values],
        "on_fiber": [_c2j(v) for v in on_fiber],
    }


def _cmd_solve_cubic(args) -> dict:
    p = _parse_coeffs(args.coeffs)
    roots = solve_cubic(p, Fraction(args.v))
    return {
        "roots": [_c2j(r) for _, r in roots],
        "radical": expr_to_json(roots[0][0]) if roots else None,
    }


def _cmd_solve_quartic(args) -> dict:
    p = _parse_coeffs(args.coeffs)
    roots = solve_quartic_pencil(p, radical=args.radical)
    doc = {"roots": [_c2j(r) for _, r in roots]}
    if args.radical:
        exprs = [expr_to_json(e) for e, _ in roots if e is not None]
        doc["radical"] = exprs[0] if exprs else None
    return doc


def _cmd_decompose(args) -> dict:
    p = _parse_coeffs(args.coeffs)
    factors = decompose_poly(p)
    return {
        "factors": [
            [str(c) for c in reversed(f.coeffs)] for f in factors
        ],
        "degrees": [f.degree for f in factors],
    }


def _cmd_ritt(args) -> dict:
    p = _parse_coeffs(args.coeffs)
    invertible, classes = ritt_verdict(p)
    doc = {
        "invertible": invertible,
        "factors": [c.to_json() for c in classes],
    }
    if p.degree >= 2:
        doc["critical_datum"] = _datum_json(critical_datum(p))
    if invertible:
        target = Fraction(args.target)
        tree = radical_inverse(p, target)
        doc["radical_inverse"] = expr_to_json(tree)
        doc["target"] = str(target)
        doc["verified_values"] = [
            _c2j(v) for v in verify_radical_inverse(p, target)
        ]
    return doc


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramified",
        description=(
            "Branched coverings as permutation constellations, solvable "
            "branching data, and polynomial inversion in radicals."
        ),
    )
    parser.add_argument(
        "--text", action="store_true", help="human-readable summary where available"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_datum = sub.add_parser("datum", help="branching datum and passport")
    p_datum.add_argument("--input", required=True)
    p_datum.set_defaults(func=_cmd_datum)

    p_genus = sub.add_parser("genus", help="genus of the total space")
    p_genus.add_argument("--input", required=True)
    p_genus.set_defaults(func=_cmd_genus)

    p_classify = sub.add_parser("classify", help="classify an order multiset")
    p_classify.add_argument("--orders", required=True, help="e.g. 2,3,7")
    p_classify.set_defaults(func=_cmd_classify)

    p_closure = sub.add_parser("closure", help="minimal Galois closure")
    p_closure.add_argument("--input", required=True)
    p_closure.set_defaults(func=_cmd_closure)

    p_fprod = sub.add_parser("fprod", help="fibered product components")
    p_fprod.add_argument("inputs", nargs=2)
    p_fprod.set_defaults(func=_cmd_fprod)

    p_dom = sub.add_parser("dominates", help="does the first cover the second")
    p_dom.add_argument("inputs", nargs=2)
    p_dom.set_defaults(func=_cmd_dominates)

    p_ex = sub.add_parser("exemplar", help="minimal Galois exemplar constellation")
    p_ex.add_argument("--family", required=True)
    p_ex.add_argument("--param", type=int, default=1)
    p_ex.set_defaults(func=_cmd_exemplar)

    p_enum = sub.add_parser("enumerate", help="Galois branching data by genus")
    p_enum.add_argument("--genus", type=int, choices=(0, 1), required=True)
    p_enum.add_argument("--nmax", type=int, required=True)
    p_enum.set_defaults(func=_cmd_enumerate)

    p_amp = sub.add_parser("amplify", help="cyclic unbranched extension")
    p_amp.add_argument("--input", required=True)
    p_amp.add_argument("--d", type=int, required=True)
    p_amp.set_defaults(func=_cmd_amplify)

    p_inv = sub.add_parser("invert", help="radical inverse of a power or Chebyshev map")
    p_inv.add_argument("--family", choices=("power", "chebyshev"), required=True)
    p_inv.add_argument("--n", type=int, required=True)
    p_inv.add_argument("--w", required=True, help="rational target, e.g. -1 or 3/4")
    p_inv.set_defaults(func=_cmd_invert)

    p_cub = sub.add_parser("solve-cubic", help="cubic roots with radical form")
    p_cub.add_argument("--coeffs", required=True, help="a,b,c,d highest degree first")
    p_cub.add_argument("--v", default="0", help="solve p(z) = v")
    p_cub.set_defaults(func=_cmd_solve_cubic)

    p_quart = sub.add_parser("solve-quartic", help="quartic roots via the conic pencil")
    p_quart.add_argument("--coeffs", required=True, help="a,b,c,d,e highest degree first")
    p_quart.add_argument("--radical", action="store_true")
    p_quart.set_defaults(func=_cmd_solve_quartic)

    p_dec = sub.add_parser("decompose", help="indecomposable composition factors")
    p_dec.add_argument("--coeffs", required=True)
    p_dec.set_defaults(func=_cmd_decompose)

    p_ritt = sub.add_parser("ritt", help="invertibility-in-radicals verdict")
    p_ritt.add_argument("--coeffs", required=True)
    p_ritt.add_argument("--target", default="0", help="round-trip target value")
    p_ritt.set_defaults(func=_cmd_ritt)

    return parser


def run(argv: list[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        doc = args.func(args)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except RamifiedError as exc:
        print(
            _fmt({"error": type(exc).__name__, "message": str(exc)}),
            file=sys.stderr,
        )
        return 1
    _emit(doc, args.text)
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
