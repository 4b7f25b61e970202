"""JSON formats for polynomials, algebra elements, witnesses and traces.

Rationals are always strings ``"p/q"`` (or ``"p"``) so no precision is lost.

Polynomial files
    * multilinear shorthand: ``{"[1,2]": "1", "[2,1]": "-1"}``;
    * admissible form: ``{"n": 2, "r": 1, "kind": "two",
      "terms": [{"sigma": [1, 2], "b": [0, 1], "i": 1, "coef": "1"}]}``
      (``i`` only for type two);
    * expression form: ``{"expr": "[X1,X2]", "n": 2, "r": 0, "kind": "one"}``,
      accepted when the expression is an admissible polynomial of that shape.

Elements
    * Weyl: list of ``[k, l, "p/q"]`` for ``v^k w^l``, or an expression string;
    * shift: an expression string in ``v`` (``"v"``, ``"v^3"``, ``"1 - v"``) or
      ``{"columns": {"1": {"2": "1"}}}`` listing finitely many nonzero
      columns; output lists the columns of the probe window;
    * product: a list with one entry per component.
"""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from surjpoly.backends.base import EvaluationAlgebra, Witness
from surjpoly.backends.product import ProductAlgebra, ProductElement
from surjpoly.backends.shift import ShiftAlgebra, ShiftOp
from surjpoly.backends.weyl import WeylAlgebra, WeylElement
from surjpoly.expr import parse_element, parse_pc
from surjpoly.pcpoly import ONE, TWO, AdmissiblePoly, as_admissible, multilinear


class FormatError(ValueError):
    pass


def frac(x) -> Fraction:
    try:
        return Fraction(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"not a rational number: {x!r}") from exc


def frac_str(x) -> str:
    return str(Fraction(x))


# --- polynomials -----------------------------------------------------------

def _perm_key(text: str) -> tuple[int, ...]:
    try:
        perm = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"permutation key {text!r} is not a JSON array") from exc
    if not isinstance(perm, list) or not all(isinstance(j, int) for j in perm):
        raise FormatError(f"permutation key {text!r} is not an array of integers")
    return tuple(perm)


def poly_from_json(obj: Any) -> AdmissiblePoly:
    if not isinstance(obj, dict):
        raise FormatError("a polynomial file holds a JSON object")
    try:
        if "expr" in obj:
            n, r, kind = int(obj["n"]), int(obj.get("r", 0)), obj.get("kind", ONE)
            f = as_admissible(parse_pc(obj["expr"], n), n, r, kind)
            if f is None:
                raise FormatError(f"{obj['expr']!r} is not an admissible polynomial "
                                  f"of type {kind} and order {r}")
            return f
        if "terms" in obj:
            n, r, kind = int(obj["n"]), int(obj["r"]), obj["kind"]
            coeffs = {}
            for t in obj["terms"]:
                key = (tuple(t["sigma"]), tuple(t["b"]))
                if kind == TWO:
                    key += (int(t["i"]),)
                coeffs[key] = coeffs.get(key, 0) + frac(t["coef"])
            return AdmissiblePoly(n, r, kind, coeffs)
        coeffs = {_perm_key(k): frac(v) for k, v in obj.items()}
        if not coeffs:
            raise FormatError("empty polynomial")
        lengths = {len(p) for p in coeffs}
        if len(lengths) != 1:
            raise FormatError("permutations of different lengths")
        return multilinear(lengths.pop(), coeffs)
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from exc


def poly_to_json(f: AdmissiblePoly) -> dict:
    terms = []
    for key, c in sorted(f.coeffs.items()):
        t = {"sigma": list(key[0]), "b": list(key[1])}
        if f.kind == TWO:
            t["i"] = key[2]
        t["coef"] = frac_str(c)
        terms.append(t)
    return {"n": f.n, "r": f.r, "kind": f.kind, "terms": terms}


# --- elements --------------------------------------------------------------

def weyl_to_json(x: WeylElement) -> list:
    return [[k, l, frac_str(c)] for (k, l), c in sorted(x.terms.items())]


def weyl_from_json(obj) -> WeylElement:
    if isinstance(obj, str):
        return parse_element(obj, WeylAlgebra())
    if isinstance(obj, (int, float)) and not isinstance(obj, bool):
        return WeylElement.const(frac(str(obj)))
    out: dict = {}
    try:
        for k, l, c in obj:
            out[(int(k), int(l))] = out.get((int(k), int(l)), 0) + frac(c)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad Weyl element {obj!r}") from exc
    return WeylElement(out)


def shift_to_json(x: ShiftOp, probe: int) -> dict:
    return {"columns": {str(n): {str(m): frac_str(c) for m, c in sorted(col.items())}
                        for n, col in x.columns(probe).items() if col},
            "probe": probe}


def shift_from_json(obj, alg: ShiftAlgebra) -> ShiftOp:
    if isinstance(obj, str):
        return parse_element(obj, alg)
    if isinstance(obj, dict) and "columns" in obj:
        try:
            return ShiftOp.from_columns({int(n): {int(m): frac(c) for m, c in col.items()}
                                         for n, col in obj["columns"].items()})
        except ValueError as exc:
            raise FormatError(str(exc)) from exc
    raise FormatError(f"bad shift operator {obj!r}")


def element_to_json(x, alg: EvaluationAlgebra):
    if isinstance(alg, WeylAlgebra):
        return weyl_to_json(x)
    if isinstance(alg, ShiftAlgebra):
        return shift_to_json(x, alg.probe)
    if isinstance(alg, ProductAlgebra):
        return [element_to_json(a, c) for a, c in zip(x, alg.components)]
    raise FormatError(f"no JSON form for backend {alg!r}")


def element_from_json(obj, alg: EvaluationAlgebra):
    if isinstance(alg, WeylAlgebra):
        return weyl_from_json(obj)
    if isinstance(alg, ShiftAlgebra):
        return shift_from_json(obj, alg)
    if isinstance(alg, ProductAlgebra):
        if isinstance(obj, str):
            return parse_element(obj, alg)
        if not isinstance(obj, list) or len(obj) != len(alg.components):
            raise FormatError(f"expected a list of {len(alg.components)} components")
        return ProductElement(element_from_json(o, c) for o, c in zip(obj, alg.components))
    raise FormatError(f"no JSON form for backend {alg!r}")


# --- witnesses -------------------------------------------------------------

def u_to_json(u) -> dict:
    return {str(k): frac_str(c) for k, c in enumerate(u) if c}


def u_from_json(obj) -> tuple[Fraction, ...]:
    if obj is None:
        return (Fraction(1),)
    if isinstance(obj, list):
        return tuple(frac(c) for c in obj)
    if isinstance(obj, dict):
        powers = {int(k): frac(c) for k, c in obj.items()}
        if any(k < 0 for k in powers):
            raise FormatError("negative power of v in u")
        top = max(powers, default=0)
        return tuple(powers.get(k, Fraction(0)) for k in range(top + 1))
    raise FormatError(f"bad polynomial in v: {obj!r}")


def witness_to_json(w: Witness) -> dict:
    return {"backend": w.backend.name,
            "x": [element_to_json(x, w.backend) for x in w.xs],
            "u": u_to_json(w.u)}


def witness_from_json(obj: dict, alg: EvaluationAlgebra) -> Witness:
    if not isinstance(obj, dict) or "x" not in obj:
        raise FormatError("an assignment needs an \"x\" list")
    if obj.get("backend", alg.name) != alg.name:
        raise FormatError(f"assignment is for backend {obj['backend']!r}, not {alg.name!r}")
    xs = tuple(element_from_json(x, alg) for x in obj["x"])
    return Witness(xs, u_from_json(obj.get("u")), alg)


# --- traces ----------------------------------------------------------------

def trace_from_json(obj: dict):
    """Inverse of ``ReductionTrace.to_json`` for the fields replay needs.

    Coefficient listings are kept in their JSON form; they document the
    reduction but are not needed to rebuild the witness.
    """
    from surjpoly.solver import ReductionTrace, Step

    steps = []
    for s in obj.get("steps", []):
        data = {k: v for k, v in s.items() if k not in ("kind", "n")}
        if "coefficient" in data:
            data["coefficient"] = frac(data["coefficient"])
        steps.append(Step(s["kind"], int(s["n"]), data))
    return ReductionTrace(steps)
