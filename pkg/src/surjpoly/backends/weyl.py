"""The first Weyl algebra A_1(Q): generators v, w with vw - wv = 1.

Elements are kept in normal order, as combinations of ``v^k w^l``.  Think
of v as d/dt and w as multiplication by t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from surjpoly.backends.base import EvaluationAlgebra
from surjpoly.pcpoly import render_terms


@dataclass(frozen=True, eq=False)
class WeylElement:
    terms: Mapping[tuple[int, int], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (k, l), c in self.terms.items():
            if k < 0 or l < 0:
                raise ValueError(f"negative exponent in v^{k} w^{l}")
            c = Fraction(c)
            if c:
                clean[(k, l)] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def const(cls, c) -> "WeylElement":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, k: int, l: int, c=1) -> "WeylElement":
        return cls({(k, l): c})

    def _coerce(self, other):
        if isinstance(other, WeylElement):
            return other
        if isinstance(other, (int, Fraction)):
            return WeylElement.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({key: -c for key, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return WeylElement({key: c * x for key, x in self.terms.items()})
        if not isinstance(other, WeylElement):
            return NotImplemented
        return weyl_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = WeylElement.const(1)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def degree(self) -> int:
        return max((k + l for k, l in self.terms), default=-1)

    def __repr__(self):
        return f"WeylElement({render_weyl(self)!r})"

    def __str__(self):
        return render_weyl(self)


def reorder_coefficient(b: int, c: int, j: int) -> int:
    """Coefficient of ``v^(c-j) w^(b-j)`` in ``w^b v^c``."""
    return (-1) ** j * math.factorial(j) * math.comb(b, j) * math.comb(c, j)


def weyl_mul(x: WeylElement, y: WeylElement) -> WeylElement:
    """Normal-ordered product: (v^a w^b)(v^c w^d) = v^a (w^b v^c) w^d."""
    out: dict[tuple[int, int], Fraction] = {}
    for (a, b), s in x.terms.items():
        for (c, d), t in y.terms.items():
            st = s * t
            for j in range(min(b, c) + 1):
                key = (a + c - j, b - j + d)
                out[key] = out.get(key, 0) + st * reorder_coefficient(b, c, j)
    return WeylElement(out)


def weyl_ad_v(y: WeylElement) -> WeylElement:
    """[v, v^k w^l] = l v^k w^(l-1)."""
    return WeylElement({(k, l - 1): l * c for (k, l), c in y.terms.items() if l > 0})


def weyl_solve_inner(y: WeylElement, k: int = 1) -> WeylElement:
    """Integrate k times in w: v^a w^b -> v^a w^(b+1) / (b+1)."""
    if k < 0:
        raise ValueError("depth must be nonnegative")
    for _ in range(k):
        y = WeylElement({(a, b + 1): c / (b + 1) for (a, b), c in y.terms.items()})
    return y


def render_weyl(x: WeylElement) -> str:
    def body(k, l):
        parts = []
        for name, e in (("v", k), ("w", l)):
            if e == 1:
                parts.append(name)
            elif e > 1:
                parts.append(f"{name}^{e}")
        return "*".join(parts) if parts else "1"

    keys = sorted(x.terms, key=lambda kl: (-(kl[0] + kl[1]), -kl[0]))
    return render_terms((body(k, l), x.terms[(k, l)]) for k, l in keys)


class WeylAlgebra(EvaluationAlgebra):
    name = "weyl"

    def one(self):
        return WeylElement.const(1)

    @property
    def v(self):
        return WeylElement.monomial(1, 0)

    @property
    def w(self):
        return WeylElement.monomial(0, 1)

    def ad_v(self, x):
        return weyl_ad_v(x)

    def solve_inner_1(self, y):
        return weyl_solve_inner(y, 1)

    def solve_inner(self, y, k):
        return weyl_solve_inner(y, k)

    def equal(self, a, b):
        return a == b

    def render(self, x) -> str:
        return render_weyl(x)

    def __repr__(self):
        return "WeylAlgebra()"
