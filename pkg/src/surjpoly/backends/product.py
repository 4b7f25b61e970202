"""Direct products of algebras; everything acts componentwise."""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from surjpoly.backends.base import EvaluationAlgebra


class ProductElement(tuple):
    """Tuple of component elements with componentwise arithmetic."""

    def __new__(cls, parts):
        return super().__new__(cls, parts)

    def _zip(self, other, op):
        if isinstance(other, (int, Fraction)):
            return ProductElement(op(a, other) for a in self)
        if not isinstance(other, ProductElement) or len(other) != len(self):
            return NotImplemented
        return ProductElement(op(a, b) for a, b in zip(self, other))

    def __add__(self, other):
        return self._zip(other, lambda a, b: a + b)

    def __radd__(self, other):
        return self._zip(other, lambda a, b: b + a)

    def __sub__(self, other):
        return self._zip(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._zip(other, lambda a, b: b - a)

    def __neg__(self):
        return ProductElement(-a for a in self)

    def __mul__(self, other):
        return self._zip(other, lambda a, b: a * b)

    def __rmul__(self, other):
        return self._zip(other, lambda a, b: b * a)

    def __pow__(self, e: int):
        return ProductElement(a ** e for a in self)

    def __repr__(self):
        return f"ProductElement({', '.join(map(repr, self))})"


class ProductAlgebra(EvaluationAlgebra):
    name = "product"

    def __init__(self, components: Sequence[EvaluationAlgebra]):
        if not components:
            raise ValueError("a product needs at least one component")
        self.components = tuple(components)

    def one(self):
        return ProductElement(c.one() for c in self.components)

    def zero(self):
        return ProductElement(c.zero() for c in self.components)

    @property
    def v(self):
        return ProductElement(c.v for c in self.components)

    def solve_inner_1(self, y):
        return ProductElement(c.solve_inner_1(a) for c, a in zip(self.components, y))

    def solve_inner(self, y, k):
        return ProductElement(c.solve_inner(a, k) for c, a in zip(self.components, y))

    def ad_v(self, x):
        return ProductElement(c.ad_v(a) for c, a in zip(self.components, x))

    def equal(self, a, b):
        return len(a) == len(b) == len(self.components) and all(
            c.equal(x, y) for c, x, y in zip(self.components, a, b))

    def render(self, x) -> str:
        return "\n".join(f"[{c.name} #{idx}]\n{c.render(a)}"
                         for idx, (c, a) in enumerate(zip(self.components, x), 1))

    def __repr__(self):
        return f"ProductAlgebra({list(self.components)!r})"


def product_backend(components: Sequence[EvaluationAlgebra]) -> ProductAlgebra:
    return ProductAlgebra(components)
