"""Common contract for algebras with a distinguished element v."""
from __future__ import annotations

import abc
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from surjpoly.pcpoly import PCPoly, XWord


class EvaluationAlgebra(abc.ABC):
    """A unital Q-algebra whose elements support ``+``, ``-`` and ``*``.

    Subclasses fix the distinguished element ``v`` and know how to invert
    the inner derivation ``x -> [v, x]``.  Scalars act through ``*`` with
    ``int`` or ``Fraction`` on either side.
    """

    name: str = "abstract"

    @abc.abstractmethod
    def one(self) -> Any: ...

    @property
    @abc.abstractmethod
    def v(self) -> Any: ...

    @abc.abstractmethod
    def solve_inner_1(self, y: Any) -> Any:
        """Some x with ``[v, x] = y``."""

    @abc.abstractmethod
    def equal(self, a: Any, b: Any) -> bool: ...

    def zero(self) -> Any:
        return self.one() * 0

    def scalar(self, c) -> Any:
        return self.one() * Fraction(c)

    def ad_v(self, x: Any) -> Any:
        v = self.v
        return v * x - x * v

    def ad_v_pow(self, x: Any, k: int) -> Any:
        for _ in range(k):
            x = self.ad_v(x)
        return x

    def solve_inner(self, y: Any, k: int) -> Any:
        """Some x with ``[v, ..., v, x] = y`` (k brackets); k = 0 returns y."""
        if k < 0:
            raise ValueError("depth must be nonnegative")
        for _ in range(k):
            y = self.solve_inner_1(y)
        return y

    def z(self, k: int) -> Any:
        """An element z_k with k-fold bracket against v equal to 1."""
        return self.solve_inner(self.one(), k)

    def poly_in_v(self, coeffs: Sequence) -> Any:
        out = self.zero()
        power = self.one()
        for c in coeffs:
            if c:
                out = out + power * Fraction(c)
            power = power * self.v
        return out


def v_power_coeffs(k: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(int(j == k)) for j in range(k + 1))


@dataclass(frozen=True)
class Witness:
    """An assignment X_i -> xs[i-1], U -> u(v), V -> v in ``backend``.

    ``u`` is the coefficient list of a polynomial in v (constant term
    first), so it commutes with v by construction.
    """

    xs: tuple
    u: tuple[Fraction, ...]
    backend: EvaluationAlgebra

    @property
    def n(self) -> int:
        return len(self.xs)

    def u_element(self):
        return self.backend.poly_in_v(self.u)


def evaluate(f: PCPoly, witness: Witness):
    """Image of f under the homomorphism X_i -> x_i, U -> u, V -> v."""
    if f.n != witness.n:
        raise ValueError(f"polynomial has {f.n} variables, witness assigns {witness.n}")
    alg = witness.backend
    u = witness.u_element()
    v = alg.v
    upow = [alg.one()]
    vpow = [alg.one()]

    def power(cache, base, e):
        while len(cache) <= e:
            cache.append(cache[-1] * base)
        return cache[e]

    total = alg.zero()
    for mono, c in f.terms.items():
        term = None
        for seg in mono:
            if isinstance(seg, XWord):
                factors = [witness.xs[j - 1] for j in seg.letters]
            else:
                factors = []
                if seg.u:
                    factors.append(power(upow, u, seg.u))
                if seg.v:
                    factors.append(power(vpow, v, seg.v))
            for x in factors:
                term = x if term is None else term * x
        if term is None:
            term = alg.one()
        total = total + term * c
    return total
