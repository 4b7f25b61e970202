"""Endomorphisms of a countable-dimensional space, given column by column.

The space has basis e_1, e_2, ...; an operator is known through its column
oracle ``n -> image of e_n`` (a finitely supported vector, stored as a
``{row: Fraction}`` dict).  Columns are computed on demand and memoized.
The distinguished element is the shift ``v(e_n) = e_{n+1}``.

Equality of two operators cannot be decided from finitely many columns; the
algebra compares them on a probe window of columns ``1..probe``.

Thread safety: each operator guards its memo with its own re-entrant lock,
so concurrent probes of the same column return the same dict.  Returned
column dicts are shared and must not be mutated.
"""
from __future__ import annotations

import threading
from fractions import Fraction
from typing import Callable, Mapping

from surjpoly.backends.base import EvaluationAlgebra

Column = dict[int, Fraction]

DEFAULT_PROBE = 20


def _axpy(acc: Column, a: Fraction, x: Mapping[int, Fraction], shift: int = 0) -> None:
    for row, val in x.items():
        key = row + shift
        new = acc.get(key, 0) + a * val
        if new:
            acc[key] = new
        else:
            acc.pop(key, None)


class ShiftOp:
    """Lazily evaluated operator.  ``v_power`` is set for the closed form ``v^k``."""

    def __init__(self, oracle: Callable[[int], Column], label: str = "op",
                 v_power: int | None = None):
        self._oracle = oracle
        self._cache: dict[int, Column] = {}
        self._lock = threading.RLock()
        self.label = label
        self.v_power = v_power
        self._parts: list[tuple[Fraction, ShiftOp]] | None = None

    # constructors ---------------------------------------------------------
    @classmethod
    def identity(cls) -> "ShiftOp":
        return cls.shift(0)

    @classmethod
    def shift(cls, k: int = 1) -> "ShiftOp":
        if k < 0:
            raise ValueError("shift power must be nonnegative")
        return cls(lambda n: {n + k: Fraction(1)}, label=f"v^{k}", v_power=k)

    @classmethod
    def zero(cls) -> "ShiftOp":
        return cls(lambda n: {}, label="0")

    @classmethod
    def from_columns(cls, columns: Mapping[int, Mapping[int, object]]) -> "ShiftOp":
        """Operator with the listed columns; every other column is zero."""
        table: dict[int, Column] = {}
        for n, col in columns.items():
            if int(n) < 1 or any(int(m) < 1 for m in col):
                raise ValueError("basis indices start at 1")
            table[int(n)] = {int(m): Fraction(x) for m, x in col.items() if Fraction(x)}
        return cls(lambda n: table.get(n, {}), label="columns")

    # access ---------------------------------------------------------------
    def column(self, n: int) -> Column:
        if n < 1:
            raise ValueError("basis indices start at 1")
        with self._lock:
            col = self._cache.get(n)
            if col is None:
                col = self._oracle(n)
                self._cache[n] = col
            return col

    def apply(self, vec: Mapping[int, Fraction]) -> Column:
        out: Column = {}
        if self.v_power is not None:
            _axpy(out, Fraction(1), vec, self.v_power)
            return out
        for m, a in vec.items():
            _axpy(out, a, self.column(m))
        return out

    def columns(self, probe: int = DEFAULT_PROBE) -> dict[int, Column]:
        return {n: self.column(n) for n in range(1, probe + 1)}

    def agrees_with(self, other: "ShiftOp", probe: int = DEFAULT_PROBE) -> bool:
        return all(self.column(n) == other.column(n) for n in range(1, probe + 1))

    # arithmetic -----------------------------------------------------------
    @classmethod
    def combination(cls, parts: list[tuple[Fraction, "ShiftOp"]]) -> "ShiftOp":
        """Flat linear combination; nested combinations are inlined."""
        flat: list[tuple[Fraction, ShiftOp]] = []
        for c, op in parts:
            if op._parts is not None:
                flat.extend((c * d, inner) for d, inner in op._parts)
            else:
                flat.append((c, op))
        flat = [(c, op) for c, op in flat if c]

        def oracle(n):
            out: Column = {}
            for c, op in flat:
                _axpy(out, c, op.column(n))
            return out
        node = cls(oracle, label="sum")
        node._parts = flat
        return node

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ShiftOp.identity() * other
        if not isinstance(other, ShiftOp):
            return NotImplemented
        return ShiftOp.combination([(Fraction(1), self), (Fraction(1), other)])

    __radd__ = __add__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ShiftOp.identity() * other
        if not isinstance(other, ShiftOp):
            return NotImplemented
        return ShiftOp.combination([(Fraction(1), self), (Fraction(-1), other)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ShiftOp.combination([(Fraction(other), self)])
        if not isinstance(other, ShiftOp):
            return NotImplemented
        if self.v_power is not None and other.v_power is not None:
            return ShiftOp.shift(self.v_power + other.v_power)
        a, b = self, other
        # right-to-left on basis vectors: (ab)(e_n) = a(b(e_n))
        return ShiftOp(lambda n: a.apply(b.column(n)), label="product")

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, e: int):
        out = ShiftOp.identity()
        for _ in range(e):
            out = out * self
        return out

    def __repr__(self):
        return f"ShiftOp({self.label})"


def shift_solve_inner_1(y: ShiftOp) -> ShiftOp:
    """x with [v, x] = y: x(e_1) = 0 and x(e_n) = -sum_{m<n} v^(n-1-m) y(e_m)."""

    def oracle(n):
        out: Column = {}
        for m in range(1, n):
            _axpy(out, Fraction(-1), y.column(m), n - 1 - m)
        return out
    return ShiftOp(oracle, label="inner")


class ShiftAlgebra(EvaluationAlgebra):
    name = "shift"

    def __init__(self, probe: int = DEFAULT_PROBE):
        if probe < 1:
            raise ValueError("probe window must contain at least one column")
        self.probe = probe

    def one(self):
        return ShiftOp.identity()

    def zero(self):
        return ShiftOp.zero()

    @property
    def v(self):
        return ShiftOp.shift(1)

    def solve_inner_1(self, y):
        return shift_solve_inner_1(y)

    def equal(self, a, b):
        return a.agrees_with(b, self.probe)

    def render(self, x: ShiftOp) -> str:
        lines = []
        for n, col in x.columns(self.probe).items():
            body = " + ".join(f"{c}*e{m}" for m, c in sorted(col.items())) or "0"
            lines.append(f"e{n} -> {body}")
        return "\n".join(lines)

    def __repr__(self):
        return f"ShiftAlgebra(probe={self.probe})"
