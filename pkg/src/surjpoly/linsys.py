"""Exact linear algebra and the multinomial recurrence system.

The unknowns ``m^i_{b'}`` are indexed by ``(b', i)`` with ``b'`` in B_r.
For every ``k >= 1`` and ``b`` in B_{r+k} there is one equation

    sum_i sum_{c in C^sigma_{k,i}} mu^sigma_{c,i} * m^i_{b-c} = 0,

where unknowns with ``b - c`` outside B_r are identically zero and are
dropped from the row.  The kernel of the stacked system is expected to be
trivial once ``k`` runs up to ``n``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Iterable, Mapping, Sequence

import sympy

from surjpoly import combinatorics as cb

Number = int | Fraction


# ---------------------------------------------------------------------------
# fraction-free elimination
# ---------------------------------------------------------------------------

def _integer_rows(matrix: Sequence[Sequence[Number]]) -> list[list[int]]:
    rows = []
    for row in matrix:
        row = [Fraction(x) for x in row]
        scale = lcm(1, *(x.denominator for x in row))
        rows.append([int(x * scale) for x in row])
    return rows


def echelon(matrix: Sequence[Sequence[Number]]) -> tuple[list[list[int]], list[int]]:
    """Bareiss fraction-free row echelon form.

    Rows are first scaled to integers (row scaling does not change the row
    space).  Returns the nonzero echelon rows and their pivot columns.
    """
    rows = _integer_rows(matrix)
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    prev = 1
    top = 0
    for col in range(ncols):
        pivot_row = next((r for r in range(top, len(rows)) if rows[r][col] != 0), None)
        if pivot_row is None:
            continue
        rows[top], rows[pivot_row] = rows[pivot_row], rows[top]
        p = rows[top][col]
        for r in range(top + 1, len(rows)):
            a = rows[r][col]
            new = []
            for j in range(ncols):
                q, rem = divmod(p * rows[r][j] - a * rows[top][j], prev)
                assert rem == 0, "non-exact Bareiss division"
                new.append(q)
            rows[r] = new
        prev = p
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def rank(matrix: Sequence[Sequence[Number]]) -> int:
    return len(echelon(matrix)[1])


def _back_substitute(rows: list[list[int]], pivots: list[int], ncols: int,
                     fixed: Mapping[int, Fraction], rhs: Sequence[Fraction] | None = None
                     ) -> list[Fraction]:
    x = [Fraction(0)] * ncols
    for col, val in fixed.items():
        x[col] = val
    for r in range(len(pivots) - 1, -1, -1):
        col = pivots[r]
        acc = Fraction(rhs[r]) if rhs is not None else Fraction(0)
        for j in range(col + 1, ncols):
            if rows[r][j]:
                acc -= rows[r][j] * x[j]
        x[col] = acc / rows[r][col]
    return x


def nullspace(matrix: Sequence[Sequence[Number]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the rational kernel, one vector per free column.

    ``ncols`` is needed when the matrix has no rows.
    """
    if ncols is None:
        ncols = len(matrix[0])
    rows, pivots = echelon(matrix) if matrix else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    return [_back_substitute(rows, pivots, ncols, {f: Fraction(1)}) for f in free]


def solve(matrix: Sequence[Sequence[Number]], rhs: Sequence[Number]) -> list[Fraction] | None:
    """A solution of ``matrix @ x == rhs`` (free variables set to 0), or None."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    rows, pivots = echelon(aug)
    if pivots and pivots[-1] == ncols:
        return None
    body = [row[:ncols] for row in rows]
    col_rhs = [Fraction(row[ncols]) for row in rows]
    return _back_substitute(body, pivots, ncols, {}, col_rhs)


# ---------------------------------------------------------------------------
# the recurrence system
# ---------------------------------------------------------------------------

UnknownIndex = tuple[cb.MultiIndex, int]


def equation_terms(sigma: Sequence[int], k: int, b: Sequence[int]
                   ) -> list[tuple[int, cb.MultiIndex, int]]:
    """All ``(mu, b - c, i)`` of the order-k equation at ``b``; ``b`` may be any integer vector.

    Nothing is filtered, so out-of-range unknowns (which are zero) appear too.
    """
    n = len(sigma)
    out = []
    for i in range(1, n + 1):
        for c in cb.c_set(sigma, k, i):
            out.append((cb.multinomial_mu(sigma, c, i), cb.sub(b, c), i))
    return out


@dataclass(frozen=True)
class SystemMatrix:
    sigma: cb.Perm
    n: int
    r: int
    k_max: int
    rows: list[tuple[int, cb.MultiIndex]]
    columns: list[UnknownIndex]
    entries: list[list[int]] = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.columns)

    def rank(self) -> int:
        return rank(self.entries) if self.entries else 0

    def kernel(self) -> list[list[Fraction]]:
        return nullspace(self.entries, len(self.columns))

    def apply(self, values: Mapping[UnknownIndex, Number]) -> dict[tuple[int, cb.MultiIndex], Fraction]:
        """Row residuals for an assignment of the unknowns (missing ones are zero)."""
        vec = [Fraction(values.get(col, 0)) for col in self.columns]
        out = {}
        for label, row in zip(self.rows, self.entries):
            out[label] = sum((a * x for a, x in zip(row, vec) if a), Fraction(0))
        return out


def unknowns(n: int, r: int) -> list[UnknownIndex]:
    """Column layout: variable index outer, ``b'`` inner (lex descending)."""
    return [(bp, i) for i in range(1, n + 1) for bp in cb.compositions(n, r)]


def gen_system(sigma: Sequence[int], n: int, r: int, k_max: int) -> SystemMatrix:
    sigma = tuple(sigma)
    if len(sigma) != n or sorted(sigma) != list(range(1, n + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{n}")
    columns = unknowns(n, r)
    where = {col: idx for idx, col in enumerate(columns)}
    rows, entries = [], []
    for k in range(1, k_max + 1):
        for b in cb.compositions(n, r + k):
            row = [0] * len(columns)
            for mu, bp, i in equation_terms(sigma, k, b):
                if (bp, i) in where:
                    row[where[(bp, i)]] += mu
            rows.append((k, b))
            entries.append(row)
    return SystemMatrix(sigma, n, r, k_max, rows, columns, entries)


def render_unknown(bp: Sequence[int], i: int) -> str:
    return f"m^{i}_({','.join(str(x) for x in bp)})"


def render_equation(terms: Iterable[tuple[Number, Sequence[int], int]]) -> str:
    """``[(coef, b', i), ...]`` as ``m^1_(1,0) + 2*m^2_(0,1) = 0``."""
    parts = []
    for coef, bp, i in terms:
        if coef == 0:
            continue
        mag = abs(coef)
        body = render_unknown(bp, i) if mag == 1 else f"{mag}*{render_unknown(bp, i)}"
        parts.append(("-", body) if coef < 0 else ("+", body))
    if not parts:
        return "0 = 0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text + " = 0"


def combine_terms(*weighted: tuple[Number, Iterable[tuple[Number, Sequence[int], int]]]
                  ) -> list[tuple[Fraction, cb.MultiIndex, int]]:
    """Linear combination of equations given as term lists; first-seen unknown order."""
    acc: dict[UnknownIndex, Fraction] = {}
    for weight, terms in weighted:
        for coef, bp, i in terms:
            key = (tuple(bp), i)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(weight) * coef
    return [(c, bp, i) for (bp, i), c in acc.items() if c != 0]


def worked_example_layout(r: int = 1) -> dict[str, list[str]]:
    """Order-1 and order-2 equations for two variables, aligned for subtraction.

    The order-1 equation at ``b - e_2`` is set against the order-2 equation at
    ``b`` for every ``b`` in B_{r+2}; the order-1 block therefore contains one
    equation whose unknowns are all out of range.
    """
    sigma = (1, 2)
    k1, k2, diff = [], [], []
    for b in cb.compositions(2, r + 2):
        low = equation_terms(sigma, 1, cb.sub(b, (0, 1)))
        high = equation_terms(sigma, 2, b)
        k1.append(render_equation(low))
        k2.append(render_equation(high))
        diff.append(render_equation(combine_terms((1, high), (-1, low))))
    return {"k=1": k1, "k=2": k2, "difference": diff}


# ---------------------------------------------------------------------------
# recurrence elimination on commutative operator polynomials
# ---------------------------------------------------------------------------

def shift_symbols(n: int) -> tuple[sympy.Symbol, ...]:
    return sympy.symbols(f"W1:{n + 1}")


def recurrence_polys(sigma: Sequence[int], k: int) -> dict[int, sympy.Poly]:
    """Per-unknown-family operator polynomials of the order-k equation.

    Family i gets ``sum_{c in C^sigma_{k,i}} mu * W^c``; for sigma = id its
    degree in ``W_i`` is exactly k.
    """
    n = len(sigma)
    W = shift_symbols(n)
    out = {}
    for i in range(1, n + 1):
        expr = sum(cb.multinomial_mu(sigma, c, i) * sympy.prod([w**e for w, e in zip(W, c)])
                   for c in cb.c_set(sigma, k, i))
        out[i] = sympy.Poly(expr, *W)
    return out


def recurrence_equation(poly: sympy.Poly, i: int, b: Sequence[int]
                        ) -> list[tuple[Fraction, cb.MultiIndex, int]]:
    """Equation obtained by applying ``poly(shifts)`` to the family-i symbol at ``b``.

    A monomial ``W^e`` sends the unknown index ``b`` to ``b - e``.
    """
    out = []
    for exps, coef in sorted(poly.terms(), reverse=True):
        out.append((Fraction(int(coef.p), int(coef.q)), cb.sub(b, exps), i))
    return out


class DegreeError(ValueError):
    pass


def eliminate_recurrence_pair(family: Mapping[tuple[int, int], sympy.Poly],
                              indices: Sequence[int], orders: Sequence[int]
                              ) -> dict[tuple[int, int], sympy.Poly]:
    """One cross-multiplication step removing the last family index.

    ``family[(i, j)]`` is the polynomial in ``W_i..W_n`` multiplying the
    family-i symbol in recurrence j (j = 1..l).  Recurrence j has order
    ``orders[j-1]`` with ``orders`` strictly decreasing.  For ``j < l``

        g_ij = f_{i_l, l} * f_ij - f_{i_l, j} * f_il

    is returned for every index but the last one.
    """
    l = len(orders)
    if len(indices) != l or l < 2:
        raise ValueError("need matching indices and orders, at least two of each")
    if any(a <= b for a, b in zip(orders, orders[1:])):
        raise DegreeError(f"orders must be strictly decreasing, got {list(orders)}")
    if list(indices) != sorted(set(indices)):
        raise ValueError("indices must be strictly increasing")
    sample = next(iter(family.values()))
    W = sample.gens
    last = indices[-1]
    for i in indices[:-1]:
        for j in range(1, l + 1):
            poly = family[(i, j)]
            if poly.is_zero or poly.degree(W[i - 1]) != orders[j - 1]:
                raise DegreeError(f"f_{i}{j} must have degree {orders[j - 1]} in W{i}")
        if any(family[(last, j)].degree(W[i - 1]) > 0 for j in range(1, l + 1)):
            raise DegreeError(f"the pivot family f_{last}* must not involve W{i}")
    pivot = family[(last, l)]
    if pivot.is_zero:
        raise DegreeError(f"pivot f_{last}{l} vanishes")
    out = {}
    for j in range(1, l):
        for i in indices:
            g = pivot * family[(i, j)] - family[(last, j)] * family[(i, l)]
            if i == last:
                assert g.is_zero
                continue
            assert g.degree(W[i - 1]) == orders[j - 1]
            out[(i, j)] = g
    return out


def reduce_recurrences(family: Mapping[tuple[int, int], sympy.Poly],
                       indices: Sequence[int], orders: Sequence[int]) -> sympy.Poly:
    """Eliminate repeatedly until a single recurrence for the first index is left."""
    indices, orders = list(indices), list(orders)
    family = dict(family)
    while len(indices) > 1:
        family = eliminate_recurrence_pair(family, indices, orders)
        indices.pop()
        orders.pop()
    return family[(indices[0], 1)]
