"""Exhaustive checkers for the polynomial identities behind the solver.

Each checker yields ``(label, ok)`` pairs, one per instance, comparing two
independently built :class:`PCPoly` values for exact equality.  The
labels follow the order in which the results appear in the construction:

* ``4.3``: the type-one step, rewriting the substituted polynomial g as a
  type-two polynomial in one fewer variable (and its U -> 1 image);
* ``4.4``: ``pi_k([U, X_i^b]) = sum_s C(k,s) X_i^(b + s e_i) V^(k-s)``;
* ``4.5``: pushing ``V^(k-s)`` to the right past ``(X_(i+1) ... X_n)^b``;
* ``4.6``: ``pi_k`` of a marked word power equals ``sum_t C(k,t) P_t V^(k-t)``;
* ``bin``: the binomial/multinomial convolution used inside 4.5.
"""
from __future__ import annotations

import itertools
import math
from typing import Callable, Iterator

from surjpoly import combinatorics as cb
from surjpoly.pcpoly import (
    PCPoly,
    all_perms,
    p_poly,
    pi_k,
    word_power,
    word_power_marked,
    x_power,
    x_power_marked,
)

Instance = tuple[str, bool]


def _indices_up_to(n: int, r: int):
    for total in range(r + 1):
        yield from cb.compositions(n, total)


def check_pi_marked_power(n: int, r: int, kmax: int) -> Iterator[Instance]:
    for b in _indices_up_to(n, r):
        V = PCPoly.V(n)
        for j in range(1, n + 1):
            for k in range(1, kmax + 1):
                lhs = pi_k(x_power_marked(j, b), k)
                rhs = PCPoly.zero(n)
                for s in range(1, k + 1):
                    rhs = rhs + (x_power(j, cb.add(b, cb.unit(j, n, s))) * V ** (k - s)).scale(
                        math.comb(k, s))
                yield f"j={j} b={b} k={k}", lhs == rhs


def v_past_word_rhs(n: int, i: int, b, k: int, s: int) -> PCPoly:
    """Right-hand side of the V-pushing identity for the word X_(i+1) ... X_n."""
    V = PCPoly.V(n)
    word = tuple(range(i + 1, n + 1))
    out = PCPoly.zero(n)
    for t in range(s, k + 1):
        outer = math.comb(k - s, t - s)
        for d in cb.d_set(t - s, i + 1, n):
            coef = outer * cb.multinomial(t - s, d[i:])
            out = out + (word_power(word, cb.add(b, d)) * V ** (k - t)).scale(coef)
    return out


def check_v_past_word(n: int, r: int, kmax: int) -> Iterator[Instance]:
    V = PCPoly.V(n)
    for i in range(n):
        word = tuple(range(i + 1, n + 1))
        for b in _indices_up_to(n, r):
            for k in range(1, kmax + 1):
                for s in range(1, k + 1):
                    lhs = V ** (k - s) * word_power(word, b)
                    yield f"i={i} b={b} k={k} s={s}", lhs == v_past_word_rhs(n, i, b, k, s)


def check_marked_word(n: int, r: int, kmax: int) -> Iterator[Instance]:
    V = PCPoly.V(n)
    for sigma in all_perms(n):
        for b in _indices_up_to(n, r):
            for i in range(1, n + 1):
                marked = word_power_marked(sigma, b, sigma[i - 1])
                for k in range(1, kmax + 1):
                    lhs = pi_k(marked, k)
                    rhs = PCPoly.zero(n)
                    for t in range(1, k + 1):
                        rhs = rhs + (p_poly(sigma, b, i, t).expand() * V ** (k - t)).scale(
                            math.comb(k, t))
                    yield f"sigma={sigma} b={b} i={i} k={k}", lhs == rhs


def check_type_one_step(n: int, r: int, kmax: int = 0) -> Iterator[Instance]:
    """The rewriting of g is linear in the coefficients, so a basis suffices.

    Zero-sum coefficient rows are spanned by ``e_j1 - e_j2``; arbitrary rows
    by the unit vectors ``e_j``.  ``kmax`` is unused (kept for a uniform
    signature).
    """
    from surjpoly.solver import pi0_coefficients, substitute_xn, type_two_from_g

    if n < 2:
        return
    for k in range(r + 1):
        for tau in all_perms(n - 1):
            for short in cb.compositions(n - 1, r - k):
                b = short + (k,)
                for j in range(1, n + 1):
                    lam = {(tau, b, j): 1}
                    g = substitute_xn(lam, k, n)
                    ok = pi_k(g, 0) == pi0_coefficients(lam, k, n, r).expand()
                    ok = ok and g.u_degrees() == {1}
                    yield f"unit tau={tau} b={b} j={j}", ok
                for j1, j2 in itertools.combinations(range(1, n + 1), 2):
                    lam = {(tau, b, j1): 1, (tau, b, j2): -1}
                    g = substitute_xn(lam, k, n)
                    two = type_two_from_g(lam, k, n, r)
                    ok = bool(two) and two.expand() == g and not pi_k(g, 0)
                    yield f"zero-sum tau={tau} b={b} j={j1},{j2}", ok


def check_binomial(n: int, r: int, kmax: int) -> Iterator[Instance]:
    """All k <= kmax + r, tails of length below n."""
    for m in range(n):
        for k in range(1, kmax + r + 1):
            for s in range(1, k + 1):
                for sp in range(k - s + 1):
                    for t in range(s + sp, k + 1):
                        for d in (cb.compositions(m, t - s - sp) if m else [()]):
                            if not m and t - s - sp:
                                continue
                            yield (f"k={k} s={s} s'={sp} t={t} d={d}",
                                   cb.binomial_convolution_holds(k, s, sp, t, d))


CHECKERS: dict[str, Callable[[int, int, int], Iterator[Instance]]] = {
    "4.3": check_type_one_step,
    "4.4": check_pi_marked_power,
    "4.5": check_v_past_word,
    "4.6": check_marked_word,
    "bin": check_binomial,
}

ALIASES = {
    "type-one-step": "4.3",
    "pi-marked-power": "4.4",
    "v-past-word": "4.5",
    "marked-word": "4.6",
    "binomial": "bin",
}


def checker(name: str) -> Callable[[int, int, int], Iterator[Instance]]:
    key = ALIASES.get(name, name)
    if key not in CHECKERS:
        raise KeyError(f"unknown identity {name!r}; choose from {sorted(CHECKERS) + sorted(ALIASES)}")
    return CHECKERS[key]
