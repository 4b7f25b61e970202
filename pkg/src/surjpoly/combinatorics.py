"""Multi-index enumeration and multinomial scalars.

Multi-indices are plain tuples of ints; variable indices and word positions
are 1-based throughout the package, so ``b[j - 1]`` is the exponent attached
to ``X_j``.  Every enumeration is returned in lexicographically descending
order so that matrix layouts built from them are reproducible.
"""
from __future__ import annotations

import math
from typing import Sequence

MultiIndex = tuple[int, ...]
Perm = tuple[int, ...]


def compositions(n: int, r: int) -> list[MultiIndex]:
    """All ``b`` in N_0^n with ``sum(b) == r`` (the set B_r), lex descending."""
    if n < 1:
        raise ValueError(f"need at least one variable, got n={n}")
    if r < 0:
        raise ValueError(f"order must be nonnegative, got r={r}")
    return _bounded_compositions(n, r)


def _bounded_compositions(n: int, r: int) -> list[MultiIndex]:
    if n == 1:
        return [(r,)]
    out = []
    for first in range(r, -1, -1):
        for rest in _bounded_compositions(n - 1, r - first):
            out.append((first,) + rest)
    return out


def unit(j: int, n: int, scale: int = 1) -> MultiIndex:
    """``scale * e_j`` of length n."""
    e = [0] * n
    e[j - 1] = scale
    return tuple(e)


def add(b: Sequence[int], c: Sequence[int]) -> MultiIndex:
    return tuple(x + y for x, y in zip(b, c))


def sub(b: Sequence[int], c: Sequence[int]) -> MultiIndex:
    return tuple(x - y for x, y in zip(b, c))


def identity_perm(n: int) -> Perm:
    return tuple(range(1, n + 1))


def _fill(n: int, free: Sequence[int], values: Sequence[int]) -> MultiIndex:
    out = [0] * n
    for j, val in zip(free, values):
        out[j - 1] = val
    return tuple(out)


def d_set(t: int, i: int, n: int, sigma: Sequence[int] | None = None) -> list[MultiIndex]:
    """The set D_{t,i}: ``d`` with ``d_{s(1)} = ... = d_{s(i-1)} = 0`` and sum t.

    ``s`` is ``sigma`` (identity by default).  ``i`` may be ``n + 1``, in which
    case every entry is forced to zero.
    """
    if not 1 <= i <= n + 1:
        raise ValueError(f"index i={i} outside 1..{n + 1}")
    if t < 0:
        return []
    sigma = identity_perm(n) if sigma is None else tuple(sigma)
    free = sorted(sigma[i - 1:])
    if not free:
        return [(0,) * n] if t == 0 else []
    return sorted((_fill(n, free, vals) for vals in _bounded_compositions(len(free), t)),
                  reverse=True)


def c_set(sigma: Sequence[int], k: int, i: int) -> list[MultiIndex]:
    """The set C^sigma_{k,i}.

    Members vanish on ``sigma(1..i-1)``, are at least one at ``sigma(i)``
    and sum to k.
    """
    n = len(sigma)
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    out = [c for c in d_set(k, i, n, sigma) if c[sigma[i - 1] - 1] >= 1]
    return out


def split_d(d: Sequence[int], i: int) -> tuple[int, MultiIndex]:
    """Inverse of :func:`join_d`: ``d = s*e_i + d'`` with ``d'_i = 0``."""
    s = d[i - 1]
    rest = list(d)
    rest[i - 1] = 0
    return s, tuple(rest)


def join_d(s: int, d_rest: Sequence[int], i: int) -> MultiIndex:
    return add(unit(i, len(d_rest), s), d_rest)


def multinomial(total: int, parts: Sequence[int]) -> int:
    """``total! / prod(p!)``; zero unless the parts are nonnegative and sum to total."""
    if any(p < 0 for p in parts) or sum(parts) != total:
        return 0
    out = 1
    left = total
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


def multinomial_mu(sigma: Sequence[int], c: Sequence[int], i: int) -> int:
    """The scalar mu^sigma_{c,i} = (sum c choose c_{sigma(i)}, ..., c_{sigma(n)})."""
    if any(x < 0 for x in c):
        raise ValueError(f"multi-index has a negative entry: {tuple(c)}")
    tail = [c[sigma[j] - 1] for j in range(i - 1, len(sigma))]
    return math.factorial(sum(c)) // math.prod(math.factorial(x) for x in tail)


def binomial_convolution_holds(k: int, s: int, s_prime: int, t: int,
                               d: Sequence[int]) -> bool:
    """Check the binomial/multinomial convolution used when pushing V past a word.

    C(k-s, s')*C(k-s-s', t-s-s')*M(t-s-s'; d) == C(k-s, t-s)*M(t-s; s', d)
    where M is the multinomial coefficient.
    """
    lhs = (math.comb(k - s, s_prime) * math.comb(k - s - s_prime, t - s - s_prime)
           * multinomial(t - s - s_prime, d))
    rhs = math.comb(k - s, t - s) * multinomial(t - s, [s_prime, *d])
    return lhs == rhs
