"""Partially commutative polynomials: the free product of F<X_1..X_n> and F[U, V].

A basis of the free product is given by the unit and the alternating
monomials, i.e. products that alternate between nonempty words in the
``X_j`` and nonempty blocks ``U^k V^l``.  A :class:`PCPoly` stores a sparse
rational combination of such monomials, always in that normal form, so
equality of polynomials is equality of their term maps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, NamedTuple, Sequence, Union

from surjpoly import combinatorics as cb
from surjpoly import linsys


class XWord(NamedTuple):
    letters: tuple[int, ...]


class UVBlock(NamedTuple):
    u: int
    v: int


Segment = Union[XWord, UVBlock]
Monomial = tuple[Segment, ...]
Scalar = Union[int, Fraction]


def _seg_key(seg: Segment):
    if isinstance(seg, XWord):
        return (0, seg.letters)
    return (1, (seg.u, seg.v))


def monomial_degree(mono: Monomial) -> int:
    return sum(len(s.letters) if isinstance(s, XWord) else s.u + s.v for s in mono)


def monomial_key(mono: Monomial):
    return (monomial_degree(mono), tuple(_seg_key(s) for s in mono))


def _append(segs: list[Segment], seg: Segment) -> None:
    """Append with merging of like neighbours; empty blocks vanish."""
    if isinstance(seg, UVBlock) and seg.u == 0 and seg.v == 0:
        return
    if isinstance(seg, XWord) and not seg.letters:
        return
    if segs and type(segs[-1]) is type(seg):
        last = segs.pop()
        if isinstance(seg, XWord):
            segs.append(XWord(last.letters + seg.letters))
        else:
            segs.append(UVBlock(last.u + seg.u, last.v + seg.v))
    else:
        segs.append(seg)


def normalize_monomial(segs: Iterable[Segment]) -> Monomial:
    out: list[Segment] = []
    for seg in segs:
        _append(out, seg)
    return tuple(out)


def concat(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = list(a)
    for seg in b:
        _append(out, seg)
    return tuple(out)


@dataclass(frozen=True, eq=False)
class PCPoly:
    """Rational combination of alternating monomials in n noncommuting variables."""

    n: int
    terms: Mapping[Monomial, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, c in self.terms.items():
            c = Fraction(c)
            if c:
                clean[mono] = c
        object.__setattr__(self, "terms", clean)

    # constructors ---------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "PCPoly":
        return cls(n, {})

    @classmethod
    def const(cls, c: Scalar, n: int) -> "PCPoly":
        return cls(n, {(): Fraction(c)})

    @classmethod
    def x(cls, j: int, n: int) -> "PCPoly":
        if not 1 <= j <= n:
            raise ValueError(f"X{j} out of range for n={n}")
        return cls(n, {(XWord((j,)),): Fraction(1)})

    @classmethod
    def uv(cls, k: int, l: int, n: int) -> "PCPoly":
        return cls(n, {normalize_monomial([UVBlock(k, l)]): Fraction(1)})

    @classmethod
    def U(cls, n: int) -> "PCPoly":
        return cls.uv(1, 0, n)

    @classmethod
    def V(cls, n: int) -> "PCPoly":
        return cls.uv(0, 1, n)

    # arithmetic -----------------------------------------------------------
    def _coerce(self, other) -> "PCPoly":
        if isinstance(other, PCPoly):
            if other.n != self.n:
                raise ValueError(f"variable count mismatch: {self.n} vs {other.n}")
            return other
        if isinstance(other, (int, Fraction)):
            return PCPoly.const(other, self.n)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return PCPoly(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return PCPoly(self.n, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "PCPoly":
        c = Fraction(c)
        return PCPoly(self.n, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = concat(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return PCPoly(self.n, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = PCPoly.const(1, self.n)
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PCPoly.const(other, self.n)
        if not isinstance(other, PCPoly):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"PCPoly(n={self.n}, {render(self)!r})"

    def __str__(self):
        return render(self)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def u_degrees(self) -> set[int]:
        return {sum(s.u for s in m if isinstance(s, UVBlock)) for m in self.terms}

    def with_n(self, n: int) -> "PCPoly":
        """Same terms, declared in a larger variable count."""
        if any(j > n for m in self.terms for s in m if isinstance(s, XWord) for j in s.letters):
            raise ValueError(f"polynomial uses variables beyond X{n}")
        return PCPoly(n, self.terms)


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------

def _render_seg(seg: Segment) -> list[str]:
    if isinstance(seg, XWord):
        return [f"X{j}" for j in seg.letters]
    out = []
    for name, e in (("U", seg.u), ("V", seg.v)):
        if e == 1:
            out.append(name)
        elif e > 1:
            out.append(f"{name}^{e}")
    return out


def render_monomial(mono: Monomial) -> str:
    factors = [f for seg in mono for f in _render_seg(seg)]
    return "*".join(factors) if factors else "1"


def render_terms(items: Iterable[tuple[str, Fraction]]) -> str:
    """Join ``(monomial_text, coef)`` pairs; ``"1"`` is the unit monomial."""
    pieces = []
    for body, c in items:
        mag = abs(c)
        if body == "1":
            text = str(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{mag}*{body}"
        pieces.append((c < 0, text))
    if not pieces:
        return "0"
    neg, text = pieces[0]
    out = ("-" if neg else "") + text
    for neg, text in pieces[1:]:
        out += (" - " if neg else " + ") + text
    return out


def render(f: PCPoly) -> str:
    """Deterministic text form, e.g. ``3/2*V*X1*X2 - 3/2*X1*V*X2 + U^2*V*X1``."""
    monos = sorted(f.terms, key=monomial_key)
    return render_terms((render_monomial(m), f.terms[m]) for m in monos)


# ---------------------------------------------------------------------------
# brackets and bracket powers
# ---------------------------------------------------------------------------

def commutator(f: PCPoly, g: PCPoly) -> PCPoly:
    return f * g - g * f


def ad_pow(f: PCPoly, g: PCPoly, k: int) -> PCPoly:
    """``[f, g]_k = [f, [f, ..., [f, g]]]`` with k copies of f; k = 0 gives g."""
    if k < 0:
        raise ValueError("bracket depth must be nonnegative")
    for _ in range(k):
        g = commutator(f, g)
    return g


def x_power(j: int, b: Sequence[int]) -> PCPoly:
    """``X_j^b = [V, X_j]_{b_j}``."""
    n = len(b)
    return ad_pow(PCPoly.V(n), PCPoly.x(j, n), b[j - 1])


def x_power_marked(j: int, b: Sequence[int]) -> PCPoly:
    """``[U, X_j^b]``."""
    n = len(b)
    return commutator(PCPoly.U(n), x_power(j, b))


def _check_word(word: Sequence[int], n: int) -> None:
    if any(not 1 <= j <= n for j in word):
        raise ValueError(f"word {tuple(word)} uses variables outside 1..{n}")


def word_power(word: Sequence[int], b: Sequence[int]) -> PCPoly:
    """``(X_{j1} ... X_{jm})^b``: product of the per-letter bracket powers."""
    n = len(b)
    _check_word(word, n)
    out = PCPoly.const(1, n)
    for j in word:
        out = out * x_power(j, b)
    return out


def word_power_marked(word: Sequence[int], b: Sequence[int], marked: int) -> PCPoly:
    """Like :func:`word_power`, with the factor of variable ``marked`` wrapped in ``[U, .]``."""
    n = len(b)
    _check_word(word, n)
    if marked not in word:
        raise ValueError(f"marked variable X{marked} does not occur in word {tuple(word)}")
    out = PCPoly.const(1, n)
    for j in word:
        out = out * (x_power_marked(j, b) if j == marked else x_power(j, b))
    return out


# ---------------------------------------------------------------------------
# the substitution U -> V^k
# ---------------------------------------------------------------------------

def pi_k(f: PCPoly, k: int) -> PCPoly:
    """Homomorphism fixing every X_j and V and sending U to V^k (U to 1 when k = 0)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out: dict[Monomial, Fraction] = {}
    for mono, c in f.terms.items():
        segs = [UVBlock(0, s.u * k + s.v) if isinstance(s, UVBlock) else s for s in mono]
        m = normalize_monomial(segs)
        out[m] = out.get(m, 0) + c
    return PCPoly(f.n, out)


# ---------------------------------------------------------------------------
# admissible polynomials
# ---------------------------------------------------------------------------

ONE = "one"
TWO = "two"


def all_perms(n: int) -> list[cb.Perm]:
    return list(permutations(range(1, n + 1)))


@dataclass(frozen=True, eq=False)
class AdmissiblePoly:
    """Coefficients on the generators of a fixed order r.

    Kind one keys are ``(sigma, b)`` for ``(X_sigma(1)...X_sigma(n))^b``;
    kind two keys are ``(sigma, b, i)`` for the same word with the factor
    at position i (variable ``sigma(i)``) wrapped in ``[U, .]``.  Zero
    coefficients are not stored.
    """

    n: int
    r: int
    kind: str
    coeffs: Mapping[tuple, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (ONE, TWO):
            raise ValueError(f"kind must be 'one' or 'two', got {self.kind!r}")
        if self.n < 1 or self.r < 0:
            raise ValueError(f"bad shape n={self.n}, r={self.r}")
        clean = {}
        for key, c in self.coeffs.items():
            key = tuple(tuple(x) if isinstance(x, (list, tuple)) else x for x in key)
            self._check_key(key)
            c = Fraction(c)
            if c:
                clean[key] = c
        object.__setattr__(self, "coeffs", clean)

    def _check_key(self, key):
        if len(key) != (2 if self.kind == ONE else 3):
            raise ValueError(f"malformed key {key} for kind {self.kind}")
        sigma, b = key[0], key[1]
        if sorted(sigma) != list(range(1, self.n + 1)):
            raise ValueError(f"{sigma} is not a permutation of 1..{self.n}")
        if len(b) != self.n or min(b) < 0 or sum(b) != self.r:
            raise ValueError(f"{b} is not in B_{self.r} for n={self.n}")
        if self.kind == TWO and not 1 <= key[2] <= self.n:
            raise ValueError(f"position {key[2]} outside 1..{self.n}")

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, AdmissiblePoly):
            return NotImplemented
        return (self.n, self.r, self.kind, self.coeffs) == (other.n, other.r, other.kind, other.coeffs)

    def __hash__(self):
        return hash((self.n, self.r, self.kind, frozenset(self.coeffs.items())))

    def generators(self) -> list[tuple]:
        return generator_keys(self.n, self.r, self.kind)

    def expand(self) -> PCPoly:
        return expand(self)


def generator_keys(n: int, r: int, kind: str) -> list[tuple]:
    perms = all_perms(n)
    bs = cb.compositions(n, r)
    if kind == ONE:
        return [(s, b) for s in perms for b in bs]
    return [(s, b, i) for s in perms for b in bs for i in range(1, n + 1)]


def generator(n: int, key: tuple) -> PCPoly:
    if len(key) == 2:
        return word_power(key[0], key[1])
    sigma, b, i = key
    return word_power_marked(sigma, b, sigma[i - 1])


def expand(f: AdmissiblePoly) -> PCPoly:
    """The defining sum of generators, in normal form."""
    out = PCPoly.zero(f.n)
    for key, c in f.coeffs.items():
        out = out + generator(f.n, key).scale(c)
    return out


def multilinear(n: int, coeffs: Mapping[Sequence[int], Scalar]) -> AdmissiblePoly:
    """Order-0 type-one polynomial ``sum lambda_sigma X_sigma(1)...X_sigma(n)``."""
    return AdmissiblePoly(n, 0, ONE, {(tuple(s), (0,) * n): c for s, c in coeffs.items()})


def p_poly(sigma: Sequence[int], b: Sequence[int], i: int, t: int) -> AdmissiblePoly:
    """``sum_{c in C^sigma_{t,i}} mu^sigma_{c,i} (X_sigma)^{b+c}`` as a type-one polynomial."""
    if t < 1:
        raise ValueError("t must be positive")
    sigma, n = tuple(sigma), len(sigma)
    coeffs = {(sigma, cb.add(b, c)): cb.multinomial_mu(sigma, c, i) for c in cb.c_set(sigma, t, i)}
    return AdmissiblePoly(n, sum(b) + t, ONE, coeffs)


def _basis_matrix(polys: Sequence[PCPoly]) -> tuple[list[list[Fraction]], list[Monomial]]:
    monos = sorted({m for p in polys for m in p.terms}, key=monomial_key)
    rows = [[p.coefficient(m) for p in polys] for m in monos]
    return rows, monos


def independence_rank(polys: Sequence[AdmissiblePoly | PCPoly]) -> int:
    """Rank over Q of the polynomials' coefficient vectors in the monomial basis."""
    expanded = [p.expand() if isinstance(p, AdmissiblePoly) else p for p in polys]
    if len({p.n for p in expanded}) > 1:
        raise ValueError("polynomials have different variable counts")
    rows, _ = _basis_matrix(expanded)
    return linsys.rank(rows) if rows else 0


def generator_family(n: int, r: int, kind: str) -> list[PCPoly]:
    return [generator(n, key) for key in generator_keys(n, r, kind)]


def as_admissible(f: PCPoly, n: int, r: int, kind: str) -> AdmissiblePoly | None:
    """Coefficients of f on the order-r generators of the given kind, or None.

    Solves an exact linear system against the generator expansions; the
    generators are independent, so a solution is unique when it exists.
    """
    if f.n != n:
        return None
    keys = generator_keys(n, r, kind)
    gens = [generator(n, key) for key in keys]
    monos = sorted({m for g in gens for m in g.terms} | set(f.terms), key=monomial_key)
    matrix = [[g.coefficient(m) for g in gens] for m in monos]
    rhs = [f.coefficient(m) for m in monos]
    sol = linsys.solve(matrix, rhs)
    if sol is None:
        return None
    return AdmissiblePoly(n, r, kind, {key: c for key, c in zip(keys, sol) if c})
