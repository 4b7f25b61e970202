"""Constructive witnesses for images of admissible polynomials.

Given a nonzero admissible polynomial f and a target a in an algebra whose
element v admits solutions of ``[v, ..., v, z_k] = 1``, :func:`solve`
returns x_1..x_n and u in F[v] with ``f(x_1, ..., x_n; u) = a``.

The reduction works on the number of noncommuting variables:

* one variable: a single bracket power, inverted directly;
* type one, n >= 2: factor out the last variable, substitute
  ``X_n -> z_k u`` (k the least bracket depth carried by X_n) and recurse
  on either the U-free part or on a type-two polynomial in n - 1 variables;
* type two: substitute ``U -> V^k`` for the least k giving a nonzero
  result, which is a type-one polynomial of order r + k in n variables.

The target is passed unchanged through every level; all the work is in
building the assignment on the way back up.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from surjpoly import combinatorics as cb
from surjpoly.backends.base import EvaluationAlgebra, Witness, evaluate, v_power_coeffs
from surjpoly.pcpoly import ONE, TWO, AdmissiblePoly, PCPoly, p_poly, word_power

log = logging.getLogger(__name__)


class SoundnessError(RuntimeError):
    """An internal invariant of the construction failed; never expected on valid input."""


def k_search_cap(n: int) -> int:
    return max(n, 8)


# ---------------------------------------------------------------------------
# type one: removing the last variable
# ---------------------------------------------------------------------------

LamPrime = dict[tuple[cb.Perm, cb.MultiIndex, int], Fraction]


def split_last_variable(f: AdmissiblePoly) -> LamPrime:
    """Re-index ``(sigma, b)`` as ``(tau, b, j)`` where X_n sits at position j.

    ``tau`` is sigma with n deleted, a permutation of 1..n-1.
    """
    if f.kind != ONE:
        raise ValueError("only type-one polynomials are split")
    if f.n < 2:
        raise ValueError("need at least two variables to split")
    out: LamPrime = {}
    for (sigma, b), c in f.coeffs.items():
        j = sigma.index(f.n) + 1
        tau = tuple(x for x in sigma if x != f.n)
        out[(tau, b, j)] = c
    return out


def merge_last_variable(lam: LamPrime, n: int, r: int) -> AdmissiblePoly:
    coeffs = {}
    for (tau, b, j), c in lam.items():
        sigma = tau[:j - 1] + (n,) + tau[j - 1:]
        coeffs[(sigma, b)] = c
    return AdmissiblePoly(n, r, ONE, coeffs)


def least_last_depth(lam: LamPrime) -> int:
    """The least ``b_n`` carrying a nonzero coefficient."""
    depths = [b[-1] for (_, b, _), c in lam.items() if c]
    if not depths:
        raise ValueError("all coefficients vanish")
    return min(depths)


def _restrict(lam: LamPrime, k: int) -> LamPrime:
    return {key: c for key, c in lam.items() if key[1][-1] == k and c}


def substitute_xn(lam: LamPrime, k: int, n: int) -> PCPoly:
    """Polynomial in X_1..X_{n-1}, U, V obtained by replacing X_n with U.

    Only terms with ``b_n == k`` survive; each contributes
    ``lam * (X_tau(1..j-1))^b U (X_tau(j..n-1))^b``.
    """
    part = _restrict(lam, k)
    if not part:
        raise ValueError(f"no coefficients with last depth {k}")
    m = n - 1
    U = PCPoly.U(m)
    g = PCPoly.zero(m)
    for (tau, b, j), c in part.items():
        short = b[:m]
        g = g + (word_power(tau[:j - 1], short) * U * word_power(tau[j - 1:], short)).scale(c)
    return g


def pi0_coefficients(lam: LamPrime, k: int, n: int, r: int) -> AdmissiblePoly:
    """Type-one coefficients of the substituted polynomial after U -> 1."""
    coeffs: dict[tuple, Fraction] = {}
    for (tau, b, j), c in _restrict(lam, k).items():
        key = (tau, b[:n - 1])
        coeffs[key] = coeffs.get(key, 0) + c
    return AdmissiblePoly(n - 1, r - k, ONE, coeffs)


def type_two_from_g(lam: LamPrime, k: int, n: int, r: int) -> AdmissiblePoly:
    """Rewrite the substituted polynomial as a type-two polynomial in n - 1 variables.

    Requires the per-``(tau, b)`` sums over j to vanish.  The coefficient at
    position i is the partial sum over ``j <= i``.
    """
    part = _restrict(lam, k)
    groups: dict[tuple, dict[int, Fraction]] = {}
    for (tau, b, j), c in part.items():
        groups.setdefault((tau, b), {})[j] = c
    coeffs = {}
    for (tau, b), row in groups.items():
        if sum(row.values()) != 0:
            raise ValueError(f"coefficients at {tau}, {b} do not sum to zero")
        acc = Fraction(0)
        for i in range(1, n):
            acc += row.get(i, 0)
            if acc:
                coeffs[(tau, b[:n - 1], i)] = acc
    return AdmissiblePoly(n - 1, r - k, TWO, coeffs)


def lift_witness_xvy(witness: Witness, k: int) -> Witness:
    """Append ``x_n = z_k u``; the new witness evaluates f as the old one evaluates g."""
    alg = witness.backend
    xn = alg.z(k) * witness.u_element()
    return Witness(tuple(witness.xs) + (xn,), (Fraction(1),), alg)


# ---------------------------------------------------------------------------
# type two: U -> V^k
# ---------------------------------------------------------------------------

def pi_k_coefficients(f: AdmissiblePoly, k: int) -> AdmissiblePoly:
    """``sum lambda_{sigma,b,i} P^sigma_{b,i,k}`` as a type-one polynomial of order r + k."""
    if f.kind != TWO:
        raise ValueError("expected a type-two polynomial")
    if k < 1:
        raise ValueError("k must be positive")
    coeffs: dict[tuple, Fraction] = {}
    for (sigma, b, i), lam in f.coeffs.items():
        for key, mu in p_poly(sigma, b, i, k).coeffs.items():
            coeffs[key] = coeffs.get(key, 0) + lam * mu
    return AdmissiblePoly(f.n, f.r + k, ONE, coeffs)


def first_nonvanishing(f: AdmissiblePoly, cap: int | None = None) -> tuple[int, AdmissiblePoly]:
    cap = k_search_cap(f.n) if cap is None else cap
    for k in range(1, cap + 1):
        h = pi_k_coefficients(f, k)
        if h:
            return k, h
    raise SoundnessError(
        f"U -> V^k vanished for every k <= {cap} on a nonzero type-two polynomial "
        f"(n={f.n}, r={f.r}, coeffs={dict(f.coeffs)})")


# ---------------------------------------------------------------------------
# traces
# ---------------------------------------------------------------------------

def _frac(c: Fraction) -> str:
    return str(Fraction(c))


def coeffs_to_json(coeffs) -> list:
    return [[*(list(part) if isinstance(part, tuple) else part for part in key), _frac(c)]
            for key, c in sorted(coeffs.items())]


@dataclass(frozen=True)
class Step:
    kind: str
    n: int
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "n": self.n}
        for key, val in self.data.items():
            if isinstance(val, Fraction):
                val = _frac(val)
            elif isinstance(val, dict):
                val = coeffs_to_json(val)
            out[key] = val
        return out


@dataclass
class ReductionTrace:
    steps: list[Step] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"steps": [s.to_json() for s in self.steps]}

    @property
    def depth(self) -> int:
        return sum(s.kind in ("split", "pi-k-search") for s in self.steps)


@dataclass(frozen=True)
class LiftRecord:
    f: AdmissiblePoly
    g: PCPoly
    k: int
    g_witness: Witness
    f_witness: Witness


# ---------------------------------------------------------------------------
# the solver
# ---------------------------------------------------------------------------

def _solve_base(f: AdmissiblePoly, a, alg: EvaluationAlgebra, trace: ReductionTrace) -> Witness:
    ((key, lam),) = f.coeffs.items()
    trace.steps.append(Step("base", 1, {"type": f.kind, "r": f.r, "coefficient": lam}))
    if f.kind == ONE:
        x = alg.solve_inner(a * (1 / lam), f.r)
        return Witness((x,), (Fraction(1),), alg)
    x = alg.solve_inner(a, f.r + 1) * (1 / lam)
    return Witness((x,), v_power_coeffs(1), alg)


def _solve(f: AdmissiblePoly, a, alg, trace, lifts, check_lifts) -> Witness:
    if not f:
        raise SoundnessError(f"reached a zero polynomial (n={f.n}, r={f.r}, type {f.kind})")
    if f.n == 1:
        return _solve_base(f, a, alg, trace)
    if f.kind == TWO:
        k, h = first_nonvanishing(f)
        trace.steps.append(Step("pi-k-search", f.n, {"k": k, "r": f.r}))
        inner = _solve(h, a, alg, trace, lifts, check_lifts)
        return Witness(inner.xs, v_power_coeffs(k), alg)

    n, r = f.n, f.r
    lam = split_last_variable(f)
    k = least_last_depth(lam)
    trace.steps.append(Step("split", n, {"k": k, "r": r, "coefficients": lam}))
    g = substitute_xn(lam, k, n) if (check_lifts or lifts is not None) else None
    reduced = pi0_coefficients(lam, k, n, r)
    if reduced:
        trace.steps.append(Step("type-one-branch", n - 1, {"coefficients": dict(reduced.coeffs)}))
        inner = _solve(reduced, a, alg, trace, lifts, check_lifts)
        g_witness = Witness(inner.xs, (Fraction(1),), alg)
    else:
        two = type_two_from_g(lam, k, n, r)
        if not two:
            raise SoundnessError("type-two rewriting of a nonzero substitution came out zero")
        trace.steps.append(Step("type-two-branch", n - 1, {"coefficients": dict(two.coeffs)}))
        g_witness = _solve(two, a, alg, trace, lifts, check_lifts)
    f_witness = lift_witness_xvy(g_witness, k)
    if check_lifts:
        lhs = evaluate(g, g_witness)
        rhs = evaluate(f.expand(), Witness(f_witness.xs, (Fraction(1),), alg))
        if not alg.equal(lhs, rhs):
            raise SoundnessError(f"lift identity failed at n={n}, k={k}")
    if lifts is not None:
        lifts.append(LiftRecord(f, g, k, g_witness, f_witness))
    return f_witness


def solve(f: AdmissiblePoly, target: Any, backend: EvaluationAlgebra, *,
          check_lifts: bool = False, lifts: list[LiftRecord] | None = None
          ) -> tuple[Witness, ReductionTrace]:
    """A witness mapping f onto ``target``, with the trace of reductions taken.

    ``check_lifts`` re-evaluates both sides of every variable substitution;
    ``lifts`` (a list) collects those substitutions for external checking.
    """
    if not f:
        raise ValueError("the zero polynomial has image {0}; refusing to solve")
    if isinstance(target, (int, Fraction)):
        target = backend.scalar(target)
    trace = ReductionTrace()
    witness = _solve(f, target, backend, trace, lifts, check_lifts)
    if f.kind == ONE:
        witness = Witness(witness.xs, (Fraction(1),), backend)
    log.debug("solved n=%d r=%d with %d steps", f.n, f.r, len(trace.steps))
    return witness, trace


def replay(trace: ReductionTrace, target: Any, backend: EvaluationAlgebra) -> Witness:
    """Rebuild the witness from the recorded decisions alone, deepest step first."""
    if isinstance(target, (int, Fraction)):
        target = backend.scalar(target)
    xs: tuple = ()
    u: tuple[Fraction, ...] = (Fraction(1),)
    for step in reversed(trace.steps):
        d = step.data
        if step.kind == "base":
            lam = Fraction(d["coefficient"])
            if d["type"] == ONE:
                xs, u = (backend.solve_inner(target * (1 / lam), d["r"]),), (Fraction(1),)
            else:
                xs, u = (backend.solve_inner(target, d["r"] + 1) * (1 / lam),), v_power_coeffs(1)
        elif step.kind == "pi-k-search":
            u = v_power_coeffs(d["k"])
        elif step.kind == "type-one-branch":
            u = (Fraction(1),)
        elif step.kind == "type-two-branch":
            pass
        elif step.kind == "split":
            w = lift_witness_xvy(Witness(xs, u, backend), d["k"])
            xs, u = w.xs, w.u
        else:
            raise ValueError(f"unknown step kind {step.kind!r}")
    return Witness(xs, u if trace.steps and trace.steps[0].kind != "split" else (Fraction(1),), backend)


def verify(f: AdmissiblePoly, witness: Witness, target: Any) -> bool:
    """Independent re-evaluation of f at the witness, compared with the target."""
    alg = witness.backend
    if isinstance(target, (int, Fraction)):
        target = alg.scalar(target)
    return alg.equal(evaluate(f.expand(), witness), target)


def solve_multilinear(coeffs: dict, target: Any, backend: EvaluationAlgebra,
                      **kwargs) -> tuple[Witness, ReductionTrace]:
    from surjpoly.pcpoly import multilinear
    n = len(next(iter(coeffs)))
    return solve(multilinear(n, coeffs), target, backend, **kwargs)

