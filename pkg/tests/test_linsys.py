import random
from fractions import Fraction
from itertools import permutations

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from gen import rand_admissible
from surjpoly import combinatorics as cb
from surjpoly import linsys
from surjpoly.pcpoly import TWO
from surjpoly.solver import pi_k_coefficients


class TestExactElimination:
    def test_rank_and_nullspace(self):
        m = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
        assert linsys.rank(m) == 2
        (k,) = linsys.nullspace(m)
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in m)

    def test_fractions(self):
        m = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(1, 4), Fraction(1, 6)]]
        assert linsys.rank(m) == 1

    def test_solve(self):
        assert linsys.solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
        assert linsys.solve([[1, 1], [1, 1]], [1, 2]) is None

    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 5), st.integers(1, 6), st.integers(0, 2**31))
    def test_against_sympy(self, rows, cols, seed):
        rng = random.Random(seed)
        m = [[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)]
        assert linsys.rank(m) == sympy.Matrix(m).rank()
        kernel = linsys.nullspace(m, cols)
        assert len(kernel) == cols - sympy.Matrix(m).rank()
        for vec in kernel:
            assert all(sum(a * x for a, x in zip(row, vec)) == 0 for row in m)


class TestGenSystem:
    def test_example_k1(self):
        sysm = linsys.gen_system((1, 2), 2, 1, 1)
        nontrivial = [row for row in sysm.entries if any(row)]
        assert len(nontrivial) == 3
        cols = sysm.columns
        eq = dict(zip(sysm.rows, sysm.entries))[(1, (1, 1))]
        assert {cols[j]: c for j, c in enumerate(eq) if c} == {((0, 1), 1): 1, ((1, 0), 2): 1}

    def test_example_layout(self):
        layout = linsys.worked_example_layout()
        assert layout["k=1"] == [
            "m^1_(2,-1) + m^2_(3,-2) = 0",
            "m^1_(1,0) + m^2_(2,-1) = 0",
            "m^1_(0,1) + m^2_(1,0) = 0",
            "m^1_(-1,2) + m^2_(0,1) = 0",
        ]
        assert layout["k=2"] == [
            "m^1_(1,0) + 2*m^1_(2,-1) + m^2_(3,-2) = 0",
            "m^1_(0,1) + 2*m^1_(1,0) + m^2_(2,-1) = 0",
            "m^1_(-1,2) + 2*m^1_(0,1) + m^2_(1,0) = 0",
            "m^1_(-2,3) + 2*m^1_(-1,2) + m^2_(0,1) = 0",
        ]
        assert layout["difference"][0] == "m^1_(1,0) + m^1_(2,-1) = 0"

    def test_example_kernel_trivial(self):
        assert linsys.gen_system((1, 2), 2, 1, 2).kernel() == []

    def test_no_rows_gives_full_kernel(self):
        for n, r in [(1, 2), (2, 1), (3, 1)]:
            sysm = linsys.gen_system(cb.identity_perm(n), n, r, 0)
            assert len(sysm.kernel()) == len(cb.compositions(n, r)) * n

    def test_entries_are_multinomials(self):
        sigma = (2, 3, 1)
        sysm = linsys.gen_system(sigma, 3, 1, 2)
        where = {c: j for j, c in enumerate(sysm.columns)}
        for (k, b), row in zip(sysm.rows, sysm.entries):
            expected = [0] * len(row)
            for i in range(1, 4):
                for c in cb.c_set(sigma, k, i):
                    bp = cb.sub(b, c)
                    if min(bp) >= 0:
                        expected[where[(bp, i)]] += cb.multinomial_mu(sigma, c, i)
            assert row == expected

    @pytest.mark.parametrize("n,r", [(2, 0), (2, 1), (3, 0), (3, 1)])
    def test_relabeling(self, n, r):
        dims = {len(linsys.gen_system(s, n, r, k).kernel())
                for s in permutations(range(1, n + 1)) for k in (1, n)}
        base = {len(linsys.gen_system(cb.identity_perm(n), n, r, k).kernel()) for k in (1, n)}
        assert dims == base

    def test_bad_sigma(self):
        with pytest.raises(ValueError):
            linsys.gen_system((1, 1), 2, 1, 1)


class TestCrossCheckWithSolver:
    @pytest.mark.parametrize("seed", range(30))
    def test_nonzero_type_two_leaves_kernel(self, seed):
        # the residual of the stacked systems at the coefficients of f is exactly
        # the list of h_k coefficients, so a nonzero f must give a nonzero residual
        rng = random.Random(seed)
        n, r = rng.randint(1, 3), rng.randint(0, 2)
        f = rand_admissible(rng, n, r, TWO)
        residual_nonzero = False
        for sigma in permutations(range(1, n + 1)):
            values = {(b, i): c for (s, b, i), c in f.coeffs.items() if s == sigma}
            res = linsys.gen_system(sigma, n, r, n).apply(values)
            for (k, b), val in res.items():
                h = pi_k_coefficients(f, k).coeffs.get((sigma, b), 0)
                assert val == h
                residual_nonzero |= val != 0
        assert residual_nonzero


class TestRecurrences:
    def test_example_elimination(self):
        f2 = linsys.recurrence_polys((1, 2), 2)
        f1 = linsys.recurrence_polys((1, 2), 1)
        family = {(1, 1): f2[1], (2, 1): f2[2], (1, 2): f1[1], (2, 2): f1[2]}
        out = linsys.eliminate_recurrence_pair(family, [1, 2], [2, 1])
        W1, W2 = linsys.shift_symbols(2)
        assert out[(1, 1)] == sympy.Poly(W2 * (W1**2 + W1 * W2), W1, W2)
        eq = linsys.recurrence_equation(out[(1, 1)], 1, (3, 1))
        assert sorted(linsys.render_equation(eq)[:-4].split(" + ")) == ["m^1_(1,0)", "m^1_(2,-1)"]

    def test_zero_entry_is_pure_scaling(self):
        W1, W2 = linsys.shift_symbols(2)
        P = lambda e: sympy.Poly(e, W1, W2)
        family = {(1, 1): P(W1**3 + W2), (1, 2): P(W1), (2, 1): P(0), (2, 2): P(W2**2)}
        out = linsys.eliminate_recurrence_pair(family, [1, 2], [3, 1])
        assert out[(1, 1)] == P(W2**2) * family[(1, 1)]

    def test_degree_precondition(self):
        W1, W2 = linsys.shift_symbols(2)
        P = lambda e: sympy.Poly(e, W1, W2)
        family = {(1, 1): P(W1), (1, 2): P(W1), (2, 1): P(W2), (2, 2): P(W2)}
        with pytest.raises(linsys.DegreeError):
            linsys.eliminate_recurrence_pair(family, [1, 2], [2, 1])
        with pytest.raises(linsys.DegreeError):
            linsys.eliminate_recurrence_pair(family, [1, 2], [1, 1])

    @settings(max_examples=60, deadline=None)
    @given(st.integers(0, 2**31))
    def test_degree_bookkeeping_random(self, seed):
        rng = random.Random(seed)
        n = rng.randint(2, 3)
        W = linsys.shift_symbols(n)
        l = n
        orders = sorted(rng.sample(range(1, 5), l), reverse=True)
        indices = list(range(1, n + 1))

        def poly(i, deg):
            # polynomial in W_i..W_n with W_i-degree exactly deg
            expr = W[i - 1] ** deg
            for _ in range(2):
                j = rng.randint(i, n)
                e = rng.randint(0, deg - 1 if j == i else 2)
                expr += rng.randint(-2, 2) * W[j - 1] ** e
            return sympy.Poly(expr, *W)

        family = {(i, j): poly(i, orders[j - 1]) for i in indices for j in range(1, l + 1)}
        out = linsys.eliminate_recurrence_pair(family, indices, orders)
        for (i, j), g in out.items():
            assert g.degree(W[i - 1]) == orders[j - 1]
        final = linsys.reduce_recurrences(family, indices, orders)
        assert final.degree(W[0]) == orders[0]
