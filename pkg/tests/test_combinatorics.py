import math
from itertools import product

import pytest
from hypothesis import given, strategies as st

from surjpoly import combinatorics as cb


def brute_compositions(n, r):
    return {b for b in product(range(r + 1), repeat=n) if sum(b) == r}


class TestCompositions:
    def test_worked_examples(self):
        assert cb.compositions(2, 1) == [(1, 0), (0, 1)]
        assert cb.compositions(2, 2) == [(2, 0), (1, 1), (0, 2)]
        assert cb.compositions(1, 5) == [(5,)]
        assert cb.compositions(4, 0) == [(0, 0, 0, 0)]

    @pytest.mark.parametrize("n", range(1, 7))
    @pytest.mark.parametrize("r", range(0, 9))
    def test_count_and_membership(self, n, r):
        out = cb.compositions(n, r)
        assert len(out) == math.comb(r + n - 1, n - 1)
        if n ** (r + 1) < 50000:
            assert set(out) == brute_compositions(n, r)
        assert out == sorted(out, reverse=True)
        assert len(set(out)) == len(out)

    def test_rejects_bad_shape(self):
        with pytest.raises(ValueError):
            cb.compositions(0, 1)
        with pytest.raises(ValueError):
            cb.compositions(2, -1)


class TestCSet:
    def test_worked_examples(self):
        assert cb.c_set((1, 2), 1, 1) == [(1, 0)]
        assert cb.c_set((1, 2), 2, 1) == [(2, 0), (1, 1)]
        assert cb.c_set((1, 2), 2, 2) == [(0, 2)]

    def test_rejects_k_zero(self):
        with pytest.raises(ValueError):
            cb.c_set((1, 2), 0, 1)

    @pytest.mark.parametrize("sigma", [(1, 2, 3), (2, 3, 1), (3, 1, 2)])
    @pytest.mark.parametrize("k", [1, 2, 3])
    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_matches_definition(self, sigma, k, i):
        expected = {c for c in brute_compositions(3, k)
                    if all(c[sigma[j] - 1] == 0 for j in range(i - 1)) and c[sigma[i - 1] - 1] >= 1}
        assert set(cb.c_set(sigma, k, i)) == expected

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_bijection_with_d_sets(self, k, i):
        # C_{k,i} = { s e_i + d : 1 <= s <= k, d in D_{k-s, i+1} } for sigma = id
        n = 3
        built = {cb.join_d(s, d, i) for s in range(1, k + 1) for d in cb.d_set(k - s, i + 1, n)}
        assert built == set(cb.c_set((1, 2, 3), k, i))


class TestDSet:
    def test_examples(self):
        assert cb.d_set(3, 4, 4) == [(0, 0, 0, 3)]
        assert cb.d_set(0, 2, 3) == [(0, 0, 0)]
        assert len(cb.d_set(3, 2, 4)) == 10
        assert cb.d_set(2, 3, 2) == []
        assert cb.d_set(0, 3, 2) == [(0, 0)]

    @pytest.mark.parametrize("t", range(0, 5))
    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_disjoint_union_split(self, t, i):
        n = 3
        pieces = [(s, d) for s in range(t + 1) for d in cb.d_set(t - s, i + 1, n)]
        joined = [cb.join_d(s, d, i) for s, d in pieces]
        assert sorted(joined) == sorted(cb.d_set(t, i, n))
        for s, d in pieces:
            assert cb.split_d(cb.join_d(s, d, i), i) == (s, d)


class TestMultinomial:
    def test_examples(self):
        assert cb.multinomial_mu((1, 2), (1, 1), 1) == 2
        assert cb.multinomial_mu((1, 2), (2, 0), 1) == 1
        assert cb.multinomial_mu((1, 2), (0, 2), 2) == 1

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            cb.multinomial_mu((1, 2), (-1, 2), 1)

    @given(st.permutations([1, 2, 3]), st.integers(1, 3), st.integers(1, 4))
    def test_pure_power_is_one(self, sigma, i, k):
        sigma = tuple(sigma)
        assert cb.multinomial_mu(sigma, cb.unit(sigma[i - 1], 3, k), i) == 1

    @given(st.permutations([1, 2, 3]), st.permutations([1, 2, 3]), st.integers(1, 3),
           st.lists(st.integers(0, 3), min_size=3, max_size=3))
    def test_invariant_under_relabeling(self, sigma, rho, i, c):
        # move the entries of c along with the relabeling sigma -> rho
        sigma, rho = tuple(sigma), tuple(rho)
        c2 = [0, 0, 0]
        for pos in range(3):
            c2[rho[pos] - 1] = c[sigma[pos] - 1]
        assert cb.multinomial_mu(sigma, c, i) == cb.multinomial_mu(rho, c2, i)

    @given(st.permutations([1, 2, 3]), st.integers(1, 3),
           st.lists(st.integers(0, 3), min_size=3, max_size=3), st.randoms())
    def test_depends_on_tail_multiset(self, sigma, i, c, rnd):
        sigma = tuple(sigma)
        tail_pos = [sigma[j] - 1 for j in range(i - 1, 3)]
        vals = [c[p] for p in tail_pos]
        rnd.shuffle(vals)
        c2 = list(c)
        for p, val in zip(tail_pos, vals):
            c2[p] = val
        assert cb.multinomial_mu(sigma, c, i) == cb.multinomial_mu(sigma, c2, i)

    def test_multinomial_invalid_is_zero(self):
        assert cb.multinomial(3, [1, 1]) == 0
        assert cb.multinomial(2, [-1, 3]) == 0
        assert cb.multinomial(4, [2, 1, 1]) == 12


def test_binomial_convolution_exhaustive():
    checked = 0
    for k in range(1, 7):
        for s in range(1, k + 1):
            for sp in range(k - s + 1):
                for t in range(s + sp, k + 1):
                    for m in range(0, 3):
                        ds = cb.compositions(m, t - s - sp) if m else ([()] if t == s + sp else [])
                        for d in ds:
                            assert cb.binomial_convolution_holds(k, s, sp, t, d)
                            checked += 1
    assert checked > 300
