from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from charpoly import linalg as la
from charpoly import suites
from conftest import rationals

F = Fraction


def skew_from(vals, n):
    A = la.zeros(n)
    it = iter(vals)
    for i in range(n):
        for j in range(i + 1, n):
            A[i, j] = next(it)
            A[j, i] = -A[i, j]
    return A


def skew_strategy(max_half=5):
    return st.integers(1, max_half).flatmap(
        lambda h: st.lists(rationals(), min_size=h * (2 * h - 1), max_size=h * (2 * h - 1))
        .map(lambda v: skew_from(v, 2 * h)))


def square_strategy(lo=1, hi=6):
    return st.integers(lo, hi).flatmap(
        lambda n: st.lists(rationals(), min_size=n * n, max_size=n * n)
        .map(lambda v: la.exact_matrix([v[i * n:(i + 1) * n] for i in range(n)])))


# ------------------------------------------------------------ pfaffian

def test_pfaffian_2x2():
    a = F(7, 3)
    assert la.pfaffian(la.exact_matrix([[0, a], [-a, 0]])) == a


def test_pfaffian_4x4_expansion():
    a = {(i, j): F(i * 10 + j, 7) for i in range(4) for j in range(i + 1, 4)}
    A = skew_from([a[k] for k in sorted(a)], 4)
    expect = a[0, 1] * a[2, 3] - a[0, 2] * a[1, 3] + a[0, 3] * a[1, 2]
    assert la.pfaffian(A) == expect


@given(skew_strategy())
def test_pfaffian_squared_is_det(A):
    assert la.pfaffian(A) ** 2 == la.det(A)


@given(skew_strategy(4))
def test_pfaffian_matches_matchings(A):
    assert la.pfaffian(A) == la.pfaffian_matchings(A)


def test_float_pfaffian_matches_exact():
    rng = np.random.default_rng(5)
    for n in (2, 4, 6, 8, 10):
        vals = [int(v) for v in rng.integers(-9, 10, n * (n - 1) // 2)]
        A = skew_from([F(v) for v in vals], n)
        Af = A.astype(float)
        exact = la.pfaffian(A)
        if exact != 0:
            assert abs(la.pfaffian(Af) - float(exact)) <= 1e-12 * abs(float(exact))


def test_pfaffian_rejects_odd_and_nonskew():
    with pytest.raises((la.DimensionError, la.ShapeError)):
        la.pfaffian(la.zeros(3))
    with pytest.raises(la.ShapeError):
        la.pfaffian(la.exact_matrix([[0, 1], [1, 0]]))


# ------------------------------------------------------------ Cauchy and blocks

def test_cauchy_small_cases():
    a, b = F(5, 2), F(1, 3)
    assert la.cauchy_determinant([a], [b]) == 1 / (a - b)
    assert la.cauchy_determinant([F(2), F(3)], [F(0), F(1)]) == F(-1, 12)
    assert la.det(la.exact_matrix([[F(1, 2), F(1)], [F(1, 3), F(1, 2)]])) == F(-1, 12)


@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_cauchy_matches_determinant(k, seed):
    rng = np.random.default_rng(seed)
    A = suites.distinct_rats(rng, k)
    B = suites.distinct_rats(rng, k, exclude=A)
    assert la.cauchy_determinant(A, B) == la.det(la.cauchy_matrix(A, B))


def test_block_determinant_signs():
    one = la.exact_matrix([[1]])
    assert la.det_block_offdiagonal(one, one) == -1
    I2 = la.identity(2)
    assert la.det_block_offdiagonal(I2, I2) == 1


@given(square_strategy(1, 4), st.data())
def test_block_determinant_random(A, data):
    s = A.shape[0]
    vals = data.draw(st.lists(rationals(), min_size=s * s, max_size=s * s))
    B = la.exact_matrix([vals[i * s:(i + 1) * s] for i in range(s)])
    assert la.det_block_offdiagonal(A, B) == la.det(la.block_offdiagonal(A, B))


# ------------------------------------------------------------ minors

def test_minor_of_inverse_trivial():
    I = la.identity(4)
    assert la.minor_of_inverse(I, [1, 2], [1, 2]) == 1
    B = la.exact_matrix([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert la.minor_of_inverse(B, [0, 1, 2], [0, 1, 2]) == 1 / la.det(B)
    Binv = la.inverse(B)
    for i in range(3):
        for j in range(3):
            assert la.minor_of_inverse(B, [i], [j]) == Binv[i, j]


@given(square_strategy(2, 6), st.data())
def test_minor_of_inverse_random(B, data):
    n = B.shape[0]
    if la.det(B) == 0:
        return
    r = data.draw(st.integers(1, n))
    rows = sorted(data.draw(st.permutations(range(n)))[:r])
    cols = sorted(data.draw(st.permutations(range(n)))[:r])
    assert la.minor_of_inverse(B, rows, cols) == la.det(la.sub(la.inverse(B), rows, cols))


def test_I_plus_A_trivial():
    assert la.minor_expansion_I_plus_A(la.zeros(3), [], []) == 1


@given(square_strategy(1, 6))
def test_det_I_plus_L_principal_minor_sum(L):
    n = L.shape[0]
    total = sum((la.det(la.sub(L, list(X))) for r in range(n + 1)
                 for X in combinations(range(n), r)), F(0))
    assert total == la.det(L + la.identity(n))
    assert la.minor_expansion_I_plus_A(L, [], []) == total


@given(square_strategy(2, 5), st.data())
def test_I_plus_A_removed(A, data):
    n = A.shape[0]
    perm = data.draw(st.permutations(range(n)))
    r = data.draw(st.integers(0, n // 2))
    rows, cols = sorted(perm[:r]), sorted(perm[r:2 * r])
    assert la.minor_expansion_I_plus_A(A, rows, cols) == la.minor_I_plus_A_direct(A, rows, cols)


def test_k_minor_trivial():
    assert la.k_minor_sum(la.zeros(3), [0], [1]) == 0
    l = F(3, 5)
    assert la.k_minor_sum(la.exact_matrix([[l]]), [0], [0]) == l / (1 + l)


@given(square_strategy(2, 5), st.data())
def test_k_minor_random(L, data):
    n = L.shape[0]
    if la.det(L + la.identity(n)) == 0:
        return
    r = data.draw(st.integers(1, n))
    rows = sorted(data.draw(st.permutations(range(n)))[:r])
    cols = sorted(data.draw(st.permutations(range(n)))[:r])
    assert la.k_minor_sum(L, rows, cols) == la.det(la.sub(la.k_matrix(L), rows, cols))


# ------------------------------------------------------------ pfaffian identities

def test_pfaffian_of_block_small():
    assert la.pfaffian_of_block(la.exact_matrix([[F(4, 9)]])) == F(4, 9)
    assert la.pfaffian_of_block(la.identity(2)) == -1


@given(square_strategy(1, 4))
def test_pfaffian_of_block_random(A):
    assert la.pfaffian_of_block(A) == la.pfaffian(la.skew_block(A))


def test_J_plus_A_zero_matrix():
    A = la.zeros(4)
    assert la.pf_J_plus_A_direct(A, 1) == la.pf_J_plus_A_expansion(A, 1)


@given(st.integers(2, 4), st.data())
def test_J_plus_A_three_routes(npts, data):
    vals = data.draw(st.lists(rationals(), min_size=npts * (2 * npts - 1), max_size=npts * (2 * npts - 1)))
    A = skew_from(vals, 2 * npts)
    k = data.draw(st.integers(1, npts // 2))
    direct = la.pf_J_plus_A_direct(A, k)
    assert direct == la.pf_J_plus_A_expansion(A, k)
    M = A + la.J_matrix(npts)
    if la.pfaffian(M) != 0:
        assert direct == la.pf_J_plus_A_via_inverse(A, k)


def test_pf_J_plus_L_expansion_sum():
    rng = np.random.default_rng(11)
    for npts in (1, 2, 3, 4):
        A = suites.rand_skew(rng, 2 * npts)
        total = F(0)
        for r in range(npts + 1):
            for X in combinations(range(npts), r):
                idx = [x for j in X for x in (la.prime(j), la.dprime(j))]
                total += la.pfaffian(la.sub(A, idx)) if idx else F(1)
        assert total == la.pfaffian(A + la.J_matrix(npts))


@given(st.integers(2, 4), st.data())
def test_pf_submatrix_of_inverse_random(npts, data):
    vals = data.draw(st.lists(rationals(), min_size=npts * (2 * npts - 1), max_size=npts * (2 * npts - 1)))
    A = skew_from(vals, 2 * npts)
    if la.pfaffian(A) == 0:
        return
    m = data.draw(st.integers(1, npts // 2))
    assert la.pf_submatrix_of_inverse(A, m) == la.pf_submatrix_of_inverse_direct(A, m)


def test_pf_submatrix_of_inverse_J():
    J = la.J_matrix(2)
    assert la.pf_submatrix_of_inverse(J, 1) == la.pf_submatrix_of_inverse_direct(J, 1)
    assert la.pfaffian(la.inverse(J)) == 1 / la.pfaffian(J)
