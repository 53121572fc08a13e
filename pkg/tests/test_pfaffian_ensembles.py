from fractions import Fraction
from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from charpoly import linalg as la
from charpoly import pfaffian_ensembles as pe
from charpoly import suites
from charpoly.discrete import char_poly, prod
from charpoly.scalars import QI

F = Fraction
U4 = tuple(F(i) for i in range(4))


def ones(pts):
    return {p: F(1) for p in pts}


def rand_parity_ground(seed, n_minus, n_plus):
    rng = np.random.default_rng(seed)
    pts = sorted(suites.distinct_rats(rng, n_minus + n_plus))
    return pe.ParityGroundSet(tuple(pts), frozenset(pts[:n_minus])), suites.positive_weights(rng, pts)


# ------------------------------------------------------------ L matrices

def test_build_pfaffian_L_hand_assembly():
    g = pe.ParityGroundSet(U4, frozenset(U4[:2]))
    L = pe.build_pfaffian_L(g, ones(U4))
    P, D = la.prime, la.dprime
    expect = {(P(0), P(1)): 1, (P(0), P(2)): 1, (P(1), P(2)): 0,
              (D(0), D(2)): F(-1, 2), (D(1), D(2)): -1,
              (D(0), P(3)): F(-1, 3), (D(0), D(3)): F(-1, 2),
              (D(1), P(3)): F(-1, 2), (D(1), D(3)): -1}
    for (r, c), v in expect.items():
        assert L[r, c] == v and L[c, r] == -v
    la.check_skew(L)
    assert pe.epsilon_L(g, F(1), F(1)) == 0


def test_structure_rules():
    with pytest.raises(pe.StructureError):
        pe.ParityGroundSet(U4, frozenset({F(1)}))
    with pytest.raises(pe.StructureError):
        pe.ParityGroundSet(U4, frozenset(U4))


@given(st.integers(0, 10 ** 6), st.sampled_from([(2, 4), (3, 3), (4, 2)]))
def test_pfaffian_L_probabilities(seed, split):
    g, h = rand_parity_ground(seed, *split)
    L = pe.build_pfaffian_L(g, h)
    pf = pe.pf_J_plus_L(L)
    assert pe.prob_pfaffian_L(L, g, ()) == 1 / pf
    total = F(0)
    for X in pe.all_subsets(g.points):
        p = pe.prob_pfaffian_L(L, g, X, pf)
        assert p == pe.prob_pfaffian_L_closed(g, h, X, pf)
        total += p
    assert total == 1


def test_epsilon_selection_rule():
    g, h = rand_parity_ground(3, 6, 2)
    L = pe.build_pfaffian_L(g, h)
    cand = g.minus_points + (g.xi,)
    for r in (2, 4, 6):
        for T in combinations(cand, r):
            idx = [la.prime(g.index(x)) for x in T]
            valid = all((g.is_odd(x) and x != g.xi) == (i % 2 == 0) for i, x in enumerate(T))
            assert la.pfaffian(la.sub(L, idx)) == (1 if valid else 0)


def test_configuration_classes():
    assert pe.in_conf4(U4, (F(0), F(1)))
    assert not pe.in_conf4(U4, (F(0), F(2)))
    assert pe.in_conf1(U4, (F(0), F(1)))
    assert pe.in_conf1(U4, (F(0), F(3)))
    assert not pe.in_conf1(U4, (F(1), F(2)))
    pts = tuple(F(i) for i in range(6))
    for r in (2, 4):
        for X in combinations(pts, r):
            comp = tuple(p for p in pts if p not in X)
            assert pe.in_conf1(pts, X) == pe.in_conf4(pts, comp) or len(comp) % 2


# ------------------------------------------------------------ skew products and bases

def test_skew_inner_examples():
    f = ones(U4)
    one = [F(1)] * 4
    x = list(U4)
    assert pe.skew_inner(one, x, U4, f, "symplectic") == 3
    assert pe.skew_inner(x, x, U4, f, "symplectic") == 0


@given(st.integers(0, 10 ** 6))
def test_orthogonal_inner_double_sum(seed):
    rng = np.random.default_rng(seed)
    pts = tuple(sorted(suites.distinct_rats(rng, 6)))
    f = suites.positive_weights(rng, pts)
    g1 = [suites.rat(rng) for _ in pts]
    g2 = [suites.rat(rng) for _ in pts]
    direct = sum((pe.epsilon_parity(pts, x, y) * f[x] * f[y] * g1[i] * g2[j]
                  for i, x in enumerate(pts) for j, y in enumerate(pts)), F(0))
    assert pe.skew_inner(g1, g2, pts, f, "orthogonal") == direct
    assert pe.skew_inner(g1, g1, pts, f, "orthogonal") == 0


def test_symplectic_basis_uniform():
    B = pe.skew_orthogonalize(U4, ones(U4), "symplectic", 3)
    assert B.coeffs[0] == [1]
    assert B.coeffs[1] == [0, 1]
    assert B.coeffs[2] == [F(8, 3), -3, 1]
    assert B.norms[0] == 3


@given(st.integers(0, 10 ** 6), st.sampled_from(["symplectic", "orthogonal"]))
def test_skew_orthogonality(seed, tag):
    rng = np.random.default_rng(seed)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    B = pe.skew_orthogonalize(pts, suites.positive_weights(rng, pts), tag, 5)
    for i in range(6):
        for j in range(6):
            v = B.inner(B.table(i), B.table(j))
            if {i, j} == {2 * (i // 2), 2 * (i // 2) + 1} and i // 2 == j // 2 and i != j:
                assert v == (B.norms[i // 2] if i < j else -B.norms[i // 2])
            else:
                assert v == 0


def test_de_bruijn():
    pts = U4
    eps = lambda a, b: pe.epsilon_parity(pts, a, b)
    p1, p2 = [F(1)] * 4, [x * x for x in pts]
    lhs, rhs = pe.de_bruijn_sum([p1, p2], eps, pts)
    two_inner = sum((eps(a, b) * (p1[i] * p2[j] - p1[j] * p2[i])
                     for i, a in enumerate(pts) for j, b in enumerate(pts) if i != j), F(0))
    assert lhs == rhs == two_inner
    zero = lambda a, b: 0
    assert pe.de_bruijn_sum([p1, p2], zero, pts) == (0, 0)
    rng = np.random.default_rng(4)
    pts5 = tuple(sorted(suites.distinct_rats(rng, 5)))
    tabs = [[suites.rat(rng) for _ in pts5] for _ in range(4)]
    lhs, rhs = pe.de_bruijn_sum(tabs, lambda a, b: pe.epsilon_parity(pts5, a, b), pts5)
    assert lhs == rhs


def test_normalisation_and_heine_uniform():
    ens = pe.SkewEnsemble(U4, ones(U4), 1, 4)
    assert ens.c(1) == 3
    assert pe.normalization_c(ens, 1) == 3
    assert pe.normalization_c(ens, 0) == 1
    for z in (F(0), F(1, 2), QI(1, 1)):
        assert pe.heine_skew(ens, z) == z * z - 3 * z + F(8, 3)
        assert pe.heine_skew(ens, z, "enumeration") == z * z - 3 * z + F(8, 3)
    assert pe.heine_skew(pe.SkewEnsemble(U4, ones(U4), 0, 4), F(5)) == 1


def test_heine_orthogonal_eight_points():
    rng = np.random.default_rng(2)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    ens = pe.SkewEnsemble(pts, suites.positive_weights(rng, pts), 1, 1)
    for z in (F(1, 3), QI(-1, 2)):
        assert pe.heine_skew(ens, z) == pe.heine_skew(ens, z, "enumeration") == ens.basis(3).p(2, z)


@pytest.mark.parametrize("beta", [1, 4])
@pytest.mark.parametrize("kind", ["dd", "d/d", "1/dd", "1/d"])
def test_two_point_averages(beta, kind):
    pts = tuple(F(i) for i in range(6)) if beta == 4 else tuple(F(i) for i in range(8))
    ens = pe.SkewEnsemble(pts, {p: F(1 + (i % 3), 2) for i, p in enumerate(pts)}, 1, beta)
    z = QI(0, 1)
    e = F(5, 2) if kind in ("dd", "d/d") else QI(F(1, 2), -2)
    if kind == "dd":
        z = F(1, 3)
    for K in (1, 2):
        assert pe.two_point_averages(ens, K, z, e, kind) == pe.two_point_averages(ens, K, z, e, kind, "enumeration")
    if kind == "dd":
        assert pe.two_point_averages(ens, 1, z, e, kind) == pe.two_point_averages(ens, 1, e, z, kind)


# ------------------------------------------------------------ average theorems

def test_beta4_two_point_collapse():
    ens = pe.SkewEnsemble(tuple(F(i) for i in range(8)), ones(tuple(F(i) for i in range(8))), 1, 4)
    a, b = F(1, 2), F(7, 3)
    res = pe.average_beta4(ens, [], [a, b])
    assert res.W.shape == (2, 2)
    assert res.value == ens.average_ratio([a, b], [])


def test_beta4_examples():
    rng = np.random.default_rng(6)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    ens = pe.SkewEnsemble(pts, suites.positive_weights(rng, pts), 2, 4)
    a, b = F(1, 3), QI(F(1, 2), 1)
    assert pe.average_beta4(ens, [b], [a]).value == ens.average_ratio([a], [b])
    pair = [QI(F(1, 2), 1), QI(F(1, 2), -1)]
    ens1 = pe.SkewEnsemble(pts, ens.f, 1, 4)
    assert pe.average_beta4(ens1, pair, []).value == ens1.average_ratio([], pair)


def test_beta1_examples():
    rng = np.random.default_rng(7)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    ens = pe.SkewEnsemble(pts, suites.positive_weights(rng, pts), 2, 1)
    a, b = F(1, 3), QI(F(1, 2), 1)
    assert pe.average_beta1(ens, [a], [b]).value == ens.average_ratio([a], [b])
    c = F(-5, 2)
    res = pe.average_beta1(ens, [a, c], [])
    assert res.value == ens.average_ratio([a, c], []) == pe.two_point_averages(ens, 2, a, c, "dd")


@given(st.integers(0, 10 ** 6), st.sampled_from([1, 4]), st.sampled_from([-1, 0, 1]))
def test_pfaffian_theorems_property(seed, beta, S):
    rng = np.random.default_rng(seed)
    N = int(rng.integers(1, 3))
    if N + S < 0:
        S = 0
    ens = suites.skew_instance(rng, 8, N, beta)
    extra = 0 if N + S == 0 else 2 * int(rng.integers(0, 2))
    numer = suites.distinct_rats(rng, max(0, 2 * S) + extra)
    denom = suites.off_grid(rng, max(0, -2 * S) + extra)
    if beta == 4:
        val = pe.average_beta4(ens, denom, numer).value
    else:
        val = pe.average_beta1(ens, numer, denom).value
    assert val == ens.average_ratio(numer, denom)


def test_duality_beta1_beta4_averages():
    rng = np.random.default_rng(9)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    e1 = pe.SkewEnsemble(pts, suites.positive_weights(rng, pts), 2, 1)
    e4 = pe.dual_ensemble(e1)
    assert e4.beta == 4 and e4.N == 2
    a, b = F(1, 3), QI(F(1, 2), 1)
    full = lambda z: char_poly(pts, z)
    lhs = pe.average_beta1(e1, [a], [b]).value
    rhs = full(a) / full(b) * pe.average_beta4(e4, [a], [b]).value
    assert lhs == rhs


def test_gauge_invariance():
    rng = np.random.default_rng(12)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    f = suites.positive_weights(rng, pts)
    for beta in (1, 4):
        plain = pe.SkewEnsemble(pts, f, 2, beta)
        gauged = pe.SkewEnsemble(pts, f, 2, beta, gauge={0: F(3, 7), 1: F(-2), 2: F(5)})
        a, b = F(1, 3), QI(F(1, 2), 1)
        fn = pe.average_beta4 if beta == 4 else pe.average_beta1
        args = ([b], [a]) if beta == 4 else ([a], [b])
        assert fn(plain, *args).value == fn(gauged, *args).value
        z = pts[1:3]
        assert pe.correlation_pfaffian(plain, z) == pe.correlation_pfaffian(gauged, z)


# ------------------------------------------------------------ correlations

def test_correlation_uniform_trace():
    ens = pe.SkewEnsemble(U4, ones(U4), 1, 4)
    rho = [pe.correlation_pfaffian(ens, [x]) for x in U4]
    assert sum(rho) == 2
    assert rho == [pe.correlation_brute(ens, [x]) for x in U4]


def test_correlation_zero_weight():
    f = ones(tuple(F(i) for i in range(6)))
    f[F(2)] = F(0)
    ens = pe.SkewEnsemble(tuple(F(i) for i in range(6)), f, 1, 1)
    assert pe.correlation_pfaffian(ens, [F(2)]) == 0


@pytest.mark.parametrize("beta", [1, 4])
def test_correlations_all_forms(beta):
    rng = np.random.default_rng(20 + beta)
    pts = tuple(sorted(suites.distinct_rats(rng, 8)))
    ens = pe.SkewEnsemble(pts, suites.positive_weights(rng, pts), 2, beta)
    for m in (1, 2, 3):
        for z in list(combinations(pts, m))[:12]:
            brute = pe.correlation_brute(ens, z)
            assert pe.correlation_pfaffian(ens, z) == brute
            assert pe.correlation_pfaffian(ens, z, form="tdet") == brute
            if m <= 2:
                assert pe.correlation_pfaffian(ens, z, method="enumeration") == brute


# ------------------------------------------------------------ equivalence and K minors

def test_equivalence_check():
    g, h = rand_parity_ground(30, 4, 4)
    ok = pe.ensemble_equivalence_check(g, h)
    assert ok["a"] and ok["b"] and ok["c"] and ok["weights"]
    assert ok["empty_maps_to"] == (g.minus_points, g.plus_points)


def test_k_minor_identity():
    g, h = rand_parity_ground(31, 4, 2)
    assert pe.pf_K_minor_identity(g, h, [], []) == (1, 1)
    lhs, rhs = pe.pf_K_minor_identity(g, h, [], [QI(F(1, 2), 1), QI(F(-1, 3), 2)])
    assert lhs == rhs
    lhs, rhs = pe.pf_K_minor_identity(g, h, [QI(F(3, 2), -1)], [QI(F(1, 2), 1)])
    assert lhs == rhs
    args = (g, h, [QI(F(3, 2), -1)], [QI(F(1, 2), 1)])
    assert pe.pf_K_minor(*args) == pe.pf_K_minor(*args, method="inverse")
