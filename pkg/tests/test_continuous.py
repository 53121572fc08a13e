import numpy as np
import pytest
from hypothesis import assume, given, strategies as st
from scipy.special import wofz

from charpoly import continuous as c
from charpoly.discrete import PoleError

OFF = st.builds(complex, st.floats(-1.5, 1.5), st.floats(0.2, 1.2)) | \
    st.builds(complex, st.floats(-1.5, 1.5), st.floats(-1.2, -0.2))


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# ------------------------------------------------------------ quadrature averages

def test_quadrature_trivial_and_heine():
    assert abs(c.quadrature_average(2, 3) - 1) < 1e-12
    for z in (0.3 + 0.2j, -1.1 + 0j, 2j):
        assert rel(c.quadrature_average(2, 2, numer=[z]), z * z - 0.5) < 1e-10
        assert rel(c.quadrature_average(2, 1, numer=[z]), z) < 1e-10


def test_quadrature_pole_error():
    with pytest.raises(PoleError):
        c.quadrature_average(2, 2, denom=[0.5])


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_quadrature_matches_tensor(beta):
    z, e = 0.4 + 0.3j, -0.2 - 0.7j
    n = 2 if beta == 1 else 2
    assert rel(c.quadrature_average(beta, n, numer=[z], denom=[e]),
               c.tensor_average(beta, n, numer=[z], denom=[e])) < 1e-8


# ------------------------------------------------------------ Hermite functions

def test_hermite_psi_values():
    assert abs(c.hermite_psi(0, 0.0) - np.pi ** -0.25) < 1e-15
    assert abs(c.hermite_psi(1, 0.0)) < 1e-15
    assert abs(c.hermite_norm(0) - np.pi ** 0.25) < 1e-15
    x, w = np.polynomial.hermite.hermgauss(64)
    vals = c.hermite_psi_all(6, x) * np.exp(x * x / 2)
    G = (vals * w) @ vals.T
    assert abs(G[5, 5] - 1) < 1e-12
    assert np.allclose(G, np.eye(7), atol=1e-12)


@given(OFF, st.integers(0, 12))
def test_Psi_conjugation_and_parity(z, n):
    P = c.hermite_Psi(n, z)
    assert rel(c.hermite_Psi(n, z.conjugate()), P.conjugate()) < 1e-10
    assert rel(c.hermite_Psi(n, -z), (-1) ** (n + 1) * P) < 1e-10


def test_Psi_real_axis_rejected():
    with pytest.raises(PoleError):
        c.hermite_Psi(2, 0.5)


def test_wronskian_at_i():
    N, z = 10, 1j
    P, p = c.hermite_Psi_all(N, z), c.hermite_psi_all(N, z)
    lhs = P[N] * p[N - 1] - P[N - 1] * p[N]
    assert rel(lhs, c.hermite_norm(9) / c.hermite_norm(10) * np.exp(0.5)) < 1e-10


@given(st.sampled_from([1, 3, 8, 17, 30, 40]), st.floats(-3, 3),
       st.floats(0.1, 2), st.sampled_from([-1, 1]))
def test_wronskian_property(N, re, im, sgn):
    z = complex(re, sgn * im)
    P, p = c.hermite_Psi_all(N, z), c.hermite_psi_all(N, z)
    lhs = P[N] * p[N - 1] - P[N - 1] * p[N]
    assert rel(lhs, c.hermite_norm(N - 1) / c.hermite_norm(N) * np.exp(-z * z / 2)) < 1e-10


def test_monic_poly_is_hermite():
    for n in range(7):
        z = 0.7 - 0.4j
        assert rel(c.monic_poly(c.GAUSSIAN, n, z), np.polynomial.hermite.Hermite.basis(n)(z) / 2 ** n) < 1e-12


# ------------------------------------------------------------ W kernels

def test_gue_family_I_example():
    z, e = 1.0, 0.0
    h2 = c.hermite_norm(2) ** 2
    expect = (z - e) * c.quadrature_average(2, 2, numer=[z, e]) / h2
    assert rel(c.kernel_W(2, "I", 2, z, e), expect) < 1e-10


@pytest.mark.parametrize("beta", [1, 2, 4])
@pytest.mark.parametrize("family", ["I", "II", "III"])
def test_kernel_W_vs_defining_average(beta, family):
    z, e = 0.3 + 0.5j, -0.6 - 0.4j
    for N in (1, 2):
        assert rel(c.kernel_W(beta, family, N, z, e), c.kernel_W_average(beta, family, N, z, e)) < 1e-8


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_kernel_W_symmetries(beta):
    z, e = 0.3 + 0.5j, -0.6 - 0.4j
    # the averages are symmetric, so the (z - e) prefactor makes W odd
    for fam in ("I", "III"):
        sym = c.kernel_W(beta, fam, 2, z, e) / (z - e)
        assert rel(c.kernel_W(beta, fam, 2, e, z) / (e - z), sym) < 1e-10


def test_kernel_W_domains():
    with pytest.raises(PoleError):
        c.kernel_W(2, "II", 2, 0.3j, 0.5)
    with pytest.raises(PoleError):
        c.kernel_W(4, "III", 2, 0.3, 0.5j)


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_family_II_coincident_limit(beta):
    z = 0.4 + 0.6j
    for d in (1e-3, 1e-5):
        e = z + d
        assert abs((z - e) * c.kernel_W(beta, "II", 3, z, e) - 1) < 10 * d


def test_aux_integrals():
    e = 0.3 + 0.8j
    for N in (1, 3, 6):
        I = c.aux_integrals("I_N", N, e)
        assert rel(c.aux_integrals("I_N", N, e.conjugate()), I.conjugate()) < 1e-9
    z = -0.5 + 0.4j
    E = c.aux_integrals("E_N", 4, z, e)
    assert rel(c.aux_integrals("E_N", 4, z.conjugate(), e.conjugate()), E.conjugate()) < 1e-9
    F = c.aux_integrals("F_N", 4, 1j, -1j)
    assert rel(c.aux_integrals("F_N", 4, 1j, -1j, order=48), F) < 1e-6


# ------------------------------------------------------------ average theorems

def test_beta2_single_ratio_tautology():
    a, b = 0.4 + 0.1j, -0.3 + 0.6j
    for N in (2, 3):
        rhs = c.continuous_average(2, N, [a], [], [b], []).value
        assert rel(rhs, c.quadrature_average(2, N, numer=[a], denom=[b])) < 1e-9


def test_beta1_product_pair():
    a, b = 0.4 + 0.1j, -0.3 + 0.6j
    res = c.continuous_average(1, 1, [a, b])
    assert res.W.shape == (2, 2)
    assert rel(res.value, c.quadrature_average(1, 2, numer=[a, b])) < 1e-8


def test_beta4_single_ratio():
    a, b = 0.4 + 0.1j, -0.3 + 0.6j
    res = c.continuous_average(4, 2, [a], [b])
    assert rel(res.value, c.tensor_average(4, 2, numer=[a], denom=[b])) < 1e-7


@given(st.sampled_from([1, 2, 4]), OFF, OFF, OFF, OFF)
def test_theorems_property(beta, a, b, d, g):
    pts = [a, b, d, g, 0.5 * g]
    assume(min(abs(p - q) for i, p in enumerate(pts) for q in pts[:i]) > 0.05)
    if beta == 2:
        N = 2
        lhs = c.tensor_average(2, N, numer=[a, d], denom=[b, g])
        rhs = c.continuous_average(2, N, [a], [d], [b], [g]).value
    elif beta == 1:
        lhs = c.tensor_average(1, 2, numer=[a, d, 0.5 * g], denom=[b])
        rhs = c.continuous_average(1, 1, [a, d, 0.5 * g], [b]).value
    else:
        lhs = c.tensor_average(4, 2, numer=[a, d], denom=[b, g])
        rhs = c.continuous_average(4, 2, [a, d], [b, g]).value
    assert rel(rhs, lhs) < 1e-6


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_kernel_route_matches_quadrature_route(beta):
    a, b, d, g = 0.4 + 0.1j, -0.3 + 0.6j, 0.9 - 0.2j, 0.1 - 0.5j
    if beta == 2:
        args = ([a], [d], [b], [g])
        x = c.continuous_average(2, 3, *args).value
        y = c.continuous_average(2, 3, *args, use_kernels=True).value
    else:
        x = c.continuous_average(beta, 2, [a, d], [b, g]).value
        y = c.continuous_average(beta, 2, [a, d], [b, g], use_kernels=True).value
    assert rel(y, x) < 1e-8


# ------------------------------------------------------------ Plemelj and correlations

def _cauchy_gauss(z):
    # int exp(-t^2) / (t - z) dt
    if z.imag > 0:
        return 1j * np.pi * wofz(z)
    return np.conj(1j * np.pi * wofz(np.conj(z)))


def test_plemelj_density_sign():
    for x in (-0.7, 0.0, 1.3):
        assert abs(c.plemelj_jump(_cauchy_gauss, x) + np.exp(-x * x)) < 1e-6


def test_plemelj_entire():
    assert abs(c.plemelj_jump(lambda z: np.exp(z) * z ** 3, 0.4)) < 1e-6


def test_beta2_kernel_is_christoffel_darboux():
    N = 3
    for x, y in ((0.3, -0.5), (1.1, 0.2), (0.4, 0.4)):
        # the jump gives the gauge w(y) sum pi_k(x) pi_k(y) / h_k
        cd = float(c.hermite_psi_all(N - 1, x) @ c.hermite_psi_all(N - 1, y))
        k = c.correlation_kernel(2, N, x, y)
        assert abs(k - cd * np.exp((x * x - y * y) / 2)) < 1e-6
        assert abs(np.exp(-x * x) * k - np.exp(-y * y) * c.correlation_kernel(2, N, y, x)) < 1e-6


def test_beta2_density_integrates_to_N():
    x, w = np.polynomial.hermite.hermgauss(40)
    vals = np.array([c.correlation_kernel(2, 2, t, t).real for t in x]) * np.exp(x * x)
    assert abs(w @ vals - 2) < 1e-8


def test_beta1_density():
    grid = np.linspace(-6, 6, 121)
    rho = np.array([c.correlation_function(1, 1, [t]) for t in grid])
    assert rho.min() >= -1e-12
    from scipy.integrate import simpson
    assert abs(simpson(rho, x=grid) - 2) < 1e-5


@pytest.mark.parametrize("beta,N", [(1, 1), (4, 2), (2, 2)])
def test_correlations_vs_oracle(beta, N):
    n = 2 * N if beta == 1 else N
    for xs in ([0.3], [0.3, -0.5]):
        assert rel(c.correlation_function(beta, N, xs), c.correlation_oracle(beta, n, xs)) < 1e-5


# ------------------------------------------------------------ lattice and constants

def test_lattice_convergence():
    numer, denom = [0.3 + 0.4j], [-0.2 + 0.5j]
    exact = c.quadrature_average(2, 2, numer=numer, denom=denom)
    errs = [abs(c.lattice_average_beta2(2, M, numer, denom) - exact) for M in (50, 100, 200)]
    assert errs[0] > errs[1] > errs[2]


def test_gaussian_constants():
    g1 = c.gaussian_constants(2, 1)
    assert abs(g1["quadrature"] - np.sqrt(np.pi)) < 1e-12 and g1["match"]
    g2 = c.gaussian_constants(2, 2)
    assert abs(g2["quadrature"] - np.pi / 2) < 1e-12
    assert not g2["match"]
    assert c.gaussian_constants(4, 0)["quadrature"] == 1.0
