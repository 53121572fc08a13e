import csv
import math
import io

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from charpoly import asymptotics as a
from charpoly import continuous as c

UPPER = st.builds(complex, st.floats(-2, 2), st.floats(0.2, 1.0))
LOWER = st.builds(complex, st.floats(-2, 2), st.floats(-1.0, -0.2))


def exact_psi(N, x):
    return c.hermite_psi_all(N, np.asarray(x, dtype=float))[N]


# ------------------------------------------------------------ Airy

def test_airy_zero_value():
    ai0 = 1 / (3 ** (2 / 3) * math.gamma(2 / 3))
    assert abs(a.airy_series(0.0)[0] - 0.3550280539) < 1e-10
    assert abs(a.airy(0.0)[0] - ai0) < 1e-15


def test_airy_series_matches():
    x = np.linspace(-4, 4, 33)
    ai, aip = a.airy(x)
    s, ds = a.airy_series(x)
    assert np.allclose(s, ai, atol=1e-10) and np.allclose(ds, aip, atol=1e-10)


def test_airy_normalisation_limit():
    devs = []
    for x in (8.0, 12.0, 20.0):
        z = 2 / 3 * x ** 1.5
        ai = a.airy(x)[0]
        assert abs(a.airy_asymptotic(x)[0] / ai - 1) < 1e-10
        dev = abs(ai * np.sqrt(4 * np.pi) * x ** 0.25 * np.exp(z) - 1)
        assert dev < 5 / (72 * z) * 1.01
        devs.append(dev)
    assert devs[0] > devs[1] > devs[2]


def test_airy_ode_residual_grid():
    for x in np.linspace(-10, 5, 61):
        assert a.airy_ode_residual(x) < 1e-10


# ------------------------------------------------------------ Plancherel-Rotach

def test_regions():
    assert a.RegionTag.classify(0.5).kind == "bulk"
    assert a.RegionTag.classify(-1.05).kind == "edge"
    assert a.RegionTag.classify(1.5).kind == "outer"
    with pytest.raises(ValueError):
        a.plancherel_rotach_psi(50, 0.5, a.RegionTag("outer"))
    with pytest.raises(ValueError):
        a.RegionTag("middle")


def test_outer_ratio():
    N, x = 50, 1.5
    v, _ = a.plancherel_rotach_psi(N, x)
    assert 0.9 <= v / exact_psi(N, np.sqrt(2 * N) * x) <= 1.1


def test_bulk_sign_at_origin():
    for N in (40, 50, 60, 70):
        v, _ = a.plancherel_rotach_psi(N, 0.0)
        assert np.sign(v) == np.sign(exact_psi(N, 0.0))


def test_edge_finite_and_close():
    v, err = a.plancherel_rotach_psi(50, 1.0)
    assert np.isfinite(v)
    assert abs(v - exact_psi(50, 10.0)) < err


@pytest.mark.parametrize("N", [50, 51, 200])
@pytest.mark.parametrize("x", [-0.6, 0.3, 0.95, 1.05, 1.3])
def test_error_estimate_bounds(N, x):
    v, err = a.plancherel_rotach_psi(N, x)
    assert abs(v - exact_psi(N, np.sqrt(2 * N) * x)) <= err + 1e-15


def test_bulk_error_shrinks_with_N():
    e = [abs(a.plancherel_rotach_psi(N, 0.3)[0] - exact_psi(N, np.sqrt(2 * N) * 0.3)) for N in (50, 200)]
    assert e[1] < e[0] / 2


def test_psi_bulk_origin_and_parity():
    ex = exact_psi(100, 0.0)
    assert abs(a.psi_bulk(100, 0.0) - ex) / abs(ex) < 1e-2
    for N in (100, 101):
        assert abs(a.psi_bulk(N, -0.7) - (-1) ** N * a.psi_bulk(N, 0.7)) < 1e-14


def test_psi_bulk_half_law():
    x = np.linspace(-2, 2, 4001)
    errs = []
    for N in (100, 400):
        ex = exact_psi(N, x)
        errs.append(np.max(np.abs(a.psi_bulk(N, x) - ex)) / np.max(np.abs(ex)))
    assert 1.8 <= errs[0] / errs[1] <= 2.2


# ------------------------------------------------------------ limit kernels

def test_sine_kernel_values():
    assert abs(a.limit_kernel("GUE-I", 0.7, 0.7) - 1 / np.pi) < 1e-15
    assert abs(a.limit_kernel("GUE-I", np.pi + 0.2, 0.2)) < 1e-15


def test_goe_iii_same_half_plane_vanishes():
    assert a.limit_kernel("GOE-III", 0.5 + 1j, 0.2 + 0.3j) == 0


def test_goe_ii_value():
    z, e = 0.5, 1j
    assert abs(a.limit_kernel("GOE-II", z, e) - np.exp(1j * (e - z)) / (z - e)) < 1e-15


def test_kernel_ids():
    assert a.LimitKernelId.parse("gse-iii").beta == 4
    assert len(a.ALL_KERNELS) == 9
    with pytest.raises(ValueError):
        a.LimitKernelId("CUE", "I")


@given(UPPER | LOWER, UPPER | LOWER)
def test_family_ii_coincidence(z, e):
    assume(abs(z - e) > 1e-3)
    g = a.limit_kernel("GUE-II", z, e)
    for name in ("GOE-II", "GSE-II"):
        assert abs(a.limit_kernel(name, z, e) - g) <= 1e-12 * max(1.0, abs(g))


# ------------------------------------------------------------ scaling studies

def test_scaling_gue_i_monotone():
    rep = a.scaling_study(2, "I", (20, 40, 80), [(1.0, 0.0)])
    assert rep.monotone and len(rep.rows) == 3
    errs = [r.abs_error for r in rep.rows]
    assert errs[0] > errs[1] > errs[2]


def test_scaling_goe_ii_converges():
    rep = a.scaling_study(1, "II", (20, 40, 80), [(0.5, 1j)])
    assert rep.monotone
    assert rep.rows[-1].abs_error < 5e-2


def test_scaling_rejects_bad_lists():
    for bad in ([], [20, 20], [40, 20], [0, 10]):
        with pytest.raises(ValueError):
            a.scaling_study(2, "I", bad, [(1.0, 0.0)])


def test_scaling_csv():
    rep = a.scaling_study(2, "II", (10, 20), [(0.3, 0.5j)])
    text = rep.to_csv()
    assert text.endswith("\r\n")
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["beta", "family", "N", "zeta", "eta", "finite_value", "limit_value", "abs_error"]
    assert len(rows) == 3 and rows[1][:3] == ["2", "II", "10"]


@pytest.mark.parametrize("beta", [1, 2, 4])
def test_ratio_limit_same_count(beta):
    alpha, bet = [0.3, -0.4 + 0.1j], [0.2 - 0.6j, -0.5 - 0.3j]
    val = a.scaled_average(beta, 80, alpha, bet)
    assert abs(val - a.ratio_limit(alpha, bet)) < 5e-2


def test_ratio_limit_signs():
    assert abs(a.ratio_limit([1.0], [-0.5j]) - np.exp(1j * (1 + 0.5j))) < 1e-15
    assert abs(a.ratio_limit([1.0], [0.5j]) - np.exp(-1j * (1 - 0.5j))) < 1e-15
    with pytest.raises(ValueError):
        a.ratio_limit([0, 0], [1j, -1j])


# ------------------------------------------------------------ correlation limits

@pytest.mark.parametrize("beta", [1, 2, 4])
@pytest.mark.parametrize("xy", [(0.7, -0.4), (1.9, 0.3), (-2.5, 0.6)])
def test_sine_limits_closed_vs_jump(beta, xy):
    closed = a.sine_limit_correlations(beta, *xy)
    jump = a.sine_limit_correlations(beta, *xy, method="jump")
    assert np.allclose(closed, jump, atol=1e-5)


def test_sine_kernel_jump_and_diagonal():
    x, y = 0.9, -0.3
    assert abs(a.sine_limit_correlations(2, x, y, "jump") - np.sin(x - y) / (np.pi * (x - y))) < 1e-6
    assert abs(a.sine_limit_correlations(2, 0.4, 0.4) - 1 / np.pi) < 1e-15


def test_gse_iii_double_jump():
    x, y = 0.8, -0.5
    u = x - y
    dsinc = (u * np.cos(u) - np.sin(u)) / u ** 2
    j = c.plemelj_jump(lambda z: c.plemelj_jump(lambda e: a.limit_kernel("GSE-III", z, e), y), x)
    assert abs(j + dsinc / np.pi) < 1e-5
