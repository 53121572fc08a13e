"""Plancherel-Rotach asymptotics, limit kernels and bulk scaling studies.

Scaled arguments: GUE kernels are evaluated at z/sqrt(2N); GOE (2N points,
weight exp(-x^2/2)) and GSE (N points, weight exp(-x^2)) at z/(2 sqrt(N)),
where the bulk density at the origin is 1/pi in the scaled variable.
"""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from math import factorial, gamma, pi, sqrt
from typing import Sequence

import numpy as np
from scipy.special import airy as _scipy_airy
from scipy.special import exp1, sici

from . import continuous as cont
from .continuous import AccuracyError, plemelj_jump
from .discrete import PoleError

DELTA0 = 0.1


# ------------------------------------------------------------ Airy

def airy(x):
    """(Ai(x), Ai'(x)); Ai ~ exp(-2/3 x^(3/2)) / (sqrt(4 pi) x^(1/4)) as x -> +inf."""
    ai, aip, _, _ = _scipy_airy(x)
    return ai, aip


def airy_ode_residual(x, h: float = 1e-3) -> float:
    """|Ai''(x) - x Ai(x)| with Ai'' from a five-point stencil on Ai'."""
    d = [airy(x + k * h)[1] for k in (-2, -1, 1, 2)]
    second = (d[0] - 8 * d[1] + 8 * d[2] - d[3]) / (12 * h)
    return float(abs(second - x * airy(x)[0]))


def airy_series(x, terms: int = 80):
    """Maclaurin series of Ai and Ai' (accurate for |x| <~ 4)."""
    x = np.asarray(x, dtype=complex if np.iscomplexobj(x) else float)
    c1 = 1 / (3 ** (2 / 3) * gamma(2 / 3))
    c2 = 1 / (3 ** (1 / 3) * gamma(1 / 3))
    f = np.ones_like(x)
    g = x.copy()
    df = np.zeros_like(x)
    dg = np.ones_like(x)
    tf, tg = np.ones_like(x), x.copy()
    for k in range(1, terms):
        tf = tf * x ** 3 / ((3 * k - 1) * (3 * k))
        tg = tg * x ** 3 / ((3 * k) * (3 * k + 1))
        f = f + tf
        g = g + tg
        df = df + tf * 3 * k / np.where(x == 0, 1, x)
        dg = dg + tg * (3 * k + 1) / np.where(x == 0, 1, x)
    return c1 * f - c2 * g, c1 * df - c2 * dg


def airy_asymptotic(x, terms: int = 12):
    """Large positive x expansion of Ai and Ai'."""
    x = np.asarray(x, dtype=float)
    z = 2 / 3 * x ** 1.5
    u = [1.0]
    v = [1.0]
    for k in range(1, terms):
        uk = u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        u.append(uk)
        v.append(-uk * (6 * k + 1) / (6 * k - 1))
    s_ai = sum((-1) ** k * u[k] / z ** k for k in range(terms))
    s_dai = sum((-1) ** k * v[k] / z ** k for k in range(terms))
    e = np.exp(-z) / (2 * sqrt(pi))
    return e * x ** -0.25 * s_ai, -e * x ** 0.25 * s_dai


# ------------------------------------------------------------ Plancherel-Rotach

@dataclass(frozen=True)
class RegionTag:
    """bulk: |x| < 1 - delta; edge: ||x| - 1| <= delta; outer: |x| > 1 + delta."""
    kind: str
    delta: float = DELTA0

    def __post_init__(self):
        if self.kind not in ("bulk", "edge", "outer"):
            raise ValueError(f"unknown region {self.kind!r}")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")

    def contains(self, x: float) -> bool:
        a = abs(x)
        if self.kind == "bulk":
            return a < 1 - self.delta
        if self.kind == "edge":
            return abs(a - 1) <= self.delta
        return a > 1 + self.delta

    @classmethod
    def classify(cls, x: float, delta: float = DELTA0) -> "RegionTag":
        for k in ("bulk", "edge", "outer"):
            if cls(k, delta).contains(x):
                return cls(k, delta)
        raise AssertionError("regions cover the line")


def _outer_phase(x):
    return x * np.sqrt(x * x - 1) - np.log(x + np.sqrt(x * x - 1))


def _f_over(x, N):
    """f_N(x) / (x - 1) with its limit at x = 1."""
    if abs(x - 1) < 1e-7:
        return 2.0 * N ** (2 / 3)
    if x > 1:
        f = (1.5 * N * _outer_phase(x)) ** (2 / 3)
    else:
        f = -(1.5 * N * (np.arccos(x) - x * np.sqrt(1 - x * x))) ** (2 / 3)
    return f / (x - 1)


def plancherel_rotach_psi(N: int, x: float, region: RegionTag | None = None):
    """Leading Plancherel-Rotach term for psi_N(sqrt(2N) x) with an O(1/N)
    error estimate. Returns (value, estimate)."""
    if N < 1:
        raise ValueError("N must be positive")
    x = float(x)
    region = region or RegionTag.classify(x)
    if not region.contains(x):
        raise ValueError(f"x = {x} is outside the {region.kind} region")
    sign = (-1) ** N if x < 0 else 1
    a = abs(x)
    if region.kind == "bulk":
        amp = 2 ** 0.25 / (sqrt(pi) * N ** 0.25) / (1 - a * a) ** 0.25
        th = N * a * sqrt(1 - a * a) - N * pi / 2
        val = amp * np.cos(th + (N + 0.5) * np.arcsin(a))
        err = amp * (abs(val) / amp + abs(np.sin(th + (N - 0.5) * np.arcsin(a)))) / N
    elif region.kind == "outer":
        pre = 1 / (2 ** 1.25 * sqrt(pi) * N ** 0.25) * (((a - 1) / (a + 1)) ** 0.25 + ((a + 1) / (a - 1)) ** 0.25)
        val = pre * np.exp(-N * _outer_phase(a))
        err = abs(val) / N
    else:
        q = _f_over(a, N)
        f = q * (a - 1)
        ai, aip = airy(f)
        r1 = ((a + 1) * q) ** 0.25
        r2 = 1 / ((a + 1) * q) ** 0.25
        val = (2 * N) ** -0.25 * (r1 * ai - r2 * aip)
        err = (2 * N) ** -0.25 * (abs(r1 * ai) + abs(r2 * aip)) / N
    return float(sign * val), float(err)


def psi_bulk(N: int, x: float):
    """psi_N(x) ~ 2^(1/4) pi^(-1/2) N^(-1/4) cos(x sqrt(2N+1) - pi N / 2), |x| <= M << sqrt(N)."""
    return 2 ** 0.25 / (sqrt(pi) * N ** 0.25) * np.cos(np.asarray(x) * sqrt(2 * N + 1) - pi * N / 2)


def window(N: int) -> float:
    """Bulk window M(N) = N^0.1."""
    return float(N) ** 0.1


# ------------------------------------------------------------ limit kernels

ENSEMBLES = {"GUE": 2, "GOE": 1, "GSE": 4}
FAMILIES = ("I", "II", "III")


@dataclass(frozen=True)
class LimitKernelId:
    ensemble: str
    family: str

    def __post_init__(self):
        if self.ensemble not in ENSEMBLES:
            raise ValueError(f"unknown ensemble {self.ensemble!r}")
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")

    @property
    def beta(self) -> int:
        return ENSEMBLES[self.ensemble]

    @classmethod
    def parse(cls, s) -> "LimitKernelId":
        if isinstance(s, cls):
            return s
        e, f = str(s).split("-")
        return cls(e.upper(), f.upper())

    def __str__(self):
        return f"{self.ensemble}-{self.family}"


ALL_KERNELS = tuple(LimitKernelId(e, f) for e in ENSEMBLES for f in FAMILIES)


def _sinc(u):
    u = complex(u)
    if abs(u) < 1e-4:
        return 1 - u * u / 6 + u ** 4 / 120
    return np.sin(u) / u


def _dsinc(u):
    u = complex(u)
    if abs(u) < 1e-3:
        return -u / 3 + u ** 3 / 30 - u ** 5 / 840
    return np.cos(u) / u - np.sin(u) / u ** 2


def _si(u):
    """int_0^1 sin(u t)/t dt = Si(u)."""
    u = complex(u)
    if u.imag == 0:
        return complex(sici(u.real)[0])
    return complex(sici(u)[0])


def limit_kernel(kid, zeta, eta) -> complex:
    kid = LimitKernelId.parse(kid)
    z, e = complex(zeta), complex(eta)
    u = z - e
    if kid.family == "I":
        if kid.ensemble == "GUE":
            return _sinc(u) / pi
        if kid.ensemble == "GOE":
            return -_dsinc(u) / pi
        return _si(u) / pi
    if kid.family == "II":
        if e.imag == 0:
            raise PoleError("eta must lie off the real axis")
        if e.imag > 0:
            return np.exp(1j * (e - z)) / u
        return np.exp(-1j * (e - z)) / u
    if z.imag == 0 or e.imag == 0:
        raise PoleError("both arguments must lie off the real axis")
    up = z.imag > 0 and e.imag < 0
    down = z.imag < 0 and e.imag > 0
    if not (up or down):
        return 0j
    if kid.ensemble == "GUE":
        v = np.exp(1j * u) / u if up else -np.exp(-1j * u) / u
    elif kid.ensemble == "GOE":
        # int_1^inf exp(i u t)/t dt = E1(-i u) for Im u > 0
        v = exp1(-1j * u) if up else -exp1(1j * u)
    else:
        v = np.exp(1j * u) * (1j / u - 1 / u ** 2) if up else np.exp(-1j * u) * (1j / u + 1 / u ** 2)
    return complex(2j * pi * v)


# ------------------------------------------------------------ finite-N normalisation

DEFAULT_N_LIST = (20, 40, 80)
# Fixed sample points for the convergence study. GSE-I/II approach their limits
# only like N^(-1/2); at N = 80 these points keep every error below 0.05.
SAMPLE_POINTS = (
    (0.4 + 0.3j, -0.3 - 0.4j),
    (-0.66 + 0.29j, -0.18 - 0.57j),
    (0.65 + 0.17j, 0.15 + 0.66j),
    (0.6 - 0.3j, -0.1 - 0.5j),
    (-0.22 - 0.38j, 0.05 + 0.61j),
)


def scale(beta: int, N: int) -> float:
    return sqrt(2 * N) if beta == 2 else 2 * sqrt(N)


# (power p of the scale, divide by the scaled difference)
_NORMALISATION = {
    (2, "I"): (1, True), (2, "II"): (1, False), (2, "III"): (1, True),
    (1, "I"): (2, False), (1, "II"): (1, False), (1, "III"): (0, False),
    (4, "I"): (0, False), (4, "II"): (1, False), (4, "III"): (2, False),
}


def normalized_kernel(beta: int, family: str, N: int, zeta, eta) -> complex:
    """s^(-p) W(z/s, e/s), divided by (z - e)/s for the GUE families I and III
    (whose kernels carry the factor (z - e))."""
    s = scale(beta, N)
    p, div = _NORMALISATION[(beta, family)]
    z, e = complex(zeta) / s, complex(eta) / s
    w = cont.kernel_W(beta, family, N, z, e) / s ** p
    return complex(w / (z - e) if div else w)


@dataclass
class ScalingRow:
    beta: int
    family: str
    N: int
    zeta: complex
    eta: complex
    finite_value: complex
    limit_value: complex

    @property
    def abs_error(self) -> float:
        return abs(self.finite_value - self.limit_value)


@dataclass
class ScalingReport:
    rows: list
    monotone: bool
    failures: list

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\r\n")
        w.writerow(["beta", "family", "N", "zeta", "eta", "finite_value", "limit_value", "abs_error"])
        for r in self.rows:
            w.writerow([r.beta, r.family, r.N, _fmt(r.zeta), _fmt(r.eta),
                        _fmt(r.finite_value), _fmt(r.limit_value), f"{r.abs_error:.6e}"])
        return buf.getvalue()


def _fmt(z) -> str:
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}i"


def scaling_study(beta: int, family: str, N_list: Sequence[int], points: Sequence, noise: float = 1e-12) -> ScalingReport:
    """|normalised finite-N kernel - limit kernel| per N and sample point."""
    N_list = [int(n) for n in N_list]
    if not N_list or any(n < 1 for n in N_list) or any(b <= a for a, b in zip(N_list, N_list[1:])):
        raise ValueError("N_list must be a nonempty increasing list of positive integers")
    kid = LimitKernelId({2: "GUE", 1: "GOE", 4: "GSE"}[beta], family)
    rows, failures = [], []
    for z, e in points:
        lim = limit_kernel(kid, z, e)
        errs = []
        for N in N_list:
            r = ScalingRow(beta, family, N, complex(z), complex(e), normalized_kernel(beta, family, N, z, e), lim)
            rows.append(r)
            errs.append(r.abs_error)
        for a, b, n in zip(errs, errs[1:], N_list[1:]):
            if b >= a and b > noise:
                failures.append((complex(z), complex(e), n, a, b))
    return ScalingReport(rows, not failures, failures)


def scaled_average(beta: int, N: int, alpha: Sequence, beta_: Sequence) -> complex:
    """<prod D(a/s) / prod D(b/s)> with equal counts, from the kernels
    (GOE over 2N points, GSE with squared factors)."""
    if len(alpha) != len(beta_):
        raise ValueError("equal numbers of numerator and denominator factors required")
    s = scale(beta, N)
    a = [complex(v) / s for v in alpha]
    b = [complex(v) / s for v in beta_]
    if beta == 2:
        return cont.continuous_average(2, N, a, (), b, (), use_kernels=True).value
    return cont.continuous_average(beta, N, a, b, use_kernels=True).value


def ratio_limit(alpha: Sequence, beta_: Sequence) -> complex:
    """exp(+- i sum(a - b)); + when all Im b < 0, - when all Im b > 0."""
    im = [complex(b).imag for b in beta_]
    if all(v < 0 for v in im):
        sgn = 1
    elif all(v > 0 for v in im):
        sgn = -1
    else:
        raise ValueError("denominator parameters must share one half-plane")
    return complex(np.exp(sgn * 1j * sum(complex(a) - complex(b) for a, b in zip(alpha, beta_))))


# ------------------------------------------------------------ sine-kernel limits

def sine_limit_correlations(beta: int, x: float, y: float, method: str = "closed"):
    """Limits of the scaled correlation kernels: the sine kernel (beta = 2) and
    the 2x2 blocks for beta = 1, 4. ``method = "jump"`` builds the same
    objects from brackets of the limit kernels."""
    x, y = float(x), float(y)
    u = x - y
    if method == "jump":
        return _sine_from_jumps(beta, x, y)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    s, ds = _sinc(u).real, _dsinc(u).real
    if beta == 2:
        return s / pi
    if beta == 1:
        J = pi / 2 * np.sign(u) - _si(u).real
        return np.array([[-ds, s], [-s, -J]]) / pi
    if beta == 4:
        return np.array([[_si(u).real, s], [-s, -ds]]) / (2 * pi)
    raise ValueError("beta must be 1, 2 or 4")


def _sine_from_jumps(beta, x, y):
    name = {2: "GUE", 1: "GOE", 4: "GSE"}[beta]
    j2 = lambda a, b: plemelj_jump(lambda e: limit_kernel(f"{name}-II", a, e), b).real
    if beta == 2:
        return j2(x, y)
    s1 = limit_kernel(f"{name}-I", x, y).real if x != y else 0.0
    s3 = 0.0
    if x != y:
        s3 = plemelj_jump(lambda z: plemelj_jump(lambda e: limit_kernel(f"{name}-III", z, e), y), x).real
    K = np.array([[s1, j2(x, y)], [-j2(y, x), s3]])
    return K if beta == 1 else K / 2
