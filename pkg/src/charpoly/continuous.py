"""Continuous beta = 1, 2, 4 ensembles.

Averages over ``p_N^(beta)`` are reduced to one-dimensional integrals
(Andreief for beta = 2, de Bruijn pfaffians for beta = 1, 4) and evaluated
with composite Gauss-Legendre rules whose panels are refined near the real
parts of complex poles.  Every quadrature result is accepted only when the
rule with doubled node count agrees.

Weight tags: ``"gaussian"`` is ``exp(-x^2)``, ``"gaussian_half"`` is
``exp(-x^2/2)``; beta = 1 uses the latter, beta = 2, 4 the former.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial, gamma, lgamma, log, pi, sqrt
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import legendre as npleg
from scipy.special import wofz

from . import linalg as la
from .discrete import PoleError


class AccuracyError(ArithmeticError):
    pass


# ------------------------------------------------------------ weights

@dataclass(frozen=True)
class ContinuousWeight:
    tag: str = "gaussian"
    A: float | None = None
    order: int = 16
    panel: float = 0.5
    table: tuple | None = None

    def __post_init__(self):
        if self.tag not in ("gaussian", "gaussian_half", "tabulated"):
            raise ValueError(f"unknown weight tag {self.tag!r}")
        if self.tag == "tabulated":
            if self.table is None:
                raise ValueError("tabulated weight needs (xs, ys)")
            xs, ys = (np.asarray(t, dtype=float) for t in self.table)
            if np.any(ys < 0):
                raise ValueError("density must be nonnegative")
            if np.any(np.diff(xs) <= 0):
                raise ValueError("table abscissae must increase")
            object.__setattr__(self, "table", (tuple(xs), tuple(ys)))

    def density(self, x):
        x = np.asarray(x)
        if self.tag == "gaussian":
            return np.exp(-x * x)
        if self.tag == "gaussian_half":
            return np.exp(-x * x / 2)
        xs, ys = self.table
        return np.interp(x, xs, ys, left=0.0, right=0.0)

    def bound(self, degree: int = 0) -> float:
        """Truncation bound: the tail of x^degree * density is below 1e-18."""
        if self.A is not None:
            return float(self.A)
        if self.tag == "tabulated":
            return float(max(abs(self.table[0][0]), abs(self.table[0][-1])))
        s = 1.0 if self.tag == "gaussian" else sqrt(2.0)
        # exp(-t^2) t^degree < 1e-18 well past the turning point
        return s * (sqrt(max(degree, 1) / 2.0) + sqrt(42.0 + degree / 2.0))

    def with_order(self, order: int) -> "ContinuousWeight":
        return ContinuousWeight(self.tag, self.A, order, self.panel, self.table)


GAUSSIAN = ContinuousWeight("gaussian")
GAUSSIAN_HALF = ContinuousWeight("gaussian_half")


def default_weight(beta: int) -> ContinuousWeight:
    if beta not in (1, 2, 4):
        raise ValueError("beta must be 1, 2 or 4")
    return GAUSSIAN_HALF if beta == 1 else GAUSSIAN


# ------------------------------------------------------------ quadrature

@lru_cache(maxsize=None)
def _reference_panel(p: int):
    """Gauss-Legendre nodes/weights on [-1, 1] and the matrix S with
    (S f)_k = integral from -1 to t_k of the degree p-1 interpolant."""
    t, w = npleg.leggauss(p)
    V = npleg.legvander(t, p - 1)
    P = np.zeros((p, p))
    for j in range(p):
        c = np.zeros(j + 1)
        c[j] = 1.0
        ic = npleg.legint(c, lbnd=-1)
        P[:, j] = npleg.legval(t, ic)
    S = P @ np.linalg.inv(V)
    return t, w, S


@dataclass
class Rule:
    """Composite Gauss-Legendre rule on [-A, A]."""
    x: np.ndarray
    w: np.ndarray
    breaks: np.ndarray
    order: int

    def integrate(self, f) -> complex:
        return np.dot(self.w, f)

    def cumulative(self, f: np.ndarray) -> np.ndarray:
        """integral from -A to x_k of f, for every node, along the last axis."""
        p = self.order
        _, w, S = _reference_panel(p)
        f = np.asarray(f)
        shape = f.shape[:-1] + (len(self.breaks) - 1, p)
        fp = f.reshape(shape)
        half = (np.diff(self.breaks) / 2)
        inner = np.einsum("kj,...mj->...mk", S, fp) * half[:, None]
        totals = np.einsum("j,...mj->...m", w, fp) * half
        offs = np.cumsum(totals, axis=-1) - totals
        return (inner + offs[..., None]).reshape(f.shape)


def make_rule(A: float, order: int = 16, panel: float = 0.5,
              poles: Sequence = (), kinks: Sequence = ()) -> Rule:
    """Panels of width <= panel, geometrically refined toward Re(pole) so
    that panel width near a pole is about half its distance to the axis."""
    pts = [np.linspace(-A, A, int(np.ceil(2 * A / panel)) + 1)]
    for z in poles:
        z = complex(z)
        r, d = z.real, abs(z.imag)
        if d == 0:
            raise PoleError(f"pole on the real axis at {r}")
        if r < -A - panel or r > A + panel:
            continue
        k, offs = 0, []
        while d * 0.5 * 2 ** k < panel:
            offs.append(d * 0.5 * 2 ** k)
            k += 1
        offs = np.array(offs)
        pts.append(np.concatenate([[r], r - offs, r + offs]))
    for k in kinks:
        pts.append(np.array([float(k)]))
    b = np.concatenate(pts)
    b = np.unique(np.clip(b, -A, A))
    keep = np.concatenate([[True], np.diff(b) > 1e-12 * max(A, 1.0)])
    b = b[keep]
    b[0], b[-1] = -A, A
    t, w, _ = _reference_panel(order)
    mid = (b[1:] + b[:-1]) / 2
    half = (b[1:] - b[:-1]) / 2
    x = (mid[:, None] + half[:, None] * t[None, :]).ravel()
    ww = (half[:, None] * w[None, :]).ravel()
    return Rule(x, ww, b, order)


def _weight_rule(weight: ContinuousWeight, degree: int, poles=(), kinks=(), order=None) -> Rule:
    A = weight.bound(degree)
    bk = list(kinks)
    if weight.tag == "tabulated":
        bk += list(weight.table[0])
    return make_rule(A, order or weight.order, weight.panel, poles, bk)


def _check_poles(params):
    for b in params:
        if complex(b).imag == 0:
            raise PoleError(f"denominator parameter {b} lies on the real axis")


def _agree(a, b, tol):
    a, b = complex(a), complex(b)
    return abs(a - b) <= tol * max(abs(a), abs(b), 1e-300)


# ------------------------------------------------------------ monic bases

def monic_recurrence(weight: ContinuousWeight, n: int):
    """Recurrence coefficients (a_k, b_k) with
    P_{k+1} = (x - a_k) P_k - b_k P_{k-1}; squared norms h_k."""
    if weight.tag == "gaussian":
        a = np.zeros(n + 1)
        b = np.array([k / 2 for k in range(n + 1)], dtype=float)
        h = np.array([sqrt(pi) * np.exp(lgamma(k + 1) - k * log(2)) for k in range(n + 1)])
        return a, b, h
    if weight.tag == "gaussian_half":
        a = np.zeros(n + 1)
        b = np.array([float(k) for k in range(n + 1)])
        h = np.array([sqrt(2 * pi) * np.exp(lgamma(k + 1)) for k in range(n + 1)])
        return a, b, h
    # discretized Stieltjes on the panel rule
    r = _weight_rule(weight, 2 * n + 2, order=max(weight.order, 24))
    wx = r.w * weight.density(r.x)
    a, b, h = np.zeros(n + 1), np.zeros(n + 1), np.zeros(n + 1)
    prev, cur = np.zeros_like(r.x), np.ones_like(r.x)
    for k in range(n + 1):
        h[k] = np.dot(wx, cur * cur)
        a[k] = np.dot(wx, r.x * cur * cur) / h[k]
        b[k] = h[k] / h[k - 1] if k else 0.0
        prev, cur = cur, (r.x - a[k]) * cur - b[k] * prev
    return a, b, h


def monic_values(weight: ContinuousWeight, n: int, x, deriv: bool = False):
    """Rows P_0..P_{n-1} (and derivatives) at the points x."""
    a, b, _ = monic_recurrence(weight, n)
    x = np.asarray(x)
    P = np.zeros((n,) + x.shape, dtype=np.result_type(x, float))
    dP = np.zeros_like(P)
    if n == 0:
        return (P, dP) if deriv else P
    P[0] = 1.0
    if n > 1:
        P[1] = x - a[0]
        dP[1] = 1.0
    for k in range(1, n - 1):
        P[k + 1] = (x - a[k]) * P[k] - b[k] * P[k - 1]
        dP[k + 1] = P[k] + (x - a[k]) * dP[k] - b[k] * dP[k - 1]
    return (P, dP) if deriv else P


def monic_poly(weight: ContinuousWeight, n: int, z):
    """Monic orthogonal polynomial P_n at z (complex allowed)."""
    return monic_values(weight, n + 1, np.asarray(z, dtype=complex))[n]


# ------------------------------------------------------------ averages

def _factor(numer, denom, power, x):
    x = np.asarray(x, dtype=complex)
    g = np.ones_like(x)
    for a in numer:
        g = g * (complex(a) - x) ** power
    for b in denom:
        g = g / (complex(b) - x) ** power
    return g


def _gram(beta: int, n: int, weight: ContinuousWeight, gfun, rule: Rule):
    """Andreief / de Bruijn matrix of the weight g*mu in the monic basis."""
    x = rule.x
    mu = weight.density(x) * gfun(x)
    if beta == 2:
        P = monic_values(weight, n, x)
        return (P * (rule.w * mu)) @ P.T
    if beta == 4:
        P, dP = monic_values(weight, 2 * n, x, deriv=True)
        wm = rule.w * mu
        M = (P * wm) @ dP.T
        return M - M.T
    m = n + (n % 2)
    P = monic_values(weight, n, x)
    phi = P * mu
    F = rule.cumulative(phi)
    tot = F[:, -1]
    # integral sgn(y-x) phi_i(x) phi_j(y) = int phi_j(y) (2 F_i(y) - F_i(inf)) dy
    G = (2 * F - tot[:, None]) * rule.w
    M = np.zeros((m, m), dtype=complex)
    A = G @ phi.T
    M[:n, :n] = (A - A.T) / 2
    if n % 2:
        b = phi @ rule.w
        M[:n, n] = b
        M[n, :n] = -b
    return M


def _ensemble_integral(beta, n, weight, gfun, rule):
    """Z_n[g mu] / Z_n[mu] up to the monic normalisation (the same basis is used)."""
    if n == 0:
        return 1.0 + 0j
    M = _gram(beta, n, weight, gfun, rule)
    if beta == 2:
        return np.linalg.det(M)
    return la.pfaffian(M)


def _average_once(beta, N, weight, numer, denom, power, order, extra_kinks=()):
    gfun = lambda x: _factor(numer, denom, power, x)
    deg = (2 if beta != 1 else 1) * N + power * len(numer)
    rule = _weight_rule(weight, deg, poles=denom, kinks=extra_kinks, order=order)
    one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
    return _ensemble_integral(beta, N, weight, gfun, rule) / _ensemble_integral(beta, N, weight, one, rule)


def quadrature_average(beta: int, N: int, weight: ContinuousWeight | None = None,
                       numer: Sequence = (), denom: Sequence = (), power: int | None = None,
                       tol: float = 1e-10, check: bool = True) -> complex:
    """< prod D(a)^q / prod D(b)^q > over p_N^(beta) with q = 2 for beta = 4.

    N is the number of points (pass 2N for the beta = 1 ensemble Delta_2N).
    """
    if beta not in (1, 2, 4):
        raise ValueError("beta must be 1, 2 or 4")
    if N < 0:
        raise ValueError("N must be nonnegative")
    weight = weight or default_weight(beta)
    power = power if power is not None else (2 if beta == 4 else 1)
    _check_poles(denom)
    if N == 0:
        return 1.0 + 0j
    v = _average_once(beta, N, weight, numer, denom, power, weight.order)
    if check:
        v2 = _average_once(beta, N, weight, numer, denom, power, 2 * weight.order)
        if not _agree(v, v2, tol):
            raise AccuracyError(f"quadrature did not converge: {v} vs {v2}")
        v = v2
    return complex(v)


def normalization_constant(beta: int, N: int, weight: ContinuousWeight | None = None) -> float:
    """C_N^(beta) = (1/N!) int |Delta|^beta dmu^N by quadrature."""
    weight = weight or default_weight(beta)
    if N == 0:
        return 1.0
    if beta == 2:
        _, _, h = monic_recurrence(weight, N)
        return float(np.prod(h[:N]))
    one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
    rule = _weight_rule(weight, 2 * N, order=max(weight.order, 24))
    v = _ensemble_integral(beta, N, weight, one, rule)
    return float(np.real(v))


def tensor_average(beta: int, N: int, weight: ContinuousWeight | None = None,
                   numer: Sequence = (), denom: Sequence = (), power: int | None = None,
                   order: int = 10) -> complex:
    """Direct N-fold product-rule quadrature (oracle for small N).

    For beta = 1 only N <= 2 is supported: the kink of |x - y| is handled by
    splitting diagonal panel pairs into two triangles."""
    weight = weight or default_weight(beta)
    power = power if power is not None else (2 if beta == 4 else 1)
    _check_poles(denom)
    if beta == 1 and N > 2:
        raise ValueError("tensor oracle for beta = 1 supports N <= 2")
    if N > 3:
        raise ValueError("tensor oracle supports N <= 3")
    rule = _weight_rule(weight, 2 * N, poles=denom, order=order)
    f = rule.w * weight.density(rule.x)
    g = _factor(numer, denom, power, rule.x)
    x = rule.x
    if beta == 1 and N == 2:
        return _tensor_beta1_pair(rule, weight, lambda z: _factor(numer, denom, power, z))
    if N == 1:
        return np.dot(f, g) / np.sum(f)
    if N == 2:
        V = np.abs(x[:, None] - x[None, :]) ** beta
        num = (f * g) @ V @ (f * g)
        den = f @ V @ f
        return num / den
    num = den = 0j
    fg = f * g
    for i in range(len(x)):
        d1 = np.abs(x[i] - x) ** beta
        V = (d1[:, None] * d1[None, :]) * np.abs(x[:, None] - x[None, :]) ** beta
        num += fg[i] * (fg @ V @ fg)
        den += f[i] * (f @ V @ f)
    return num / den


def _tensor_beta1_pair(rule: Rule, weight, gfun):
    p = rule.order
    g = gfun(rule.x)
    t, w, _ = _reference_panel(p)
    b = rule.breaks
    x = rule.x.reshape(-1, p)
    wx = rule.w.reshape(-1, p) * weight.density(x)
    gx = g.reshape(-1, p)
    npan = x.shape[0]
    num = den = 0j
    flat_x, flat_w, flat_g = x.ravel(), wx.ravel(), gx.ravel()
    D = np.abs(flat_x[:, None] - flat_x[None, :])
    M = flat_w[:, None] * flat_w[None, :] * D
    block = np.kron(np.eye(npan), np.ones((p, p))).astype(bool)
    G = flat_g[:, None] * flat_g[None, :]
    num += np.sum((M * G)[~block])
    den += np.sum(M[~block])
    # diagonal panels: Duffy map of the triangle {u < v} on [0,1]^2
    s = (t + 1) / 2
    ws = w / 2
    U = s[:, None] * s[None, :]          # u = s1 * s2, v = s1
    Vv = np.broadcast_to(s[:, None], U.shape)
    jac = s[:, None] * ws[:, None] * ws[None, :]
    dens = weight.density
    for k in range(npan):
        a, L = b[k], b[k + 1] - b[k]
        xu, xv = a + L * U, a + L * Vv
        val = 2 * jac * L * L * (xv - xu) * dens(xu) * dens(xv)
        gu, gv = gfun(xu), gfun(xv)
        num += np.sum(val * gu * gv)
        den += np.sum(val)
    return num / den



# ------------------------------------------------------------ constants

def gaussian_closed_forms(beta: int, N: int) -> dict:
    """Printed closed forms for the Gaussian weights together with the
    Selberg-integral value of the same quantity.

    Keys: ``printed`` (C_N^(beta) as implied by the printed display),
    ``selberg`` (C_N^(beta) from the Selberg integral)."""
    if beta == 2:
        printed = pi ** (N / 2) * 2 ** (-N * (N - 1) / 2) * float(np.prod([factorial(j) for j in range(1, N + 1)]))
        selberg = printed / factorial(N)
    elif beta == 1:
        n = N
        if n % 2:
            raise ValueError("the beta = 1 display covers an even number of points")
        m = n // 2
        full = (2 * pi) ** m * float(np.prod([gamma(1.5 + j / 2) / gamma(1.5) for j in range(n)]))
        printed = full / factorial(n)
        selberg = (2 * pi) ** (n / 2) * float(np.prod([gamma(1 + j / 2) / gamma(1.5) for j in range(1, n + 1)])) / factorial(n)
    elif beta == 4:
        printed = (2 * pi) ** (N * (N + 0.5)) / 2 ** (N * (N + 0.5)) \
            * float(np.prod([factorial(2 * j + 2) for j in range(N)])) / factorial(N)
        selberg = pi ** (N / 2) * 2.0 ** (-N * (N - 1)) \
            * float(np.prod([factorial(2 * j) / 2 for j in range(1, N + 1)])) / factorial(N)
    else:
        raise ValueError("beta must be 1, 2 or 4")
    return {"printed": printed, "selberg": selberg}


def gaussian_constants(beta: int, N: int, tol: float = 1e-10) -> dict:
    """C_N^(beta) for the Gaussian weight of ``beta``: quadrature of the
    defining integral (ground truth) next to the printed closed form.

    For beta = 1 pass the number of points (2N in the ensemble notation)."""
    if N == 0:
        return {"beta": beta, "N": 0, "quadrature": 1.0, "printed": 1.0, "selberg": 1.0,
                "match": True, "ratio": 1.0}
    q = normalization_constant(beta, N)
    forms = gaussian_closed_forms(beta, N)
    ratio = forms["printed"] / q
    return {"beta": beta, "N": N, "quadrature": q, **forms,
            "match": abs(ratio - 1) <= tol, "ratio": ratio}


# ------------------------------------------------------------ average theorems

def _vprod(A):
    out = 1.0 + 0j
    A = [complex(a) for a in A]
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            out *= A[i] - A[j]
    return out


def _cprod(A, B):
    out = 1.0 + 0j
    for a in A:
        for b in B:
            out *= complex(a) - complex(b)
    return out


def _distinct(*groups):
    allv = [complex(v) for g in groups for v in g]
    if len(set(allv)) != len(allv):
        raise ValueError("spectral parameters must be mutually distinct")


@dataclass
class ContinuousResult:
    value: complex
    W: np.ndarray
    prefactor: complex
    sizes: tuple


class _Averager:
    """Two-point averages and constants with memoisation."""

    def __init__(self, beta, weight, tol):
        self.beta, self.weight, self.tol = beta, weight, tol
        self._c = {}

    def C(self, n):
        if n not in self._c:
            self._c[n] = normalization_constant(self.beta, n, self.weight)
        return self._c[n]

    def avg(self, n, numer=(), denom=()):
        return quadrature_average(self.beta, n, self.weight, numer, denom, tol=self.tol)


def continuous_average_beta2(N: int, alpha_minus: Sequence, alpha_plus: Sequence,
                             beta_minus: Sequence = (), beta_plus: Sequence = (),
                             weight: ContinuousWeight | None = None, tol: float = 1e-10,
                             kernel: Callable | None = None) -> ContinuousResult:
    """Right-hand side of the beta = 2 determinant formula.

    ``kernel(kind, M, x, y)`` may supply the two-point entries (kinds
    ``"dd"``, ``"d/d"``, ``"1/dd"``); the default uses quadrature."""
    am, ap, bm, bp = (list(v) for v in (alpha_minus, alpha_plus, beta_minus, beta_plus))
    S = len(am) - len(ap)
    if len(bm) - len(bp) != S:
        raise ValueError("|alpha-| - |alpha+| must equal |beta-| - |beta+|")
    if S <= 1 - N:
        raise ValueError("S must exceed 1 - N")
    _check_poles(ap + bp)
    _distinct(am, ap)
    _distinct(bm, bp)
    weight = weight or GAUSSIAN
    av = _Averager(2, weight, tol)
    M = N + S

    def entry(kind, x, y):
        if kernel is not None:
            return kernel(kind, M, x, y)
        if kind == "dd":
            return av.C(M - 1) / av.C(M) * av.avg(M - 1, [x, y])
        if kind == "d/d":
            return av.avg(M, [x], [y]) / (complex(x) - complex(y))
        return av.C(M + 1) / av.C(M) * av.avg(M + 1, (), [x, y])

    rows = [("a-", v) for v in am] + [("b+", v) for v in bp]
    cols = [("b-", v) for v in bm] + [("a+", v) for v in ap]
    W = np.zeros((len(rows), len(cols)), dtype=complex)
    for i, (rt, x) in enumerate(rows):
        for j, (ct, y) in enumerate(cols):
            if rt == "a-" and ct == "b-":
                W[i, j] = entry("dd", x, y)
            elif rt == "a-" and ct == "a+":
                W[i, j] = entry("d/d", x, y)
            elif rt == "b+" and ct == "b-":
                W[i, j] = entry("d/d", y, x) * (complex(y) - complex(x)) / (complex(x) - complex(y))
            else:
                W[i, j] = entry("1/dd", x, y)
    m1, m2 = len(am), len(bm)
    sign = (-1) ** ((((m1 + m2) ** 2 + m2 - m1) // 2) % 2)
    ratio = 1.0 if M == N else av.C(M) / av.C(N)
    pre = sign * ratio * _cprod(am, ap) * _cprod(bm, bp) / (
        _vprod(am) * _vprod(ap) * _vprod(bm) * _vprod(bp))
    det = np.linalg.det(W) if W.size else 1.0
    return ContinuousResult(complex(pre * det), W, complex(pre), (M - 1, M, M + 1))


def continuous_average_pf(beta: int, N: int, alpha: Sequence, beta_: Sequence = (),
                          weight: ContinuousWeight | None = None, tol: float = 1e-10,
                          kernel: Callable | None = None) -> ContinuousResult:
    """Right-hand side of the beta = 1 (over Delta_2N) or beta = 4 (over
    Delta_N, squared factors) pfaffian formula."""
    if beta not in (1, 4):
        raise ValueError("beta must be 1 or 4")
    al, be = list(alpha), list(beta_)
    if (len(al) - len(be)) % 2:
        raise ValueError("k - m must be even")
    S = (len(al) - len(be)) // 2
    if S <= 1 - N:
        raise ValueError("S must exceed 1 - N")
    _check_poles(be)
    _distinct(al, be)
    weight = weight or default_weight(beta)
    av = _Averager(beta, weight, tol)
    step = 2 if beta == 1 else 1
    n0, M = step * N, step * (N + S)

    def entry(kind, x, y):
        if kernel is not None:
            return kernel(kind, M, x, y)
        dx = complex(x) - complex(y)
        if kind == "dd":
            return av.C(M - step) / av.C(M) * dx * av.avg(M - step, [x, y])
        if kind == "d/d":
            return av.avg(M, [x], [y]) / dx
        return av.C(M + step) / av.C(M) * dx * av.avg(M + step, (), [x, y])

    labels = [("a", v) for v in al] + [("b", v) for v in be]
    n = len(labels)
    W = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(i + 1, n):
            (ti, x), (tj, y) = labels[i], labels[j]
            if ti == "a" and tj == "a":
                v = entry("dd", x, y)
            elif ti == "b" and tj == "b":
                v = entry("1/dd", x, y)
            else:
                v = entry("d/d", x, y) if ti == "a" else -entry("d/d", y, x)
            W[i, j], W[j, i] = v, -v
    ratio = 1.0 if M == n0 else av.C(M) / av.C(n0)
    pre = ratio * _cprod(al, be) / (_vprod(al) * _vprod(be))
    pf = la.pfaffian(W) if n else 1.0
    return ContinuousResult(complex(pre * pf), W, complex(pre), (M - step, M, M + step))


# ------------------------------------------------------------ skew-orthogonal bases

def skew_product_matrix(beta: int, n: int, weight: ContinuousWeight | None = None,
                        order: int = 32) -> np.ndarray:
    """<P_i, P_j>_beta for the monic orthogonal basis of the weight.

    beta = 1: (1/2) iint sgn(y - x) f(x) g(y) dmu dmu;
    beta = 4: (1/2) int (f g' - f' g) dmu."""
    weight = weight or default_weight(beta)
    rule = _weight_rule(weight, 2 * n, order=order)
    one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
    if beta == 1:
        return np.real(_gram(1, n + n % 2, weight, one, rule))[:n, :n] / 2
    if beta == 4:
        P, dP = monic_values(weight, n, rule.x, deriv=True)
        M = (P * rule.w * weight.density(rule.x)) @ dP.T
        return (M - M.T) / 2
    raise ValueError("beta must be 1 or 4")


@dataclass
class SkewHermiteBasis:
    """Skew-orthogonal polynomials p_0..p_{2K-1} in the monic basis of the weight.

    Gauge: p_{2j+1} carries no p_{2j} component."""
    beta: int
    weight: ContinuousWeight
    coeffs: np.ndarray          # row k: p_k in the monic basis P_0..P_{n-1}
    norms: np.ndarray           # h_j = <p_2j, p_2j+1>

    def p(self, k: int, z):
        z = np.asarray(z, dtype=complex)
        P = monic_values(self.weight, self.coeffs.shape[1], z)
        return np.tensordot(self.coeffs[k], P, axes=1)

    def _pair(self, u, v, rule):
        """<u, v> for callables on the nodes of ``rule``."""
        x = rule.x
        mu = self.weight.density(x)
        if self.beta == 1:
            fu = u(x) * mu
            F = rule.cumulative(fu)
            return 0.5 * np.dot(rule.w, v(x) * mu * (2 * F - F[-1]))
        (a, da), (b, db) = u(x, True), v(x, True)
        return 0.5 * np.dot(rule.w, (a * db - da * b) * mu)

    def _poly(self, k):
        def f(x, deriv=False):
            P, dP = monic_values(self.weight, self.coeffs.shape[1], x, deriv=True)
            v = self.coeffs[k] @ P
            return (v, self.coeffs[k] @ dP) if deriv else v
        return f

    @staticmethod
    def _resolvent(z):
        z = complex(z)

        def f(x, deriv=False):
            v = 1.0 / (z - x)
            return (v, v * v) if deriv else v
        return f

    def _rule(self, *poles):
        return _weight_rule(self.weight, 2 * self.coeffs.shape[1], poles=poles, order=24)

    def transform(self, k: int, eta) -> complex:
        """h_k(eta) = <p_k, R_eta> with R_eta(x) = 1/(eta - x)."""
        _check_poles([eta])
        return complex(self._pair(self._poly(k), self._resolvent(eta), self._rule(eta)))

    def rr(self, zeta, eta) -> complex:
        _check_poles([zeta, eta])
        return complex(self._pair(self._resolvent(zeta), self._resolvent(eta), self._rule(zeta, eta)))


def skew_hermite_basis(beta: int, K: int, weight: ContinuousWeight | None = None) -> SkewHermiteBasis:
    """Skew Gram-Schmidt for p_0..p_{2K-1} against the continuous skew product."""
    weight = weight or default_weight(beta)
    n = 2 * K
    A = skew_product_matrix(beta, n, weight)
    Q = np.zeros((n, n))
    h = np.zeros(K)
    for k in range(n):
        c = np.zeros(n)
        c[k] = 1.0
        for i in range(k // 2):
            a = c @ A @ Q[2 * i + 1] / h[i]
            b = c @ A @ Q[2 * i] / h[i]
            c = c - a * Q[2 * i] + b * Q[2 * i + 1]
        Q[k] = c
        if k % 2:
            h[k // 2] = Q[k - 1] @ A @ Q[k]
            if h[k // 2] == 0:
                raise ZeroDivisionError("degenerate skew moment matrix")
    return SkewHermiteBasis(beta, weight, Q, h)


# ------------------------------------------------------------ Hermite functions

def hermite_norm(n: int) -> float:
    """c_n = pi^(1/4) 2^(-n/2) sqrt(n!), the norm of the monic Hermite pi_n."""
    return float(np.exp(0.25 * log(pi) - 0.5 * n * log(2) + 0.5 * lgamma(n + 1)))


def hermite_psi_all(n_max: int, x) -> np.ndarray:
    """Rows psi_0..psi_{n_max} at x (real or complex) by the normalised recurrence."""
    x = np.asarray(x)
    dt = np.result_type(x, float)
    out = np.zeros((n_max + 1,) + x.shape, dtype=dt)
    out[0] = pi ** -0.25 * np.exp(-x * x / 2)
    if n_max >= 1:
        out[1] = sqrt(2.0) * x * out[0]
    for n in range(1, n_max):
        out[n + 1] = sqrt(2.0 / (n + 1)) * x * out[n] - sqrt(n / (n + 1)) * out[n - 1]
    return out


def hermite_psi(n: int, x):
    if n < 0:
        raise ValueError("n must be nonnegative")
    return hermite_psi_all(n, x)[n]


def _hermite_rule(n_max: int, poles=(), order: int = 16, kinks=()) -> Rule:
    A = sqrt(2 * n_max + 1) + 8.0
    return make_rule(A, order, 0.25, poles, kinks)


def _Psi_quadrature(n_max: int, zeta: complex, order: int = 16, with_scale: bool = False):
    r = _hermite_rule(n_max, [zeta], order)
    f = hermite_psi_all(n_max, r.x) * np.exp(-r.x ** 2 / 2)
    k = r.w / (r.x - zeta)
    if with_scale:
        return f @ k, np.abs(f) @ np.abs(k)
    return f @ k


def _Psi0(zeta: complex) -> complex:
    """Psi_0 via the Faddeeva function: int exp(-x^2)/(x - z) dx = i pi w(z), Im z > 0."""
    if zeta.imag > 0:
        return pi ** -0.25 * 1j * pi * wofz(zeta)
    return np.conj(_Psi0(np.conj(zeta)))


def _Psi_miller(n_max: int, zeta: complex, start: int) -> np.ndarray:
    """Backward recurrence from index ``start`` (minimal solution off the axis)."""
    vals = np.zeros(start + 2, dtype=complex)
    vals[start] = 1.0
    for n in range(start, 0, -1):
        vals[n - 1] = (sqrt(2.0 / (n + 1)) * zeta * vals[n] - vals[n + 1]) / sqrt(n / (n + 1))
        if abs(vals[n - 1]) > 1e250:
            vals[n - 1:] *= 1e-250
    return vals[:n_max + 1] * (_Psi0(zeta) / vals[0])


def hermite_Psi_all(n_max: int, zeta, method: str = "auto", order: int = 16) -> np.ndarray:
    """Psi_n(zeta) = int exp(-x^2/2) psi_n(x) / (x - zeta) dx for n = 0..n_max.

    ``quadrature``: composite rule refined near Re(zeta).  It loses relative
    accuracy where Psi_n is much smaller than the integrand, so ``auto``
    replaces those entries by a Miller backward recurrence (minimal solution
    of the Hermite recurrence, normalised by Psi_0), doubling the start index
    until two runs agree."""
    zeta = complex(zeta)
    _check_poles([zeta])
    if method not in ("auto", "quadrature", "recurrence"):
        raise ValueError(f"unknown method {method!r}")
    if method == "quadrature":
        return _Psi_quadrature(n_max, zeta, order)
    if method == "auto":
        q, scale = _Psi_quadrature(n_max, zeta, max(order, 24), with_scale=True)
        bad = scale * 1e-16 > 1e-14 * np.abs(q)
        if not bad.any():
            return q
    else:
        q, bad = None, np.ones(n_max + 1, dtype=bool)
    extra = 32
    prev = _Psi_miller(n_max, zeta, n_max + extra)
    while True:
        extra *= 2
        cur = _Psi_miller(n_max, zeta, n_max + extra)
        if np.all(np.abs(cur - prev)[bad] <= 1e-14 * np.abs(cur)[bad] + 1e-300):
            break
        if extra > 1 << 20:
            raise AccuracyError("backward recurrence for Psi_n did not settle")
        prev = cur
    if q is None:
        return cur
    return np.where(bad, cur, q)


def hermite_Psi(n: int, zeta, method: str = "auto") -> complex:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return complex(hermite_Psi_all(n, zeta, method)[n])


def psi_antiderivative_all(n_max: int, x, order: int = 24) -> np.ndarray:
    """int_{-inf}^{x} psi_n(t) dt for n = 0..n_max; x real or complex
    (straight path from the nearest panel break on the axis)."""
    x = np.atleast_1d(np.asarray(x, dtype=complex))
    A = sqrt(2 * n_max + 1) + 8.0
    base = make_rule(A, order, 0.25)
    t0, w0, _ = _reference_panel(order)
    npan = len(base.breaks) - 1
    panels = (hermite_psi_all(n_max, base.x) * base.w).reshape(n_max + 1, npan, order).sum(-1)
    at_break = np.concatenate([np.zeros((n_max + 1, 1)), np.cumsum(panels, axis=1)], axis=1)
    out = np.zeros((n_max + 1, x.size), dtype=complex)
    for k, z in enumerate(x):
        j = int(np.searchsorted(base.breaks, z.real, side="right") - 1)
        j = min(max(j, 0), npan)
        a = base.breaks[j]
        path = a + (z - a) * (t0 + 1) / 2
        out[:, k] = at_break[:, j] + hermite_psi_all(n_max, path) @ (w0 * (z - a) / 2)
    return out


def hermite_dpsi_all(n_max: int, x) -> np.ndarray:
    """psi_n'(x) for n = 0..n_max from psi_n' = sqrt(n/2) psi_{n-1} - sqrt((n+1)/2) psi_{n+1}."""
    P = hermite_psi_all(n_max + 1, x)
    out = np.zeros_like(P[:n_max + 1])
    for n in range(n_max + 1):
        out[n] = -sqrt((n + 1) / 2) * P[n + 1]
        if n:
            out[n] += sqrt(n / 2) * P[n - 1]
    return out


# ------------------------------------------------------------ auxiliary integrals

def _aux_once(which, n, args, order):
    """I_N, E_N, F_N with n = N - 1 (I, E) or n = N (F)."""
    A = sqrt(2 * n + 1) + 9.0
    r = make_rule(A, order, 0.25, poles=args)
    x = r.x
    ps = hermite_psi_all(n, x)[n]
    gy = np.exp(-x * x / 2)
    if which == "I_N":
        (eta,) = args
        F = r.cumulative(ps)
        return -np.dot(r.w, gy / (x - eta) * (2 * F - F[-1]))
    if which == "E_N":
        zeta, eta = args
        F = r.cumulative(ps / (x - zeta))
        return -np.dot(r.w, gy / (x - eta) * (2 * F - F[-1]))
    eta, zeta = args
    dg = gy * (1 / (zeta - x) ** 2 - x / (zeta - x))
    return np.dot(r.w, ps / (eta - x) * dg)


def aux_integrals(which: str, N: int, *args, order: int = 24, tol: float = 1e-9) -> complex:
    """I_N(eta), E_N(zeta, eta) and F_N(eta, zeta).

    I_N(eta) = -int int exp(-y^2/2) sgn(y-x) psi_{N-1}(x) / (y - eta)
    E_N(zeta, eta) = same with an extra 1/(x - zeta)
    F_N(eta, zeta) = int psi_N(x)/(eta - x) d/dx[exp(-x^2/2)/(zeta - x)] dx

    The sgn integral is split as 2 int_{-A}^{y} - int_{-A}^{A}; the tail beyond
    A = sqrt(2n+1) + 9 is below exp(-40).
    """
    if which not in ("I_N", "E_N", "F_N"):
        raise ValueError(f"unknown auxiliary integral {which!r}")
    need = 1 if which == "I_N" else 2
    if len(args) != need:
        raise ValueError(f"{which} takes {need} argument(s)")
    args = [complex(a) for a in args]
    _check_poles(args)
    n = N if which == "F_N" else N - 1
    if n < 0:
        raise ValueError("index out of range")
    a = _aux_once(which, n, args, order)
    b = _aux_once(which, n, args, 2 * order)
    if abs(a - b) > tol * max(abs(b), 1e-3):
        raise AccuracyError(f"{which}: quadrature did not converge ({a} vs {b})")
    return complex(b)


# ------------------------------------------------------------ exact W kernels

def _segment(f, a, b, order=48):
    t, w, _ = _reference_panel(order)
    xs = a + (b - a) * (t + 1) / 2
    return np.dot(w, f(xs)) * (b - a) / 2


def _cd_quot(M, x, y):
    """(psi_M(x) psi_{M-1}(y) - psi_{M-1}(x) psi_M(y)) / (x - y) and its x-derivative."""
    Px, Py = hermite_psi_all(M, x), hermite_psi_all(M, y)
    Dx = hermite_dpsi_all(M, x)
    num = Px[M] * Py[M - 1] - Px[M - 1] * Py[M]
    dnum = Dx[M] * Py[M - 1] - Dx[M - 1] * Py[M]
    return num / (x - y), dnum / (x - y) - num / (x - y) ** 2


def _W_gue(family, N, z, e):
    c = hermite_norm
    if family == "I":
        P, Q = hermite_psi_all(N + 1, z), hermite_psi_all(N + 1, e)
        return c(N + 1) / c(N) * np.exp((z * z + e * e) / 2) * (P[N + 1] * Q[N] - P[N] * Q[N + 1])
    if family == "II":
        P = hermite_psi_all(N, z)
        Q = hermite_Psi_all(N, e)
        return c(N) / c(N - 1) * np.exp(z * z / 2) * (Q[N] * P[N - 1] - Q[N - 1] * P[N]) / (z - e)
    if N == 1:
        return c(0) * (_Psi0(z) - _Psi0(e))
    P, Q = hermite_Psi_all(N - 1, z), hermite_Psi_all(N - 1, e)
    return c(N - 1) / c(N - 2) * (P[N - 2] * Q[N - 1] - P[N - 1] * Q[N - 2])


def _W_goe(family, N, z, e):
    c = hermite_norm
    if family == "I":
        M = 2 * N + 2
        _, d = _cd_quot(M, z, e)
        tail = hermite_psi(M - 1, e) * hermite_psi(M, z)
        return -c(M) / c(M - 1) * np.exp((z * z + e * e) / 2) * (d + tail)
    if family == "II":
        M = 2 * N
        P = hermite_psi_all(M, z)
        Q = hermite_Psi_all(M, e)
        first = (Q[M] * P[M - 1] - Q[M - 1] * P[M]) / (z - e)
        return c(M) / c(M - 1) * np.exp(z * z / 2) * (first + 0.5 * P[M - 1] * aux_integrals("I_N", M + 1, e))
    if N == 1:
        return _rr_direct(1, z, e)
    M = 2 * N - 2
    P = hermite_Psi_all(M, z)
    E0, E1 = aux_integrals("E_N", M, z, e), aux_integrals("E_N", M + 1, z, e)
    I0, I1 = aux_integrals("I_N", M + 1, z), aux_integrals("I_N", M, e)
    return 0.5 * c(M) / c(M - 1) * (E1 * P[M - 1] - E0 * P[M] - 0.5 * I0 * I1)


def _W_gse(family, N, z, e):
    c = hermite_norm
    if family == "I":
        M = 2 * N + 2
        Pe = hermite_psi_all(M, e)
        f = lambda x: (lambda P: (Pe[M] * P[M - 1] - Pe[M - 1] * P[M]) / (e - x))(hermite_psi_all(M, x))
        g = lambda x: hermite_psi_all(M, x)[M]
        inner = _segment(f, e, z) + _segment(g, e, z) * psi_antiderivative_all(M - 1, [e])[M - 1, 0]
        return c(M) / c(M - 1) * np.exp((z * z + e * e) / 2) * inner
    if family == "II":
        M = 2 * N
        P = hermite_psi_all(M, z)
        Q = hermite_Psi_all(M, e)
        first = (Q[M] * P[M - 1] - Q[M - 1] * P[M]) / (z - e)
        anti = psi_antiderivative_all(M - 1, [z])[M - 1, 0]
        return c(M) / c(M - 1) * np.exp(z * z / 2) * (first - Q[M] * anti)
    if N == 1:
        return _rr_direct(4, z, e)
    M = 2 * N - 2
    Q, P = hermite_Psi_all(M, e), hermite_Psi_all(M, z)
    F0, F1 = aux_integrals("F_N", M, e, z), aux_integrals("F_N", M - 1, e, z)
    return c(M) / c(M - 1) * (Q[M - 1] * F0 - Q[M] * F1 - Q[M] * P[M - 1])


def _rr_direct(beta, z, e):
    """<R_zeta, R_eta> for the skew product of ``beta``, R_t(x) = 1/(t - x)."""
    B = SkewHermiteBasis(beta, default_weight(beta), np.zeros((0, 1)), np.zeros(0))
    return B.rr(z, e)


def kernel_W(beta: int, family: str, N: int, zeta, eta) -> complex:
    """Exact two-point kernels of GUE (weight exp(-x^2), N points), GOE
    (exp(-x^2/2), 2N points) and GSE (exp(-x^2), N points).

    I:   (zeta - eta) <D(zeta) D(eta)> / h_N
    II:  <D(zeta) / D(eta)> / (zeta - eta)
    III: (zeta - eta) <1 / (D(zeta) D(eta))> h_{N-1}
    with D squared for GSE and h_k the (skew) norms.
    """
    if beta not in (1, 2, 4):
        raise ValueError("beta must be 1, 2 or 4")
    if family not in ("I", "II", "III"):
        raise ValueError(f"unknown family {family!r}")
    if N < 1:
        raise ValueError("N must be positive")
    z, e = complex(zeta), complex(eta)
    if family == "II":
        _check_poles([e])
    if family == "III":
        _check_poles([z, e])
    fn = {2: _W_gue, 1: _W_goe, 4: _W_gse}[beta]
    return complex(fn(family, N, z, e))


def kernel_W_average(beta: int, family: str, N: int, zeta, eta, norms=None) -> complex:
    """The defining two-point average of kernel_W, by quadrature."""
    n = 2 * N if beta == 1 else N
    if norms is None:
        norms = (np.array([hermite_norm(k) ** 2 for k in range(N + 1)]) if beta == 2
                 else skew_hermite_basis(beta, N + 1).norms)
    z, e = complex(zeta), complex(eta)
    if family == "I":
        return (z - e) * quadrature_average(beta, n, numer=[z, e]) / norms[N]
    if family == "II":
        return quadrature_average(beta, n, numer=[z], denom=[e]) / (z - e)
    return (z - e) * quadrature_average(beta, n, denom=[z, e]) * norms[N - 1]


# ------------------------------------------------------------ averages via the theorems

def w_kernel_entries(beta: int) -> Callable:
    """Adapter feeding kernel_W into the average theorems (Gaussian weights only)."""
    def entry(kind, M, x, y):
        x, y = complex(x), complex(y)
        if beta == 2:
            if kind == "dd":
                return kernel_W(2, "I", M - 1, x, y) / (x - y)
            if kind == "d/d":
                return kernel_W(2, "II", M, x, y)
            return kernel_W(2, "III", M + 1, x, y) / (x - y)
        # C_{2K} / C_{2K-2} = 2 h_{K-1}: the skew products carry a factor 1/2
        K = M // 2 if beta == 1 else M
        if kind == "dd":
            return kernel_W(beta, "I", K - 1, x, y) / 2
        if kind == "d/d":
            return kernel_W(beta, "II", K, x, y)
        return 2 * kernel_W(beta, "III", K + 1, x, y)
    return entry


def continuous_average(beta: int, N: int, alpha: Sequence = (), beta_: Sequence = (),
                       alpha_plus: Sequence = (), beta_plus: Sequence = (),
                       weight: ContinuousWeight | None = None, tol: float = 1e-10,
                       use_kernels: bool = False) -> ContinuousResult:
    """Theorem right-hand side. beta = 2 reads (alpha-, alpha+, beta-, beta+) from
    (alpha, alpha_plus, beta_, beta_plus); beta = 1, 4 read numerator ``alpha`` and
    denominator ``beta_``. ``use_kernels`` takes the entries from kernel_W."""
    kernel = w_kernel_entries(beta) if use_kernels else None
    if beta == 2:
        return continuous_average_beta2(N, alpha, alpha_plus, beta_, beta_plus, weight, tol, kernel)
    return continuous_average_pf(beta, N, alpha, beta_, weight, tol, kernel)


# ------------------------------------------------------------ correlation kernels

PLEMELJ_DELTAS = (1e-2, 5e-3, 2.5e-3)


def plemelj_jump(f: Callable, x: float, deltas: Sequence = PLEMELJ_DELTAS, rtol: float = 1e-3) -> complex:
    """[f]_x = (f(x - i0) - f(x + i0)) / (2 pi i), Richardson-extrapolated over
    halving offsets."""
    x = float(x)
    d = [(complex(f(x - 1j * h)) - complex(f(x + 1j * h))) / (2j * pi) for h in deltas]
    if len(d) != 3 or not np.allclose(np.array(deltas[:-1]) / deltas[1:], 2.0):
        raise ValueError("need three halving offsets")
    r1, r2 = 2 * d[1] - d[0], 2 * d[2] - d[1]
    est = (4 * r2 - r1) / 3
    if abs(est - r2) > rtol * max(abs(est), 1.0):
        raise AccuracyError(f"jump extrapolation unstable at x = {x}: {r1}, {r2}, {est}")
    return complex(est)


def _ratio_jump(beta, n, x, y, weight, tol):
    """[ (<D(x)/D(z)> - 1) / (x - z) ]_{z=y}; regular at y = x."""
    def g(z):
        return (quadrature_average(beta, n, weight, [x], [z], tol=tol) - 1) / (x - z)
    return plemelj_jump(g, y)


def _double_jump(beta, n, x, y, weight, tol):
    return plemelj_jump(lambda z: plemelj_jump(
        lambda e: quadrature_average(beta, n, weight, (), [z, e], tol=tol), y), x)


def correlation_kernel(beta: int, N: int, x: float, y: float,
                       weight: ContinuousWeight | None = None, tol: float = 1e-10,
                       k4_variant: str = "corrected", k21: str = "transpose"):
    """K^(2) (scalar) or the 2x2 blocks K^(1) (over 2N points) and K^(4).

    k4_variant ``printed`` pairs <D^2 D^2> with N+1 points and <1/(D^2 D^2)>
    with N-1 points; ``corrected`` swaps them. ``k21 = "transpose"`` uses
    K21(x, y) = -K12(y, x) so that the kernel is skew; ``printed`` uses -K12(x, y)."""
    weight = weight or default_weight(beta)
    x, y = float(x), float(y)
    if beta == 2:
        return _ratio_jump(2, N, x, y, weight, tol)
    if beta not in (1, 4):
        raise ValueError("beta must be 1, 2 or 4")
    av = _Averager(beta, weight, tol)
    n = 2 * N if beta == 1 else N
    step = 2 if beta == 1 else 1
    half = 1.0 if beta == 1 else 0.5
    if beta == 4 and k4_variant == "printed":
        n11, n22 = N + 1, N - 1
    elif k4_variant in ("printed", "corrected"):
        n11, n22 = n - step, n + step
    else:
        raise ValueError(f"unknown variant {k4_variant!r}")
    if x == y:
        k11 = k22 = 0.0
    else:
        k11 = half * av.C(n - step) / av.C(n) * (x - y) * av.avg(n11, [x, y]) if n11 >= 0 else 0.0
        k22 = half * av.C(n + step) / av.C(n) * (x - y) * _double_jump(beta, n22, x, y, weight, tol) \
            if n22 >= 0 else 0.0
    k12 = half * _ratio_jump(beta, n, x, y, weight, tol)
    k21 = -(half * _ratio_jump(beta, n, y, x, weight, tol) if k21 == "transpose" else k12)
    return np.array([[k11, k12], [k21, k22]], dtype=complex)


def correlation_function(beta: int, N: int, xs: Sequence, weight: ContinuousWeight | None = None,
                         tol: float = 1e-10, **kw) -> float:
    """rho_m(x_1..x_m) as det / Pf of the kernel assembly."""
    xs = [float(v) for v in xs]
    m = len(xs)
    if beta == 2:
        K = np.array([[correlation_kernel(2, N, a, b, weight, tol) for b in xs] for a in xs])
        return float(np.real(np.linalg.det(K)))
    Z = np.zeros((2 * m, 2 * m), dtype=complex)
    for i, a in enumerate(xs):
        for j, b in enumerate(xs):
            Z[2 * i:2 * i + 2, 2 * j:2 * j + 2] = correlation_kernel(beta, N, a, b, weight, tol, **kw)
    return float(np.real(la.pfaffian(Z, tol=1e-6)))


def correlation_oracle(beta: int, n: int, xs: Sequence, weight: ContinuousWeight | None = None,
                       order: int = 24) -> float:
    """rho_m over n points from the definition:
    prod w(x_i) |Delta(x)|^beta C_{n-m}[w prod |x_i - t|^beta] / C_n."""
    weight = weight or default_weight(beta)
    xs = [float(v) for v in xs]
    m = len(xs)
    if m > n:
        return 0.0
    front = float(np.prod(weight.density(np.array(xs)))) * abs(_vprod(xs)) ** beta
    if m == n:
        return front / normalization_constant(beta, n, weight)
    g = lambda t: np.prod([np.abs(a - np.asarray(t, dtype=complex)) ** beta for a in xs], axis=0)
    one = lambda t: np.ones_like(np.asarray(t, dtype=complex))
    vals = []
    for o in (order, 2 * order):
        rule = _weight_rule(weight, 2 * n + beta * m, kinks=xs, order=o)
        vals.append(_ensemble_integral(beta, n - m, weight, g, rule) / _ensemble_integral(beta, n - m, weight, one, rule))
    if not _agree(vals[0], vals[1], 1e-9):
        raise AccuracyError("oracle quadrature did not converge")
    ratio = normalization_constant(beta, n - m, weight) / normalization_constant(beta, n, weight)
    return float(np.real(front * ratio * vals[1]))


# ------------------------------------------------------------ lattice approximation

def lattice_average_beta2(N: int, M: int, numer: Sequence = (), denom: Sequence = (), A: float = 6.0) -> complex:
    """beta = 2 average for exp(-x^2) replaced by M atoms at x_k = -A + k h,
    h = 2A/M, each carrying the mass of its cell [x_k, x_k + h)."""
    from scipy.special import erf
    h = 2 * A / M
    xk = -A + h * np.arange(M)
    mass = 0.5 * sqrt(pi) * (erf(xk + h) - erf(xk))
    rule = Rule(xk, mass / GAUSSIAN.density(xk), np.array([-A, A]), 1)
    gfun = lambda x: _factor(numer, denom, 1, x)
    one = lambda x: np.ones_like(np.asarray(x, dtype=complex))
    return complex(_ensemble_integral(2, N, GAUSSIAN, gfun, rule) / _ensemble_integral(2, N, GAUSSIAN, one, rule))
