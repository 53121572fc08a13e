"""Discrete determinantal (beta = 2) ensembles.

L-ensembles on a finite ground set with a -/+ splitting, their hat
transforms, discrete polynomial ensembles ``Delta_N(f)`` and the determinant
formula for averages of products and ratios of characteristic polynomials.

All arithmetic is exact when the inputs are ``Fraction``/``QI``.  Cauchy
transforms are carried without the ``1/(2 pi i)`` factor (``H_k`` below) so
that every formula stays rational; the ``2 pi i`` factors cancel in every
kernel entry.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, pi
from typing import Callable, Iterable, Sequence

import numpy as np

from . import linalg as la
from .scalars import QI, parse_scalar, simplify

MAX_CONFIGS = 10**6


class RangeError(ValueError):
    pass


class PoleError(ZeroDivisionError):
    pass


class SizeGuardError(RuntimeError):
    pass


class _Infinity:
    """Sentinel for a spectral parameter sent to infinity (odd factor counts)."""

    def __repr__(self):
        return "INF"


INF = _Infinity()


# ------------------------------------------------------------ ground sets

@dataclass(frozen=True)
class GroundSet:
    points: tuple
    minus: frozenset = frozenset()

    def __post_init__(self):
        pts = tuple(self.points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise la.PreconditionError("ground points must be strictly increasing")
        if not set(self.minus) <= set(pts):
            raise la.PreconditionError("minus part must lie in the ground set")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "minus", frozenset(self.minus))

    @property
    def minus_points(self) -> tuple:
        return tuple(p for p in self.points if p in self.minus)

    @property
    def plus_points(self) -> tuple:
        return tuple(p for p in self.points if p not in self.minus)

    @property
    def labels(self) -> tuple:
        """Row/column order of L: minus part first, then plus part."""
        return self.minus_points + self.plus_points

    def split(self, X) -> tuple[tuple, tuple]:
        X = set(X)
        return (tuple(p for p in self.minus_points if p in X),
                tuple(p for p in self.plus_points if p in X))

    def is_balanced(self, X) -> bool:
        xm, xp = self.split(X)
        return len(xm) == len(xp)

    @classmethod
    def from_json(cls, text: str) -> tuple["GroundSet", dict]:
        """Parse ``{"points": [...], "split": [...], "weights": {...}}``.

        ``split`` lists ``"minus"``/``"plus"`` per point; weights are keyed by
        the point literal.
        """
        doc = json.loads(text)
        pts = [parse_scalar(str(p)) for p in doc["points"]]
        split = doc.get("split", ["plus"] * len(pts))
        if len(split) != len(pts):
            raise la.ShapeError("split must have one entry per point")
        minus = {p for p, s in zip(pts, split) if s == "minus"}
        weights = {parse_scalar(str(k)): parse_scalar(str(v))
                   for k, v in doc.get("weights", {}).items()}
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        return cls(tuple(pts[i] for i in order), frozenset(minus)), weights


def vandermonde(pts) -> object:
    return la.vandermonde(list(pts))


def cross(A, B) -> object:
    return la.cross_product(list(A), list(B))


def prod(vals, start=Fraction(1)):
    out = start
    for v in vals:
        out = out * v
    return out


# ------------------------------------------------------------- L-ensembles

def build_L(ground: GroundSet, h: dict) -> np.ndarray:
    """``[[0, A], [-A^T, 0]]`` with ``A(x, y) = h(x)h(y)/(x - y)``, labels ``ground.labels``."""
    xm, xp = ground.minus_points, ground.plus_points
    if not xm or not xp:
        raise la.PreconditionError("both parts of the splitting must be nonempty")
    A = la.exact_matrix([[h[x] * h[y] / (x - y) for y in xp] for x in xm])
    return la.skew_block(A)


def _positions(ground: GroundSet, X) -> list[int]:
    lab = ground.labels
    return sorted(lab.index(x) for x in X)


def prob_L(L: np.ndarray, ground: GroundSet, X) -> object:
    n = L.shape[0]
    idx = _positions(ground, X)
    return la.det(la.sub(L, idx)) / la.det(L + la.identity(n))


def prob_L_closed(ground: GroundSet, h: dict, X, det1L=None) -> object:
    """Closed-form probability of a configuration of the L-ensemble."""
    xm, xp = ground.split(X)
    if det1L is None:
        det1L = la.det(build_L(ground, h) + la.identity(len(ground.points)))
    if len(xm) != len(xp):
        return Fraction(0)
    num = vandermonde(xp) ** 2 * vandermonde(xm) ** 2 * prod(h[x] ** 2 for x in X)
    return num / cross(xm, xp) ** 2 / det1L


def particle_hole(X, region) -> frozenset:
    return frozenset(X) ^ frozenset(region)


def hat_weight(ground: GroundSet, h: dict, X0) -> dict:
    """Weight of the hat-ensemble built from the involution region ``X0``."""
    X0 = tuple(X0)
    if not set(X0) <= set(ground.minus_points):
        raise la.PreconditionError("involution region must lie in the minus part")
    out = {}
    for z in ground.points:
        if z in X0:
            if h[z] == 0:
                raise ZeroDivisionError(f"weight vanishes on the involution region at {z}")
            out[z] = 1 / (h[z] * prod(z - y for y in X0 if y != z))
        elif z in ground.minus:
            out[z] = h[z] * prod(z - y for y in X0)
        else:
            out[z] = h[z] / prod(z - y for y in X0)
    return out


def hat_ground(ground: GroundSet, X0) -> GroundSet:
    return GroundSet(ground.points, ground.minus - frozenset(X0))


def prob_hat_closed(ground: GroundSet, h: dict, X0, X, det1Lhat) -> object:
    """Hat-ensemble probability of ``Z = X ^ X0`` written through X."""
    xm, xp = ground.split(X)
    X0 = tuple(X0)
    num = prod(h[x] ** 2 for x in X) * vandermonde(xm) ** 2 * vandermonde(xp) ** 2
    den = cross(xm, xp) ** 2 * vandermonde(X0) ** 2 * prod(h[x] ** 2 for x in X0)
    return num / den / det1Lhat


def correlation_rho(L: np.ndarray, ground: GroundSet, X) -> object:
    n = L.shape[0]
    I = la.identity(n)
    M = L + I
    if la.det(M) == 0:
        raise la.SingularityError("det(1+L) vanishes")
    K = L.dot(la.inverse(M))
    return la.det(la.sub(K, _positions(ground, X)))


def all_subsets(points) -> Iterable[tuple]:
    for r in range(len(points) + 1):
        yield from combinations(points, r)


def f_from_h(ground: GroundSet, h: dict) -> dict:
    """Weight of the polynomial ensemble equivalent to the L-ensemble."""
    xp = ground.plus_points
    out = {}
    for x in ground.points:
        if x in ground.minus:
            out[x] = h[x] ** 2 / prod((x - y) ** 2 for y in xp)
        else:
            out[x] = 1 / (h[x] ** 2 * prod((x - y) ** 2 for y in xp if y != x))
    return out


# ---------------------------------------------------- polynomial ensembles

def poly_eval(coeffs: Sequence, z):
    """Horner evaluation; ``coeffs`` lowest degree first."""
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def poly_deriv(coeffs: Sequence) -> list:
    return [k * c for k, c in enumerate(coeffs)][1:] or [Fraction(0)]


@dataclass
class OrthogonalBasis:
    points: tuple
    f: dict
    coeffs: list          # coeffs[k] = monic pi_k, lowest degree first
    norms: list           # c_k^2
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def pi(self, k: int, z):
        if k < 0:
            return Fraction(0)
        return poly_eval(self.coeffs[k], z)

    def dpi(self, k: int, z):
        return poly_eval(poly_deriv(self.coeffs[k]), z)

    def H(self, k: int, z):
        """``sum_x pi_k(x) f(x) / (z - x)``; equals ``-2 pi i h_k(z)``."""
        key = (k, z)
        if key not in self._cache:
            tot = Fraction(0)
            for x in self.points:
                if z == x:
                    raise PoleError(f"Cauchy transform evaluated on grid point {x}")
                tot = tot + self.pi(k, x) * self.f[x] / (z - x)
            self._cache[key] = tot
        return self._cache[key]

    def cauchy_transform(self, k: int, eps) -> complex:
        """``h_k(eps) = (1/2 pi i) sum_x pi_k(x) f(x)/(x - eps)`` as a complex float."""
        return -complex(self.H(k, eps)) / (2j * pi)

    def gamma(self, k: int) -> complex:
        return -2j * pi / float(self.norms[k])

    def residue_H(self, k: int, y):
        """Residue of ``H_k`` at a grid point ``y``."""
        return self.pi(k, y) * self.f[y]


def discrete_orthogonal_basis(points, f: dict, degree: int) -> OrthogonalBasis:
    """Monic orthogonal polynomials by exact Gram-Schmidt on the weighted counting measure."""
    pts = tuple(points)
    support = sum(1 for x in pts if f[x] != 0)
    if support <= degree:
        raise la.PreconditionError(
            f"weight nonzero at {support} points, need more than degree {degree}")

    def inner(p, q):
        return sum((poly_eval(p, x) * poly_eval(q, x) * f[x] for x in pts), Fraction(0))

    coeffs, norms = [], []
    for k in range(degree + 1):
        p = [Fraction(0)] * k + [Fraction(1)]
        for j in range(k):
            proj = inner(p, coeffs[j]) / norms[j]
            for i, c in enumerate(coeffs[j]):
                p[i] -= proj * c
        nrm = inner(p, p)
        if nrm == 0:
            raise la.PreconditionError("degenerate weight: zero norm")
        coeffs.append(p)
        norms.append(nrm)
    return OrthogonalBasis(pts, dict(f), coeffs, norms)


def char_poly(X, z):
    """``d(z) = prod_{x in X} (z - x)``."""
    return prod(z - x for x in X)


@dataclass
class PolynomialEnsemble:
    """``Delta_N(f)``: N-point subsets weighted by ``V^2(X) f(X)``."""

    points: tuple
    f: dict
    N: int
    _C: dict = field(default_factory=dict, repr=False)
    _basis: OrthogonalBasis | None = field(default=None, repr=False)

    def __post_init__(self):
        self.points = tuple(self.points)

    def configs(self, K: int | None = None) -> Iterable[tuple]:
        K = self.N if K is None else K
        if comb(len(self.points), K) > MAX_CONFIGS:
            raise SizeGuardError("too many configurations to enumerate")
        return combinations(self.points, K)

    def weight(self, X) -> object:
        return vandermonde(X) ** 2 * prod(self.f[x] for x in X)

    def C(self, K: int | None = None) -> object:
        """Normalization constant ``C_K`` by enumeration (``C_0 = 1``)."""
        K = self.N if K is None else K
        if K < 0 or K > len(self.points):
            raise RangeError(f"no {K}-point configurations on {len(self.points)} points")
        if K not in self._C:
            self._C[K] = sum((self.weight(X) for X in self.configs(K)), Fraction(0))
        return self._C[K]

    def prob(self, X) -> object:
        if len(X) != self.N:
            return Fraction(0)
        return self.weight(X) / self.C()

    def brute_average(self, g: Callable, K: int | None = None) -> object:
        """Exact ``sum g(X) V^2(X) f(X) / C_K``."""
        K = self.N if K is None else K
        tot = Fraction(0)
        for X in self.configs(K):
            w = self.weight(X)
            if w != 0:
                tot = tot + g(X) * w
        return simplify(tot / self.C(K))

    def average_ratio(self, numer: Sequence, denom: Sequence, K: int | None = None) -> object:
        """``< prod d(numer) / prod d(denom) >`` by enumeration."""
        def g(X):
            val = prod(char_poly(X, u) for u in numer)
            for v in denom:
                dv = char_poly(X, v)
                if dv == 0:
                    raise PoleError(f"denominator parameter {v} hits a configuration point")
                val = val / dv
            return val
        return self.brute_average(g, K)

    def basis(self, degree: int | None = None) -> OrthogonalBasis:
        degree = min(len(self.points) - 1, self.N + 3) if degree is None else degree
        if self._basis is None or self._basis.degree < degree:
            self._basis = discrete_orthogonal_basis(self.points, self.f, degree)
        return self._basis


def heine_discrete(ens: PolynomialEnsemble, zeta) -> object:
    return ens.average_ratio([zeta], [])


# --------------------------------------------------------- two-point kernels

def avg_dd(ens: PolynomialEnsemble, K: int, a, b, method: str = "polynomial"):
    """``< d(a) d(b) >`` over ``Delta_K``."""
    if method == "enumeration":
        return ens.average_ratio([a, b], [], K)
    B = ens.basis(K + 1)
    if a == b:
        return simplify(B.dpi(K + 1, a) * B.pi(K, a) - B.dpi(K, a) * B.pi(K + 1, a))
    return simplify((B.pi(K + 1, a) * B.pi(K, b) - B.pi(K, a) * B.pi(K + 1, b)) / (a - b))


def avg_ratio(ens: PolynomialEnsemble, K: int, u, v, method: str = "polynomial"):
    """``< d(u) / d(v) >`` over ``Delta_K``."""
    if method == "enumeration" or K == 0:
        return ens.average_ratio([u], [v], K)
    B = ens.basis(K)
    return simplify((B.pi(K, u) * B.H(K - 1, v) - B.pi(K - 1, u) * B.H(K, v)) / B.norms[K - 1])


def avg_inv_dd(ens: PolynomialEnsemble, K: int, a, b, method: str = "polynomial"):
    """``< 1 / (d(a) d(b)) >`` over ``Delta_K`` (K >= 1)."""
    if method == "enumeration":
        return ens.average_ratio([], [a, b], K)
    if K < 1:
        raise RangeError("inverse two-point average needs at least one point")
    return simplify(w_entries_via_polynomials(ens, K - 1, "pp", a, b) * ens.C(K - 1) / ens.C(K))


def w_entries_via_polynomials(ens: PolynomialEnsemble, M: int, kind: str, x, y):
    """Kernel entries built directly from ``pi_k`` and ``H_k``.

    ``kind`` is one of ``"mm"`` (alpha-, beta-), ``"mp"`` (alpha-, alpha+),
    ``"pm"`` (beta+, beta-), ``"pp"`` (beta+, alpha+); M is ``N + S``.
    """
    B = ens.basis(M + 1)
    if kind == "mm":
        if x == y:
            raise la.PreconditionError("confluent parameters are outside the supported range")
        return simplify((B.pi(M, x) * B.pi(M - 1, y) - B.pi(M - 1, x) * B.pi(M, y))
                        / (B.norms[M - 1] * (x - y)))
    if kind == "mp":
        if M == 0:
            return simplify(Fraction(1) / (x - y))
        return simplify((B.pi(M, x) * B.H(M - 1, y) - B.pi(M - 1, x) * B.H(M, y))
                        / (B.norms[M - 1] * (x - y)))
    if kind == "pm":
        if M == 0:
            return simplify(Fraction(1) / (x - y))
        return simplify((B.pi(M, y) * B.H(M - 1, x) - B.pi(M - 1, y) * B.H(M, x))
                        / (B.norms[M - 1] * (x - y)))
    if kind == "pp":
        if M == 0:
            return simplify((B.H(0, x) - B.H(0, y)) / (y - x))
        return simplify((B.H(M, y) * B.H(M - 1, x) - B.H(M, x) * B.H(M - 1, y))
                        / (B.norms[M - 1] * (x - y)))
    raise ValueError(f"unknown kernel entry kind {kind!r}")


def w_entry(ens: PolynomialEnsemble, M: int, kind: str, x, y, method: str = "polynomial"):
    """Kernel entries from their two-point-average definitions."""
    if method == "polynomial":
        return w_entries_via_polynomials(ens, M, kind, x, y)
    if kind == "mm":
        return simplify(ens.C(M - 1) / ens.C(M) * avg_dd(ens, M - 1, x, y, method))
    if kind == "mp":
        return simplify(avg_ratio(ens, M, x, y, method) / (x - y))
    if kind == "pm":
        return simplify(avg_ratio(ens, M, y, x, method) / (x - y))
    if kind == "pp":
        return simplify(ens.C(M + 1) / ens.C(M) * avg_inv_dd(ens, M + 1, x, y, method))
    raise ValueError(f"unknown kernel entry kind {kind!r}")


# Leading coefficients when one parameter is sent to infinity.  A polynomial
# parameter p in alpha-/beta- contributes like p^{deg}; a denominator
# parameter in alpha+/beta+ like p^{-deg}.

def _w_entry_inf(ens, M, kind, x, y, inf_side, method):
    if kind == "mm":
        other = y if inf_side == "x" else x
        return simplify(ens.C(M - 1) / ens.C(M) * ens.average_ratio([other], [], M - 1)
                        if method == "enumeration" else
                        ens.C(M - 1) / ens.C(M) * ens.basis(M).pi(M - 1, other))
    if kind == "mp":
        if inf_side == "x":      # alpha- -> inf: d(x)/(x - y) ~ x^{M-1}
            return simplify(ens.average_ratio([], [y], M))
        return simplify(-ens.average_ratio([x], [], M))   # alpha+ -> inf: ~ -y^{-M-1}
    if kind == "pm":
        if inf_side == "x":      # beta+ -> inf
            return simplify(ens.average_ratio([y], [], M))
        return simplify(-ens.average_ratio([], [x], M))   # beta- -> inf
    if kind == "pp":
        other = y if inf_side == "x" else x
        return simplify(ens.C(M + 1) / ens.C(M) * ens.average_ratio([], [other], M + 1))
    raise ValueError(kind)


@dataclass
class Beta2Result:
    value: object
    W: np.ndarray
    prefactor: object
    sign: int
    M: int


def _check_params(lists, ens: PolynomialEnsemble, names):
    for lst, name in zip(lists, names):
        finite = [p for p in lst if p is not INF]
        if len(set(finite)) != len(finite):
            raise la.PreconditionError(f"parameters in {name} must be pairwise distinct")
    for lst, name in zip(lists[2:], names[2:]):
        for p in lst:
            if p is not INF and p in ens.points:
                raise PoleError(f"{name} parameter {p} lies on the ground set")
    if sum(1 for lst in lists for p in lst if p is INF) > 1:
        raise la.PreconditionError("at most one parameter may be sent to infinity")


def average_beta2(ens: PolynomialEnsemble, alpha_minus: Sequence, alpha_plus: Sequence,
                  beta_minus: Sequence = (), beta_plus: Sequence = (),
                  method: str = "polynomial") -> Beta2Result:
    """Determinant formula for ``< prod d(a-) d(b-) / prod d(a+) d(b+) >`` over ``Delta_N(f)``.

    ``S = |alpha-| - |alpha+| = |beta-| - |beta+|`` and the inner ensembles have
    ``M = N + S`` points.  One parameter may be :data:`INF`, which returns the
    leading coefficient (``d(p) ~ p^N``) and so covers odd factor counts.
    """
    am, ap, bm, bp = (list(x) for x in (alpha_minus, alpha_plus, beta_minus, beta_plus))
    _check_params([am, bm, ap, bp], ens, ["alpha-", "beta-", "alpha+", "beta+"])
    m1, k1, m2, k2 = len(am), len(ap), len(bm), len(bp)
    S = m1 - k1
    if m2 - k2 != S:
        raise la.PreconditionError("|alpha-|-|alpha+| must equal |beta-|-|beta+|")
    M = ens.N + S
    n = len(ens.points)
    lo = (1 if (m1 and m2) else 0)
    hi = n - 1 if (k1 and k2) else n
    if not lo <= M <= hi:
        raise RangeError(f"S={S} out of range for N={ens.N} on {n} points")

    rows = [("m", a) for a in am] + [("p", b) for b in bp]
    cols = [("m", b) for b in bm] + [("p", a) for a in ap]
    W = la.zeros(len(rows))
    for i, (rs, x) in enumerate(rows):
        for j, (cs, y) in enumerate(cols):
            kind = rs + cs
            if x is INF or y is INF:
                W[i, j] = _w_entry_inf(ens, M, kind, x, y, "x" if x is INF else "y", method)
            else:
                W[i, j] = w_entry(ens, M, kind, x, y, method)

    def cross_fin(A, B):
        # leading coefficient of prod(A;B) with INF counted as +p (A) or -p (B)
        out = Fraction(1)
        for a in A:
            for b in B:
                if a is INF:
                    continue
                out = out * (-1 if b is INF else (a - b))
        return out

    def vdm_fin(A):
        out = Fraction(1)
        for i, j in combinations(range(len(A)), 2):
            a, b = A[i], A[j]
            if a is INF:
                continue
            out = out * (-1 if b is INF else (a - b))
        return out

    pref = cross_fin(am, ap) * cross_fin(bm, bp) / (vdm_fin(am) * vdm_fin(ap) * vdm_fin(bm) * vdm_fin(bp))
    w = ((m1 + m2) ** 2 + m2 - m1) // 2
    sign = -1 if w % 2 else 1
    const = ens.C(M) / ens.C()
    value = simplify(const * sign * pref * la.det(W))
    return Beta2Result(value, W, const * pref, sign, M)


def brute_beta2(ens: PolynomialEnsemble, alpha_minus, alpha_plus, beta_minus=(), beta_plus=()):
    """Enumeration left-hand side; an :data:`INF` parameter is stripped to its leading term."""
    numer = [p for p in list(alpha_minus) + list(beta_minus) if p is not INF]
    denom = [p for p in list(alpha_plus) + list(beta_plus) if p is not INF]
    return ens.average_ratio(numer, denom)


# ------------------------------------------------------ correlation kernels

def kernel_residue(ens: PolynomialEnsemble, x, y):
    """``K(x, y)`` from the residue of the ratio average at a grid point y."""
    N = ens.N
    B = ens.basis(N)
    if x == y:
        val = (B.dpi(N, x) * B.pi(N - 1, x) - B.dpi(N - 1, x) * B.pi(N, x)) * B.f[x]
        return simplify(val / B.norms[N - 1])
    val = (B.pi(N, x) * B.residue_H(N - 1, y) - B.pi(N - 1, x) * B.residue_H(N, y))
    return simplify(val / (B.norms[N - 1] * (x - y)))


def kernel_residue_enumeration(ens: PolynomialEnsemble, x, y):
    """Same residue taken configuration by configuration (partial fractions)."""
    tot = Fraction(0)
    for X in ens.configs():
        if y not in X:
            continue
        p = ens.prob(X)
        if p == 0:
            continue
        rest = [t for t in X if t != y]
        res = 1 / prod(y - t for t in rest)
        if x == y:
            # d/du of d(u) at u = y, times the residue of 1/d(xi) at xi = y
            tot = tot + p * prod(y - t for t in rest) * res
        else:
            tot = tot + p * char_poly(X, x) * res / (x - y)
    return simplify(tot)


def kernel_cd(ens: PolynomialEnsemble, x, y):
    """Christoffel-Darboux kernel with the asymmetric ``f(y)`` normalization.

    Determinants of this kernel coincide with those of the symmetric
    ``sqrt(f(x) f(y))`` form, which keeps the arithmetic rational.
    """
    B = ens.basis(ens.N)
    return simplify(B.f[y] * sum((B.pi(j, x) * B.pi(j, y) / B.norms[j] for j in range(ens.N)),
                                 Fraction(0)))


def correlation_from_averages(ens: PolynomialEnsemble, ys: Sequence, kernel=kernel_residue):
    if len(set(ys)) != len(ys):
        raise la.PreconditionError("correlation points must be distinct")
    K = la.exact_matrix([[kernel(ens, a, b) for b in ys] for a in ys])
    return simplify(la.det(K))


def correlation_brute(ens: PolynomialEnsemble, ys: Sequence):
    ys = set(ys)
    return simplify(sum((ens.prob(X) for X in ens.configs() if ys <= set(X)), Fraction(0)))


def bordered_determinant_identity(ens: PolynomialEnsemble, v1, v2) -> tuple:
    """Both sides of the averaged bordered determinant identity for k = 2."""
    def G(X, v):
        return sum((1 / (v - x) for x in X), Fraction(0))

    lhs = ens.brute_average(lambda X: G(X, v1) * G(X, v2) - 1 / ((v1 - v2) * (v2 - v1)))
    g1 = ens.brute_average(lambda X: G(X, v1))
    g2 = ens.brute_average(lambda X: G(X, v2))
    r12 = avg_ratio(ens, ens.N, v1, v2) / (v1 - v2)
    r21 = avg_ratio(ens, ens.N, v2, v1) / (v2 - v1)
    return lhs, simplify(g1 * g2 - r12 * r21)
