"""Discrete pfaffian (beta = 1, 4) ensembles.

Pfaffian L-ensembles on a ground set split as ``X- | X+`` (``X-`` to the
left), the discrete symplectic and orthogonal ensembles, their skew
orthogonal polynomials and the pfaffian formulas for averages of
characteristic polynomials and correlation functions.

Every skew inner product is encoded by an antisymmetric matrix ``Omega`` on
the ground set, ``<g1, g2> = sum g1(x) Omega[x, y] g2(y)``, with the weight
already folded in.  Cauchy transforms ``h_k(z) = <p_k, R_z>`` are then sums
of simple poles at grid points, and their residues are read off ``Omega``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb, factorial
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .discrete import (MAX_CONFIGS, PoleError, RangeError, SizeGuardError, char_poly,
                       cross, poly_eval, prod, vandermonde)
from .scalars import simplify


class StructureError(ValueError):
    pass


class RankError(ZeroDivisionError):
    pass


def _abs(x):
    return x if x >= 0 else -x


# ------------------------------------------------------------ ground sets

@dataclass(frozen=True)
class ParityGroundSet:
    """Ordered real points with ``X-`` a nonempty block to the left of ``X+``.

    Parity is the 1-based position inside each part, so the minimal point of
    each part is odd.
    """

    points: tuple
    minus: frozenset

    def __post_init__(self):
        pts = tuple(self.points)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise la.PreconditionError("ground points must be strictly increasing")
        minus = frozenset(self.minus)
        if not minus <= set(pts):
            raise la.PreconditionError("minus part must lie in the ground set")
        k = len(minus)
        if set(pts[:k]) != minus:
            raise StructureError("X- must be the leftmost block of the ground set")
        if k == len(pts):
            raise StructureError("X+ must be nonempty")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "minus", minus)

    @property
    def minus_points(self) -> tuple:
        return self.points[:len(self.minus)]

    @property
    def plus_points(self) -> tuple:
        return self.points[len(self.minus):]

    @property
    def xi(self):
        """Leftmost point of ``X+``."""
        return self.plus_points[0]

    def index(self, x) -> int:
        return self.points.index(x)

    def is_odd(self, x) -> bool:
        i = self.index(x)
        return (i if x in self.minus else i - len(self.minus)) % 2 == 0

    def left(self, x):
        i = self.index(x)
        if i == 0:
            raise StructureError(f"{x} has no left neighbor")
        return self.points[i - 1]

    def right(self, x):
        i = self.index(x)
        if i == len(self.points) - 1:
            raise StructureError(f"{x} has no right neighbor")
        return self.points[i + 1]

    def split(self, X) -> tuple[tuple, tuple]:
        X = set(X)
        return (tuple(p for p in self.minus_points if p in X),
                tuple(p for p in self.plus_points if p in X))


def epsilon_L(ground: ParityGroundSet, x, y) -> int:
    """``eps(x, y)`` on ``X- + {xi}``: 1 for x < y with x odd and y even.

    ``xi`` enters only as a right end point and counts as even there.
    """
    if x == y:
        return 0
    if y < x:
        return -epsilon_L(ground, y, x)
    y_even = (y == ground.xi) or not ground.is_odd(y)
    return 1 if ground.is_odd(x) and y_even else 0


# ------------------------------------------------------- pfaffian L-ensembles

def build_pfaffian_L(ground: ParityGroundSet, h: dict) -> np.ndarray:
    """Doubled skew matrix, rows ``x', x''`` per point in ground order."""
    if any(h[x] < 0 for x in ground.points):
        raise la.PreconditionError("weight h must be nonnegative")
    n = len(ground.points)
    L = la.zeros(2 * n)
    idx = {x: i for i, x in enumerate(ground.points)}
    xi = ground.xi

    def put(r, c, v):
        L[r, c] = L[r, c] + v
        L[c, r] = L[c, r] - v

    xm = ground.minus_points
    for a, b in combinations(xm, 2):
        put(la.prime(idx[a]), la.prime(idx[b]), Fraction(epsilon_L(ground, a, b)))
    for x in xm:
        i = idx[x]
        put(la.prime(i), la.prime(idx[xi]), Fraction(epsilon_L(ground, x, xi)))
        put(la.dprime(i), la.dprime(idx[xi]), h[x] * h[xi] / (x - xi))
        for y in ground.plus_points[1:]:
            ly = ground.left(y)
            put(la.dprime(i), la.prime(idx[y]), h[x] * h[y] / (x - y))
            put(la.dprime(i), la.dprime(idx[y]), h[x] * h[ly] / (x - ly))
    return L


def _doubled(ground: ParityGroundSet, X) -> list[int]:
    out = []
    for x in sorted(X):
        i = ground.index(x)
        out += [la.prime(i), la.dprime(i)]
    return out


def pf_J_plus_L(L) -> object:
    return la.pfaffian(L + la.J_matrix(L.shape[0] // 2, la.is_exact(L)))


def prob_pfaffian_L(L, ground: ParityGroundSet, X, pfJL=None) -> object:
    """``Pf L(X|X) / Pf(J + L)``."""
    pfJL = pf_J_plus_L(L) if pfJL is None else pfJL
    return simplify(la.pfaffian(la.sub(L, _doubled(ground, X))) / pfJL)


def tilde_sets(ground: ParityGroundSet, X) -> tuple[tuple, tuple]:
    """``(X~-, X~+)``: ``X~+`` lists ``xi`` (if present) then ``l x, x`` per plus point."""
    xm, xp = ground.split(X)
    xi = ground.xi
    tp = [xi] if xi in xp else []
    for x in xp:
        if x != xi:
            tp += [ground.left(x), x]
    return xm, tuple(tp)


def in_conf_L(ground: ParityGroundSet, X) -> bool:
    xm, tp = tilde_sets(ground, X)
    if len(set(tp)) != len(tp) or len(xm) != len(tp):
        return False
    return all(ground.is_odd(x) == (i % 2 == 0) for i, x in enumerate(xm))


def prob_pfaffian_L_closed(ground: ParityGroundSet, h: dict, X, pfJL) -> object:
    if not in_conf_L(ground, X):
        return Fraction(0)
    xm, tp = tilde_sets(ground, X)
    val = vandermonde(xm) * vandermonde(tp) * prod(h[x] for x in xm + tp) / cross(tp, xm)
    return simplify(val / pfJL)


def all_subsets(points):
    for k in range(len(points) + 1):
        yield from combinations(points, k)


# -------------------------------------------------- configuration classes

def _positions(points, X) -> list[int]:
    return [points.index(x) for x in sorted(X)]


def in_conf4(points, X) -> bool:
    """``X = (l x_1 < x_1 < ... < l x_N < x_N)``: disjoint adjacent pairs."""
    pos = _positions(tuple(points), X)
    if len(pos) % 2:
        return False
    return all(pos[i + 1] == pos[i] + 1 for i in range(0, len(pos), 2))


def in_conf1(points, X) -> bool:
    """Smallest point odd and neighbors of alternating parity (1-based positions)."""
    pos = _positions(tuple(points), X)
    return len(pos) % 2 == 0 and all(p % 2 == i % 2 for i, p in enumerate(pos))


def conf_class(X, cls: str, ground) -> bool:
    """Membership in ``Conf^L`` (ground a ParityGroundSet), ``beta1`` or ``beta4``."""
    if cls == "L":
        return in_conf_L(ground, X)
    points = ground.points if isinstance(ground, ParityGroundSet) else tuple(ground)
    if cls == "beta4":
        return in_conf4(points, X)
    if cls == "beta1":
        return in_conf1(points, X)
    raise ValueError(f"unknown configuration class {cls!r}")


# ------------------------------------------------------- skew inner products

def epsilon_parity(points, x, y) -> int:
    """``eps(x, y)`` for x < y: 1 if x has odd and y even position in ``points``."""
    if x == y:
        return 0
    if y < x:
        return -epsilon_parity(points, y, x)
    i, j = points.index(x), points.index(y)
    return 1 if i % 2 == 0 and j % 2 == 1 else 0


def omega_matrix(points, f: dict, tag: str) -> np.ndarray:
    """Antisymmetric matrix of the skew inner product, weight included."""
    points = tuple(points)
    n = len(points)
    Om = la.zeros(n)
    if tag == "symplectic":
        for i in range(1, n):
            w = f[points[i - 1]] * f[points[i]]
            Om[i - 1, i] = Om[i - 1, i] + w
            Om[i, i - 1] = Om[i, i - 1] - w
    elif tag == "orthogonal":
        for i, j in combinations(range(n), 2):
            e = epsilon_parity(points, points[i], points[j])
            if e:
                w = f[points[i]] * f[points[j]] * e
                Om[i, j], Om[j, i] = w, -w
    else:
        raise ValueError(f"unknown skew product tag {tag!r}")
    return Om


def skew_inner(g1: Sequence, g2: Sequence, points, f: dict, tag: str) -> object:
    """``<g1, g2>`` for function tables given as value lists over ``points``."""
    Om = omega_matrix(points, f, tag)
    n = len(points)
    return simplify(sum((g1[i] * Om[i, j] * g2[j] for i in range(n) for j in range(n)
                         if Om[i, j] != 0), Fraction(0)))


def _pmul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _padd(a, b, c=1):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x + c * y for x, y in zip(a, b)]


@dataclass
class SkewBasis:
    """Monic skew orthogonal ``p_0..p_{2n+1}`` with norms ``h_i = <p_2i, p_2i+1>``."""

    points: tuple
    omega: np.ndarray
    coeffs: list
    norms: list
    tag: str
    _res: dict = field(default_factory=dict, repr=False)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def p(self, k: int, z):
        return poly_eval(self.coeffs[k], z)

    def table(self, k: int) -> list:
        return [self.p(k, x) for x in self.points]

    def inner(self, g1: Sequence, g2: Sequence):
        n = len(self.points)
        return sum((g1[i] * self.omega[i, j] * g2[j] for i in range(n) for j in range(n)
                    if self.omega[i, j] != 0), Fraction(0))

    def residues(self, k: int) -> list:
        """``Res_{z = x} h_k(z)`` for each grid point x (equals ``f(x) q_k(x)``)."""
        if k not in self._res:
            t = self.table(k)
            n = len(self.points)
            self._res[k] = [sum((t[i] * self.omega[i, j] for i in range(n)), Fraction(0))
                            for j in range(n)]
        return self._res[k]

    def transform(self, k: int, z):
        """``h_k(z) = <p_k, R_z>`` with ``R_z(x) = 1/(z - x)``."""
        if z in self.points:
            raise PoleError(f"Cauchy transform evaluated on the grid at {z}")
        return sum((r / (z - x) for r, x in zip(self.residues(k), self.points) if r != 0),
                   Fraction(0))

    def residue(self, k: int, x):
        return self.residues(k)[self.points.index(x)]

    def rr(self, a, b):
        """``<R_a, R_b>``."""
        if a in self.points or b in self.points:
            raise PoleError("resolvent pairing evaluated on the grid")
        n = len(self.points)
        return sum((self.omega[i, j] / ((a - self.points[i]) * (b - self.points[j]))
                    for i in range(n) for j in range(n) if self.omega[i, j] != 0), Fraction(0))

    def with_gauge(self, shifts: dict) -> "SkewBasis":
        """Basis with ``p_{2j+1} -> p_{2j+1} + c_j p_{2j}``."""
        coeffs = [list(c) for c in self.coeffs]
        for j, c in shifts.items():
            if 2 * j + 1 < len(coeffs):
                coeffs[2 * j + 1] = _padd(coeffs[2 * j + 1], coeffs[2 * j], c)
        return SkewBasis(self.points, self.omega, coeffs, list(self.norms), self.tag)


def skew_orthogonalize(points, f: dict, tag: str, degree: int) -> SkewBasis:
    """Skew Gram-Schmidt up to ``p_degree`` (degree odd), gauge ``[p_2j] p_2j+1 = 0``."""
    points = tuple(points)
    if degree % 2 == 0:
        degree += 1
    Om = omega_matrix(points, f, tag)
    basis = SkewBasis(points, Om, [], [], tag)
    tables: list = []

    def ip(a, b):
        return basis.inner(a, b)

    for k in range(degree + 1):
        c = [Fraction(0)] * k + [Fraction(1)]
        t = [poly_eval(c, x) for x in points]
        for i in range(k // 2):
            a = ip(t, tables[2 * i + 1]) / basis.norms[i]
            b = ip(t, tables[2 * i]) / basis.norms[i]
            c = _padd(_padd(c, basis.coeffs[2 * i], -a), basis.coeffs[2 * i + 1], b)
            t = [poly_eval(c, x) for x in points]
        basis.coeffs.append(c)
        tables.append(t)
        if k % 2 == 1:
            hk = ip(tables[k - 1], t)
            if hk == 0:
                raise RankError(f"skew moment matrix degenerate at order {k + 1}")
            basis.norms.append(hk)
    return basis


# ------------------------------------------------------------ ensembles

@dataclass
class SkewEnsemble:
    """``Delta^(beta)_{2N}(f)`` for beta in {1, 4}; weight ``|V(Y)| f(Y)``."""

    points: tuple
    f: dict
    N: int
    beta: int
    _c: dict = field(default_factory=dict, repr=False)
    _basis: SkewBasis | None = field(default=None, repr=False)
    gauge: dict = field(default_factory=dict)

    def __post_init__(self):
        self.points = tuple(self.points)
        if self.beta not in (1, 4):
            raise ValueError("beta must be 1 or 4")

    @property
    def tag(self) -> str:
        return "symplectic" if self.beta == 4 else "orthogonal"

    def configs(self, K: int | None = None):
        """All ``2K``-point configurations of the ensemble's class."""
        K = self.N if K is None else K
        n = len(self.points)
        if K < 0 or 2 * K > n:
            raise RangeError(f"no {2 * K}-point configurations on {n} points")
        if comb(n, 2 * K) > MAX_CONFIGS:
            raise SizeGuardError("too many configurations to enumerate")
        test = in_conf4 if self.beta == 4 else in_conf1
        return [Y for Y in combinations(self.points, 2 * K) if test(self.points, Y)]

    def weight(self, Y) -> object:
        return _abs(vandermonde(Y)) * prod(self.f[y] for y in Y)

    def c(self, K: int | None = None) -> object:
        """Normalization ``c_K`` by enumeration."""
        K = self.N if K is None else K
        if K not in self._c:
            self._c[K] = sum((self.weight(Y) for Y in self.configs(K)), Fraction(0))
        return self._c[K]

    def prob(self, Y) -> object:
        Y = tuple(sorted(Y))
        test = in_conf4 if self.beta == 4 else in_conf1
        if len(Y) != 2 * self.N or not test(self.points, Y):
            return Fraction(0)
        return self.weight(Y) / self.c()

    def brute_average(self, g: Callable, K: int | None = None) -> object:
        K = self.N if K is None else K
        tot = Fraction(0)
        for Y in self.configs(K):
            w = self.weight(Y)
            if w != 0:
                tot = tot + g(Y) * w
        return simplify(tot / self.c(K))

    def average_ratio(self, numer: Sequence, denom: Sequence, K: int | None = None) -> object:
        def g(Y):
            val = prod(char_poly(Y, u) for u in numer)
            for v in denom:
                dv = char_poly(Y, v)
                if dv == 0:
                    raise PoleError(f"denominator parameter {v} hits a configuration point")
                val = val / dv
            return val
        return self.brute_average(g, K)

    def basis(self, degree: int | None = None) -> SkewBasis:
        n = len(self.points)
        top = n - 1 if n % 2 == 0 else n - 2
        degree = min(top, 2 * self.N + 3) if degree is None else degree
        if self._basis is None or self._basis.degree < degree:
            self._basis = skew_orthogonalize(self.points, self.f, self.tag, degree)
        return self._basis.with_gauge(self.gauge) if self.gauge else self._basis


def normalization_c(ens: SkewEnsemble, K: int | None = None, method: str = "polynomial"):
    """``c_K = prod_{i<K} h_i``; ``method="enumeration"`` sums ``|V| f`` instead."""
    K = ens.N if K is None else K
    if method == "enumeration":
        return ens.c(K)
    if K == 0:
        return Fraction(1)
    B = ens.basis(2 * K - 1)
    return simplify(prod(B.norms[:K]))


def heine_skew(ens: SkewEnsemble, zeta, method: str = "polynomial"):
    """``<d(zeta)>`` over ``Delta_{2N}``; equals ``p_{2N}(zeta)``."""
    if method == "enumeration":
        return ens.average_ratio([zeta], [])
    if ens.N == 0:
        return Fraction(1)
    return simplify(ens.basis(2 * ens.N + 1).p(2 * ens.N, zeta))


def de_bruijn_sum(phis: Sequence[Sequence], eps: Callable, points, max_terms: int = 10**5):
    """Both sides of the de Bruijn identity for ``2N`` tables over ``points``.

    Returns ``(sum_x Pf[eps(x_i, x_j)] det[phi_i(x_j)], (2N)! Pf[<phi_i, phi_j>])``.
    """
    points = tuple(points)
    m = len(phis)
    if m % 2:
        raise la.DimensionError("need an even number of functions")
    n = len(points)
    if n ** m > max_terms:
        raise SizeGuardError("de Bruijn enumeration too large")
    lhs = Fraction(0)
    for tup in product(range(n), repeat=m):
        if len(set(tup)) < m:
            continue
        E = la.exact_matrix([[eps(points[a], points[b]) for b in tup] for a in tup])
        pf = la.pfaffian(E)
        if pf == 0:
            continue
        Phi = la.exact_matrix([[phis[i][a] for a in tup] for i in range(m)])
        lhs = lhs + pf * la.det(Phi)
    G = la.zeros(m)
    for i in range(m):
        for j in range(m):
            G[i, j] = sum((eps(points[a], points[b]) * phis[i][a] * phis[j][b]
                           for a in range(n) for b in range(n)), Fraction(0))
    return simplify(lhs), simplify(factorial(m) * la.pfaffian(G))


# --------------------------------------------------- two-point averages

def _cd(B: SkewBasis, K: int, a, b):
    return sum(((B.p(2 * i + 1, a) * B.p(2 * i, b) - B.p(2 * i, a) * B.p(2 * i + 1, b))
                / B.norms[i] for i in range(K)), Fraction(0))


def two_point_averages(ens: SkewEnsemble, K: int, zeta, eta, kind: str,
                       method: str = "polynomial"):
    """Averages over ``Delta_{2K}`` of ``d d``, ``d(eta)/d(zeta)``, ``1/(d d)`` or ``1/d(zeta)``."""
    if method == "enumeration":
        numer, denom = {"dd": ([zeta, eta], []), "d/d": ([eta], [zeta]),
                        "1/dd": ([], [zeta, eta]), "1/d": ([], [zeta])}[kind]
        return ens.average_ratio(numer, denom, K)
    if kind == "dd":
        B = ens.basis(2 * K + 1)
        if zeta == eta:
            raise la.PreconditionError("confluent parameters are outside the supported range")
        return simplify(B.norms[K] / (zeta - eta) * _cd(B, K + 1, zeta, eta))
    if kind == "d/d":
        if K == 0:
            return Fraction(1)
        B = ens.basis(2 * K - 1)
        s = sum(((B.p(2 * i + 1, eta) * B.transform(2 * i, zeta)
                  - B.p(2 * i, eta) * B.transform(2 * i + 1, zeta)) / B.norms[i]
                 for i in range(K)), Fraction(0))
        return simplify((eta - zeta) * s + 1)
    if kind == "1/dd":
        if K < 1:
            raise RangeError("inverse two-point average needs K >= 1")
        B = ens.basis(2 * K - 1)
        s = sum(((B.transform(2 * i + 1, eta) * B.transform(2 * i, zeta)
                  - B.transform(2 * i, eta) * B.transform(2 * i + 1, zeta)) / B.norms[i]
                 for i in range(K - 1)), Fraction(0))
        return simplify((s + B.rr(eta, zeta)) / (B.norms[K - 1] * (eta - zeta)))
    if kind == "1/d":
        if K < 1:
            raise RangeError("inverse average needs K >= 1")
        B = ens.basis(2 * K - 1)
        return simplify(B.transform(2 * K - 2, zeta) / B.norms[K - 1])
    raise ValueError(f"unknown two-point kind {kind!r}")


# ------------------------------------------------- average theorems

@dataclass
class PfaffianResult:
    value: object
    W: np.ndarray
    prefactor: object
    K: int


def _check_distinct(ens: SkewEnsemble, numer, denom):
    for lst, name in ((numer, "numerator"), (denom, "denominator")):
        if len(set(lst)) != len(lst):
            raise la.PreconditionError(f"{name} parameters must be pairwise distinct")
    for v in denom:
        if v in ens.points:
            raise PoleError(f"denominator parameter {v} lies on the ground set")


def _average_pf(ens: SkewEnsemble, numer: list, denom: list, order: str,
                method: str) -> PfaffianResult:
    _check_distinct(ens, numer, denom)
    diff = len(numer) - len(denom)
    if diff % 2:
        raise la.PreconditionError("numerator and denominator counts must differ by an even number")
    K = ens.N + diff // 2
    n = len(ens.points)
    lo = 1 if len(numer) >= 2 else 0
    hi = n // 2 - 1 if len(denom) >= 2 else n // 2
    if not lo <= K <= hi:
        raise RangeError(f"inner ensemble size {2 * K} out of range on {n} points")

    def norm(i):
        return normalization_c(ens, i + 1, method) / normalization_c(ens, i, method)

    def entry(a, sa, b, sb):
        if sa == "u" and sb == "u":
            return (a - b) * two_point_averages(ens, K - 1, a, b, "dd", method) / norm(K - 1)
        if sa == "v" and sb == "v":
            return norm(K) * (a - b) * two_point_averages(ens, K + 1, a, b, "1/dd", method)
        if sa == "v":
            return two_point_averages(ens, K, a, b, "d/d", method) / (a - b)
        return -entry(b, sb, a, sa)

    if order == "vu":
        labels = [(v, "v") for v in denom] + [(u, "u") for u in numer]
        pref = cross(denom, numer)
    else:
        labels = [(u, "u") for u in numer] + [(v, "v") for v in denom]
        pref = cross(numer, denom)
    pref = pref / (vandermonde(numer) * vandermonde(denom))
    m = len(labels)
    W = la.zeros(m)
    for i in range(m):
        for j in range(i + 1, m):
            W[i, j] = simplify(entry(*labels[i], *labels[j]))
            W[j, i] = -W[i, j]
    const = normalization_c(ens, K, method) / normalization_c(ens, ens.N, method)
    value = simplify(const * pref * la.pfaffian(W))
    return PfaffianResult(value, W, const * pref, K)


def average_beta4(ens: SkewEnsemble, alpha_minus: Sequence, alpha_plus: Sequence,
                  method: str = "polynomial") -> PfaffianResult:
    """``< prod d(alpha+) / prod d(alpha-) >`` over ``Delta^(4)_{2N}``.

    Inner ensembles have ``2(N + S)`` points with ``|alpha+| - |alpha-| = 2S``;
    the pfaffian runs over ``(alpha-, alpha+)``.
    """
    if ens.beta != 4:
        raise ValueError("average_beta4 needs a symplectic ensemble")
    return _average_pf(ens, list(alpha_plus), list(alpha_minus), "vu", method)


def average_beta1(ens: SkewEnsemble, alpha_minus: Sequence, alpha_plus: Sequence,
                  method: str = "polynomial") -> PfaffianResult:
    """``< prod d(alpha-) / prod d(alpha+) >`` over ``Delta^(1)_{2N}``.

    Inner ensembles have ``2(N - S)`` points with ``|alpha+| - |alpha-| = 2S``;
    the pfaffian runs over ``(alpha-, alpha+)``.
    """
    if ens.beta != 1:
        raise ValueError("average_beta1 needs an orthogonal ensemble")
    return _average_pf(ens, list(alpha_minus), list(alpha_plus), "uv", method)


def brute_average_pf(ens: SkewEnsemble, numer, denom):
    return ens.average_ratio(list(numer), list(denom))


# -------------------------------------------- K minors and the hat ensemble

def hat_ground(ground: ParityGroundSet, S: int) -> tuple[ParityGroundSet, tuple]:
    """New splitting with ``X0`` = the ``2S`` rightmost points of ``X-`` moved to ``X+``."""
    xm = ground.minus_points
    if S < 0 or 2 * S > len(xm):
        raise RangeError(f"hat construction needs 0 <= 2S <= |X-|, got S={S}")
    X0 = xm[len(xm) - 2 * S:] if S else ()
    return ParityGroundSet(ground.points, frozenset(xm[:len(xm) - 2 * S])), X0


def hat_weight_abs(ground: ParityGroundSet, h: dict, X0) -> dict:
    """Hat weight with absolute values of the differences."""
    X0 = tuple(X0)
    out = {}
    for z in ground.points:
        if z in X0:
            out[z] = 1 / (h[z] * prod(_abs(z - y) for y in X0 if y != z))
        elif z in ground.minus:
            out[z] = h[z] * prod(_abs(z - y) for y in X0)
        else:
            out[z] = h[z] / prod(_abs(z - y) for y in X0)
    return out


def _augmented_L(ground: ParityGroundSet, h: dict, alpha_minus, alpha_plus):
    """L with ``alpha''`` rows appended (``alpha'`` rows zero), ``h(alpha) = 1``.

    ``alpha-`` joins ``X-`` and ``alpha+`` joins ``X+``; only the double-primed
    copies couple, through ``h(x)h(y)/(x - y)`` entries of B type.
    """
    L0 = build_pfaffian_L(ground, h)
    n = len(ground.points)
    am, ap = list(alpha_minus), list(alpha_plus)
    a = len(am) + len(ap)
    L = la.zeros(2 * (n + a))
    L[:2 * n, :2 * n] = L0
    xi = ground.xi

    def put(r, c, v):
        L[r, c] = L[r, c] + v
        L[c, r] = L[c, r] - v

    arow = {}
    for t, v in enumerate(am + ap):
        arow[t] = la.dprime(n + t)
    for t, v in enumerate(am):
        r = arow[t]
        put(r, la.dprime(ground.index(xi)), h[xi] / (v - xi))
        for y in ground.plus_points[1:]:
            ly = ground.left(y)
            put(r, la.prime(ground.index(y)), h[y] / (v - y))
            put(r, la.dprime(ground.index(y)), h[ly] / (v - ly))
    for s, b in enumerate(ap):
        c = arow[len(am) + s]
        for x in ground.minus_points:
            put(la.dprime(ground.index(x)), c, h[x] / (x - b))
        for t, v in enumerate(am):
            put(arow[t], c, Fraction(1) / (v - b))
    return L, [la.prime(n + t) for t in range(a)], [arow[t] for t in range(a)]


def pf_K_minor(ground: ParityGroundSet, h: dict, alpha_minus, alpha_plus,
               method: str = "expansion"):
    """``Pf K(alpha'|alpha')`` with ``K = J + (J + L)^{-1}`` on ``alpha + X``.

    ``method="expansion"`` sums ``Pf L[alpha'' + X' + X'']`` over subsets;
    ``method="inverse"`` inverts ``J + L`` directly.
    """
    am, ap = list(alpha_minus), list(alpha_plus)
    if set(am + ap) & set(ground.points):
        raise PoleError("spectral parameters must lie off the ground set")
    if len(set(am + ap)) != len(am + ap):
        raise la.PreconditionError("spectral parameters must be pairwise distinct")
    if (len(am) + len(ap)) % 2:
        raise la.DimensionError("|alpha| must be even")
    L, primes, dprimes = _augmented_L(ground, h, am, ap)
    n = len(ground.points)
    pfJL = pf_J_plus_L(build_pfaffian_L(ground, h))
    if method == "inverse":
        M = la.inverse(L + la.J_matrix(L.shape[0] // 2))
        Kmat = M + la.J_matrix(L.shape[0] // 2)
        return simplify(la.pfaffian(la.sub(Kmat, primes)))
    if 2 ** n > MAX_CONFIGS:
        raise SizeGuardError("too many subsets to enumerate")
    tot = Fraction(0)
    for X in all_subsets(ground.points):
        idx = dprimes + _doubled(ground, X)
        tot = tot + la.pfaffian(la.sub(L, idx))
    return simplify(tot / pfJL)


def _E(v, zm, zp):
    return prod(v - z for z in zp) / prod(v - z for z in zm)


def pf_K_minor_identity(ground: ParityGroundSet, h: dict, alpha_minus, alpha_plus) -> tuple:
    """``(Pf K(alpha'|alpha') by expansion, right-hand side over the hat ensemble)``.

    ``|alpha+| - |alpha-| = 2S`` with ``S >= 0``; ``h(alpha) = 1``.  The cross
    factor is ``prod(alpha-; X0) / prod(alpha+; X0)``, which turns the hat
    average of ``E(., Z)`` into the average of ``E(., X~)``.
    """
    am, ap = list(alpha_minus), list(alpha_plus)
    diff = len(ap) - len(am)
    if diff % 2:
        raise la.PreconditionError("|alpha+| - |alpha-| must be even")
    S = diff // 2
    hg, X0 = hat_ground(ground, S)
    hh = hat_weight_abs(ground, h, X0)
    Lh = build_pfaffian_L(hg, hh)
    pfh = pf_J_plus_L(Lh)
    pf = pf_J_plus_L(build_pfaffian_L(ground, h))
    avg = Fraction(0)
    for Z in all_subsets(ground.points):
        p = prob_pfaffian_L_closed(hg, hh, Z, pfh)
        if p == 0:
            continue
        zm, zp = tilde_sets(hg, Z)
        avg = avg + p * prod(_E(a, zm, zp) for a in ap) / prod(_E(b, zm, zp) for b in am)
    rhs = (vandermonde(am) * vandermonde(ap) / cross(am, ap)
           * pfh / pf * prod(h[x] for x in X0) * _abs(vandermonde(X0))
           * cross(am, X0) / cross(ap, X0) * avg)
    lhs = pf_K_minor(ground, h, am, ap)
    return lhs, simplify(rhs)


# ------------------------------------------------- correlation functions

def _dsi_polynomial(ens: SkewEnsemble):
    N = ens.N
    B = ens.basis(2 * N - 1) if N else None

    def D(a, b):
        return _cd(B, N, a, b)

    def S(a, b):
        return sum(((B.p(2 * i + 1, a) * B.residue(2 * i, b)
                     - B.p(2 * i, a) * B.residue(2 * i + 1, b)) / B.norms[i]
                    for i in range(N)), Fraction(0))

    def I(a, b):
        s = sum(((B.residue(2 * i + 1, a) * B.residue(2 * i, b)
                  - B.residue(2 * i, a) * B.residue(2 * i + 1, b)) / B.norms[i]
                 for i in range(N)), Fraction(0))
        return s + B.omega[ens.points.index(a), ens.points.index(b)]

    return D, S, I


def _dsi_enumeration(ens: SkewEnsemble):
    """D, S, I as residues of enumerated two-point averages (partial fractions)."""
    N = ens.N

    def D(a, b):
        if a == b:
            return Fraction(0)
        return (a - b) * ens.average_ratio([a, b], [], N - 1) / (ens.c(N) / ens.c(N - 1))

    def S(a, b):
        tot = Fraction(0)
        for Y in ens.configs(N):
            if b not in Y:
                continue
            rest = [t for t in Y if t != b]
            tot = tot + ens.weight(Y) * prod(a - t for t in rest) / prod(b - t for t in rest)
        return tot / ens.c(N)

    def I(a, b):
        if a == b:
            return Fraction(0)
        hN = ens.c(N + 1) / ens.c(N)
        tot = Fraction(0)
        for Y in ens.configs(N + 1):
            if a not in Y or b not in Y:
                continue
            ra = prod(a - t for t in Y if t != a)
            rb = prod(b - t for t in Y if t != b)
            tot = tot + ens.weight(Y) / (ra * rb)
        return hN * (a - b) * tot / ens.c(N + 1)

    return D, S, I


def dsi_functions(ens: SkewEnsemble, method: str = "polynomial"):
    """The two-point functions ``(D, S, I)`` on grid points."""
    if method == "polynomial":
        return _dsi_polynomial(ens)
    if method == "enumeration":
        return _dsi_enumeration(ens)
    raise ValueError(f"unknown method {method!r}")


def assemble_dsi(D, S, I, z) -> np.ndarray:
    m = len(z)
    M = la.zeros(2 * m)
    for i in range(m):
        for j in range(m):
            M[i, j] = D(z[i], z[j])
            M[i, m + j] = S(z[i], z[j])
            M[m + i, j] = -S(z[j], z[i])
            M[m + i, m + j] = I(z[i], z[j])
    return M


def sigma_kernel(D, S, I, z) -> np.ndarray:
    """``2m x 2m`` matrix of the self-dual blocks ``[[S(b,a), -I(a,b)], [D(a,b), S(a,b)]]``.

    These are ``-J w(a, b)`` for the interleaved pfaffian blocks
    ``w(a, b) = [[D(a,b), S(a,b)], [-S(b,a), I(a,b)]]``, so ``Pf[Z Q] = rho_m``.
    """
    m = len(z)
    Q = la.zeros(2 * m)
    for i, a in enumerate(z):
        for j, b in enumerate(z):
            Q[2 * i, 2 * j] = S(b, a)
            Q[2 * i, 2 * j + 1] = -I(a, b)
            Q[2 * i + 1, 2 * j] = D(a, b)
            Q[2 * i + 1, 2 * j + 1] = S(a, b)
    return Q


def tdet(Q) -> object:
    """Quaternion determinant of a ``2x2``-block matrix, computed as ``Pf[Z Q]``."""
    Z = la.J_matrix(Q.shape[0] // 2, la.is_exact(Q))
    return la.pfaffian(Z.dot(Q))


def correlation_pfaffian(ens: SkewEnsemble, z: Sequence, method: str = "polynomial",
                         form: str = "pfaffian") -> object:
    """``rho_m(z)`` from the D/S/I kernel (``form`` "pfaffian" or "tdet")."""
    z = list(z)
    if len(set(z)) != len(z):
        raise la.PreconditionError("correlation points must be distinct")
    if any(x not in ens.points for x in z):
        raise la.PreconditionError("correlation points must lie on the ground set")
    m = len(z)
    if m == 0:
        return Fraction(1)
    if ens.N == 0:
        return Fraction(0)
    D, S, I = dsi_functions(ens, method)
    if form == "tdet":
        return simplify(tdet(sigma_kernel(D, S, I, z)))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return simplify(sign * la.pfaffian(assemble_dsi(D, S, I, z)))


def correlation_brute(ens: SkewEnsemble, z: Sequence) -> object:
    zs = set(z)
    return simplify(sum((ens.weight(Y) for Y in ens.configs() if zs <= set(Y)), Fraction(0))
                    / ens.c())


# ------------------------------------------------------------ equivalence

def _dist_prod(x, others):
    return prod(_abs(x - y) for y in others if y != x)


def weights_f4_f1(ground: ParityGroundSet, h: dict) -> tuple[dict, dict]:
    xm, xp = ground.minus_points, ground.plus_points
    f4, f1 = {}, {}
    for x in ground.points:
        if x in ground.minus:
            f4[x] = 1 / (h[x] * _dist_prod(x, xm))
            f1[x] = h[x] / _dist_prod(x, xp)
        else:
            f4[x] = h[x] / _dist_prod(x, xm)
            f1[x] = 1 / (h[x] * _dist_prod(x, xp))
    return f4, f1


def ensemble_equivalence_check(ground: ParityGroundSet, h: dict) -> dict:
    """Configuration-by-configuration check of the three ensemble bijections.

    (a) particle-hole on ``X-`` maps ``X~`` to ``Conf^(4)_{2M}`` with weight f4;
    (b) particle-hole on ``X+`` maps ``X~`` to ``Conf^(1)_{2N}`` with weight f1;
    (c) the two images are complements of each other.
    """
    xm, xp = ground.minus_points, ground.plus_points
    if len(xm) % 2 or len(xp) % 2:
        raise la.PreconditionError("|X-| and |X+| must both be even")
    if any(h[x] <= 0 for x in ground.points):
        raise la.PreconditionError("weight h must be strictly positive")
    M, N = len(xm) // 2, len(xp) // 2
    f4, f1 = weights_f4_f1(ground, h)
    e4 = SkewEnsemble(ground.points, f4, M, 4)
    e1 = SkewEnsemble(ground.points, f1, N, 1)
    L = build_pfaffian_L(ground, h)
    pfJL = pf_J_plus_L(L)
    full = set(ground.points)
    ok = {"a": True, "b": True, "c": True, "weights": True}
    img4, img1, count = set(), set(), 0
    for X in all_subsets(ground.points):
        p = prob_pfaffian_L(L, ground, X, pfJL)
        if not in_conf_L(ground, X):
            ok["a"] &= p == 0
            continue
        count += 1
        tm, tp = tilde_sets(ground, X)
        Y4 = tuple(sorted((set(xm) - set(tm)) | set(tp)))
        Y1 = tuple(sorted(set(tm) | (set(xp) - set(tp))))
        img4.add(Y4)
        img1.add(Y1)
        ok["a"] &= e4.prob(Y4) == p
        ok["b"] &= e1.prob(Y1) == p
        ok["c"] &= set(Y1) == full - set(Y4)
    ok["a"] &= img4 == set(e4.configs()) and len(img4) == count
    ok["b"] &= img1 == set(e1.configs()) and len(img1) == count
    for x in ground.points:
        ok["weights"] &= f1[x] * f4[x] == 1 / _dist_prod(x, ground.points)
    ok["configurations"] = count
    ok["empty_maps_to"] = (tuple(xm), tuple(xp))
    return ok


def dual_ensemble(ens: SkewEnsemble) -> SkewEnsemble:
    """Particle-hole dual on the whole ground set (beta 1 <-> 4).

    The dual weight is ``1 / (f(x) prod_{y != x} |x - y|)`` and the dual has
    ``|X|/2 - N`` pairs.
    """
    n = len(ens.points)
    if n % 2:
        raise la.PreconditionError("duality needs an even number of ground points")
    g = {x: 1 / (ens.f[x] * _dist_prod(x, ens.points)) for x in ens.points}
    return SkewEnsemble(ens.points, g, n // 2 - ens.N, 5 - ens.beta)
