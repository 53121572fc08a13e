"""Randomized verification suites shared by the CLI and the acceptance tests.

Every check compares a formula with an independent route (enumeration,
direct elimination or quadrature) and records both sides.  Exact checks
require zero discrepancy; float checks use the stated relative tolerance.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from . import asymptotics as asy
from . import continuous as cont
from . import discrete as dd
from . import linalg as la
from . import pfaffian_ensembles as pe
from .scalars import QI, format_scalar

SUITES = ("appendix", "discrete2", "discrete14", "continuous", "asymptotics")

SIZES = {
    "small": {"appendix": 40, "discrete2": 8, "discrete14": 6, "continuous": 3, "max_points": 8},
    "medium": {"appendix": 200, "discrete2": 30, "discrete14": 20, "continuous": 10, "max_points": 12},
}


@dataclass
class Check:
    suite: str
    identity: str
    params: dict
    lhs: str
    rhs: str
    passed: bool
    discrepancy: str = "0"

    def __post_init__(self):
        self.passed = bool(self.passed)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def exact(self, identity, params, lhs, rhs):
        diff = lhs - rhs
        self.checks.append(Check(self.suite, identity, params, _s(lhs), _s(rhs), diff == 0, _s(diff)))

    def approx(self, identity, params, lhs, rhs, rtol):
        lhs, rhs = complex(lhs), complex(rhs)
        rel = abs(lhs - rhs) / max(abs(rhs), 1e-300)
        self.checks.append(Check(self.suite, identity, params, _s(lhs), _s(rhs), rel <= rtol, f"{rel:.3e}"))


def _s(x) -> str:
    if isinstance(x, (complex, float, np.complexfloating, np.floating)):
        z = complex(x)
        return f"{z.real:.15g}{z.imag:+.15g}i"
    return format_scalar(x)


def _params(**kw) -> dict:
    return {k: (_s(v) if not isinstance(v, (list, tuple)) else [_s(t) for t in v]) for k, v in kw.items()}


# ------------------------------------------------------------ random exact data

def rat(rng, span: int = 5, den: int = 4) -> Fraction:
    return Fraction(int(rng.integers(-span * den, span * den + 1)), int(rng.integers(1, den + 1)))


def rand_matrix(rng, n: int, m: int | None = None) -> np.ndarray:
    m = n if m is None else m
    return la.exact_matrix([[rat(rng) for _ in range(m)] for _ in range(n)])


def rand_skew(rng, n: int) -> np.ndarray:
    A = la.zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            A[i, j] = rat(rng)
            A[j, i] = -A[i, j]
    return A


def distinct_rats(rng, k: int, exclude=()) -> list:
    out = []
    while len(out) < k:
        v = rat(rng, 6, 3)
        if v not in out and v not in exclude:
            out.append(v)
    return out


def off_grid(rng, k: int, exclude=()) -> list:
    """Distinct Gaussian rationals with nonzero imaginary part."""
    out = []
    while len(out) < k:
        v = QI(rat(rng, 4, 3), Fraction(int(rng.integers(1, 7)), 3) * (1 if rng.integers(2) else -1))
        if v not in out and v not in exclude:
            out.append(v)
    return out


def positive_weights(rng, pts) -> dict:
    return {p: Fraction(int(rng.integers(1, 6)), int(rng.integers(1, 4))) for p in pts}


# ------------------------------------------------------------ appendix identities

def appendix_suite(seed: int = 1, instances: int = 200, max_size: int = 8) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport("appendix")
    for i in range(instances):
        n = int(rng.integers(1, max_size + 1))
        A, B = distinct_rats(rng, n), []
        B = distinct_rats(rng, n, exclude=A)
        rep.exact("cauchy determinant", _params(instance=i, n=n),
                  la.det(la.cauchy_matrix(A, B)), la.cauchy_determinant(A, B))

        s = int(rng.integers(1, max_size // 2 + 1))
        P, Q = rand_matrix(rng, s), rand_matrix(rng, s)
        rep.exact("block determinant", _params(instance=i, s=s),
                  la.det(la.block_offdiagonal(P, Q)), la.det_block_offdiagonal(P, Q))

        n = int(rng.integers(2, max_size + 1))
        M = rand_matrix(rng, n)
        while la.det(M) == 0:
            M = rand_matrix(rng, n)
        r = int(rng.integers(1, n + 1))
        rows = sorted(rng.choice(n, r, replace=False).tolist())
        cols = sorted(rng.choice(n, r, replace=False).tolist())
        rep.exact("minor of inverse", _params(instance=i, n=n, rows=rows, cols=cols),
                  la.det(la.sub(la.inverse(M), rows, cols)), la.minor_of_inverse(M, rows, cols))

        n = int(rng.integers(2, max_size + 1))
        A = rand_matrix(rng, n)
        r = int(rng.integers(0, n // 2 + 1))
        idx = rng.permutation(n).tolist()
        rows, cols = sorted(idx[:r]), sorted(idx[r:2 * r])
        rep.exact("I+A minor expansion", _params(instance=i, n=n, rows=rows, cols=cols),
                  la.minor_I_plus_A_direct(A, rows, cols), la.minor_expansion_I_plus_A(A, rows, cols))

        n = int(rng.integers(2, max_size + 1))
        L = rand_matrix(rng, n)
        while la.det(L + la.identity(n)) == 0:
            L = rand_matrix(rng, n)
        r = int(rng.integers(1, n + 1))
        rows = sorted(rng.choice(n, r, replace=False).tolist())
        cols = sorted(rng.choice(n, r, replace=False).tolist())
        rep.exact("K-minor sum", _params(instance=i, n=n, rows=rows, cols=cols),
                  la.det(la.sub(la.k_matrix(L), rows, cols)), la.k_minor_sum(L, rows, cols))

        n = 2 * int(rng.integers(1, max_size // 2 + 1))
        A = rand_skew(rng, n)
        rep.exact("pfaffian definition", _params(instance=i, n=n),
                  la.pfaffian(A), la.pfaffian_matchings(A))

        s = int(rng.integers(1, max_size // 2 + 1))
        P = rand_matrix(rng, s)
        rep.exact("pfaffian block", _params(instance=i, s=s),
                  la.pfaffian(la.skew_block(P)), la.pfaffian_of_block(P))

        npts = int(rng.integers(2, max_size // 2 + 1))
        A = rand_skew(rng, 2 * npts)
        k = int(rng.integers(1, npts // 2 + 1))
        rep.exact("J+A pfaffian expansion", _params(instance=i, points=npts, k=k),
                  la.pf_J_plus_A_direct(A, k), la.pf_J_plus_A_expansion(A, k))

        A = rand_skew(rng, 2 * npts)
        while la.pfaffian(A) == 0:
            A = rand_skew(rng, 2 * npts)
        m = int(rng.integers(1, npts // 2 + 1))
        rep.exact("pfaffian of inverse submatrix", _params(instance=i, points=npts, m=m),
                  la.pf_submatrix_of_inverse_direct(A, m), la.pf_submatrix_of_inverse(A, m))
    return rep


# ------------------------------------------------------------ discrete beta = 2

def beta2_instance(rng, n_points: int, N: int, S: int) -> tuple:
    pts = sorted(distinct_rats(rng, n_points))
    ens = dd.PolynomialEnsemble(tuple(pts), positive_weights(rng, pts), N)
    k_plus = max(0, -S) + int(rng.integers(0, 2))
    k_plus_b = max(0, -S) + int(rng.integers(0, 2))
    am = distinct_rats(rng, k_plus + S)
    bm = distinct_rats(rng, k_plus_b + S, exclude=am)
    ap = off_grid(rng, k_plus)
    bp = off_grid(rng, k_plus_b, exclude=ap)
    return ens, am, ap, bm, bp


def discrete2_suite(seed: int = 1, instances: int = 30, max_points: int = 10) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport("discrete2")
    for i in range(instances):
        n = int(rng.integers(6, max(6, min(10, max_points)) + 1))
        N = int(rng.choice([2, 3]))
        S = int([-1, 0, 1][i % 3])
        ens, am, ap, bm, bp = beta2_instance(rng, n, N, S)
        res = dd.average_beta2(ens, am, ap, bm, bp)
        rep.exact("beta=2 determinant formula",
                  _params(instance=i, points=n, N=N, S=S, alpha_minus=am, alpha_plus=ap,
                          beta_minus=bm, beta_plus=bp),
                  dd.brute_beta2(ens, am, ap, bm, bp), res.value)
    return rep


# ------------------------------------------------------------ discrete beta = 1, 4

def skew_instance(rng, n_points: int, N: int, beta: int) -> pe.SkewEnsemble:
    pts = sorted(distinct_rats(rng, n_points))
    return pe.SkewEnsemble(tuple(pts), positive_weights(rng, pts), N, beta)


def discrete14_suite(seed: int = 1, instances: int = 20, max_points: int = 12) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport("discrete14")
    hi = max(8, min(12, max_points))
    for beta in (4, 1):
        for i in range(instances):
            n = 2 * int(rng.integers(4, hi // 2 + 1))
            N = int(rng.choice([1, 2]))
            S = int([-1, 0, 1][i % 3])
            if N + S < 0:
                S = 0
            extra = 0 if N + S == 0 else 2 * int(rng.integers(0, 2))
            numer_k = max(0, 2 * S) + extra
            denom_k = max(0, -2 * S) + extra
            ens = skew_instance(rng, n, N, beta)
            plus = distinct_rats(rng, numer_k)
            minus = off_grid(rng, denom_k)
            p = _params(instance=i, points=n, N=N, S=S, alpha_plus=plus, alpha_minus=minus)
            if beta == 4:
                res = pe.average_beta4(ens, minus, plus)
                rep.exact("beta=4 pfaffian formula", p, pe.brute_average_pf(ens, plus, minus), res.value)
            else:
                # beta = 1 averages prod d(alpha-) / prod d(alpha+): swap roles
                res = pe.average_beta1(ens, plus, minus)
                rep.exact("beta=1 pfaffian formula", p, pe.brute_average_pf(ens, plus, minus), res.value)

    for i in range(max(1, instances // 4)):
        n = 8
        pts = sorted(distinct_rats(rng, n))
        k = int(rng.choice([2, 4]))
        ground = pe.ParityGroundSet(tuple(pts), frozenset(pts[:k]))
        h = positive_weights(rng, pts)
        ok = pe.ensemble_equivalence_check(ground, h)
        flags = all(ok[key] for key in ("a", "b", "c", "weights"))
        rep.checks.append(Check("discrete14", "particle-hole equivalence and f1 f4 relation",
                                _params(instance=i, points=n, minus=k), str(ok["configurations"]),
                                str(ok["configurations"]), flags))
        ens = pe.SkewEnsemble(tuple(pts), h, int(rng.integers(1, 3)), 4)
        dual = pe.dual_ensemble(ens)
        full = set(pts)
        worst = Fraction(0)
        for Y in ens.configs():
            comp = tuple(sorted(full - set(Y)))
            worst = max(worst, abs(ens.prob(Y) - dual.prob(comp)))
        rep.checks.append(Check("discrete14", "beta 4 <-> beta 1 duality", _params(instance=i, N=ens.N),
                                "0", str(worst), worst == 0, str(worst)))
    return rep


# ------------------------------------------------------------ continuous

def continuous_suite(seed: int = 1, instances: int = 10) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport("continuous")

    def cpoint(lo=0.2):
        return complex(rng.uniform(-1.5, 1.5), rng.uniform(lo, 1.2) * rng.choice([-1, 1]))

    for N in range(1, 7):
        herm = np.polynomial.hermite.Hermite.basis(N)
        for _ in range(max(1, instances // 3)):
            z = cpoint(0.0)
            rep.approx("Heine: <D(z)> = monic Hermite", _params(N=N, z=z),
                       cont.quadrature_average(2, N, numer=[z]), herm(z) / 2 ** N, 1e-9)
    for i in range(instances):
        N = int(rng.integers(2, 4))
        a, b = cpoint(0.0), cpoint()
        c, d = cpoint(0.0), cpoint()
        lhs = cont.tensor_average(2, N, numer=[a, c], denom=[b, d])
        rhs = cont.continuous_average(2, N, [a], [c], [b], [d]).value
        rep.approx("beta=2 continuous formula", _params(instance=i, N=N, numer=[a, c], denom=[b, d]),
                   lhs, rhs, 1e-6)
    for beta in (1, 4):
        for i in range(instances):
            # S = 0 needs N >= 2; N = 1 uses three numerator factors and one denominator
            N = 1 if beta == 1 else int(rng.integers(1, 3))
            numer = [cpoint(0.0) for _ in range(3 if N == 1 else 2)]
            denom = [cpoint() for _ in range(1 if N == 1 else 2)]
            n_pts = 2 * N if beta == 1 else N
            lhs = cont.tensor_average(beta, n_pts, numer=numer, denom=denom)
            rhs = cont.continuous_average(beta, N, numer, denom).value
            rep.approx(f"beta={beta} continuous formula",
                       _params(instance=i, N=N, numer=numer, denom=denom), lhs, rhs, 1e-6)
    for N in (1, 5, 10, 20, 40):
        for _ in range(2):
            z = complex(rng.uniform(-3, 3), rng.uniform(0.1, 2) * rng.choice([-1, 1]))
            P = cont.hermite_Psi_all(N, z)
            p = cont.hermite_psi_all(N, z)
            rep.approx("Wronskian", _params(N=N, z=z), P[N] * p[N - 1] - P[N - 1] * p[N],
                       cont.hermite_norm(N - 1) / cont.hermite_norm(N) * np.exp(-z * z / 2), 1e-10)
    return rep


# ------------------------------------------------------------ asymptotics

def asymptotics_suite(seed: int = 1, N_list=asy.DEFAULT_N_LIST, points=asy.SAMPLE_POINTS) -> SuiteReport:
    rng = np.random.default_rng(seed)
    rep = SuiteReport("asymptotics")
    for kid in asy.ALL_KERNELS:
        study = asy.scaling_study(kid.beta, kid.family, N_list, points)
        last = max(r.abs_error for r in study.rows if r.N == N_list[-1])
        rep.checks.append(Check("asymptotics", f"scaling {kid}", _params(N=list(N_list)),
                                "monotone" if study.monotone else "not monotone", f"{last:.3e}",
                                study.monotone and last < 5e-2, f"{last:.3e}"))
    for _ in range(5):
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 1) * rng.choice([-1, 1]))
        e = complex(rng.uniform(-2, 2), rng.uniform(0.2, 1) * rng.choice([-1, 1]))
        g = asy.limit_kernel("GUE-II", z, e)
        for name in ("GOE-II", "GSE-II"):
            rep.approx(f"GUE-II = {name}", _params(z=z, e=e), asy.limit_kernel(name, z, e), g, 1e-12)
    for x in rng.uniform(-4, 4, 5):
        r = asy.airy_ode_residual(x)
        rep.checks.append(Check("asymptotics", "Airy ODE residual", _params(x=x),
                                f"{r:.3e}", "0", r < 1e-10, f"{r:.3e}"))
    return rep


def run_suite(name: str, seed: int = 1, size: str = "small") -> SuiteReport:
    cap = SIZES[size]
    if name == "appendix":
        return appendix_suite(seed, cap["appendix"])
    if name == "discrete2":
        return discrete2_suite(seed, cap["discrete2"], cap["max_points"])
    if name == "discrete14":
        return discrete14_suite(seed, cap["discrete14"], cap["max_points"])
    if name == "continuous":
        return continuous_suite(seed, cap["continuous"])
    if name == "asymptotics":
        return asymptotics_suite(seed)
    raise ValueError(f"unknown suite {name!r}")
