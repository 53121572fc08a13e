"""Exact averages of characteristic polynomials over small discrete ensembles."""
from fractions import Fraction as F

from charpoly import discrete as dd
from charpoly import pfaffian_ensembles as pe
from charpoly.scalars import QI

pts = tuple(F(i) for i in range(8))
f = {p: F(1 + i % 3, 2) for i, p in enumerate(pts)}

ens = dd.PolynomialEnsemble(pts, f, 3)
am, ap, bm, bp = [F(1, 3), F(5, 2)], [QI(F(1, 2), 1)], [F(-1, 4)], []
res = dd.average_beta2(ens, am, ap, bm, bp)
print("beta=2  determinant formula:", res.value)
print("        enumeration        :", dd.brute_beta2(ens, am, ap, bm, bp))

for beta in (4, 1):
    sk = pe.SkewEnsemble(pts, f, 2, beta)
    numer, denom = [F(1, 3)], [QI(F(1, 2), 1)]
    res = pe.average_beta4(sk, denom, numer) if beta == 4 else pe.average_beta1(sk, numer, denom)
    print(f"beta={beta}  pfaffian formula   :", res.value)
    print("        enumeration        :", pe.brute_average_pf(sk, numer, denom))

uni = {p: F(1) for p in pts[:4]}
print("uniform {0,1,2,3}: pi_2 coefficients", [str(c) for c in dd.discrete_orthogonal_basis(pts[:4], uni, 2).coeffs[2]])
