"""Gaussian ensembles: Heine formula, exact two-point kernels and densities."""
import numpy as np

from charpoly import continuous as cont

z = 0.3 + 0.2j
print("<D(z)> over 2-point GUE:", cont.quadrature_average(2, 2, numer=[z]), " z^2 - 1/2 =", z * z - 0.5)

zeta, eta = 0.4 + 0.5j, -0.3 - 0.6j
for beta in (2, 1, 4):
    for fam in ("I", "II", "III"):
        w = cont.kernel_W(beta, fam, 3, zeta, eta)
        q = cont.kernel_W_average(beta, fam, 3, zeta, eta)
        print(f"beta={beta} W_{fam:<3} summation {w:.10f}  quadrature {q:.10f}")

a, b = [0.4 + 0.1j, -0.7 + 0.3j], [0.2 - 0.5j, 0.6 + 0.4j]
res = cont.continuous_average(4, 2, a, b)
print("GSE N=2 ratio: theorem", res.value, " tensor", cont.tensor_average(4, 2, numer=a, denom=b))

xs = np.linspace(-3, 3, 7)
print("GOE (2 points) density:", [round(cont.correlation_function(1, 1, [x]), 6) for x in xs])
