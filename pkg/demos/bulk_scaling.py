"""Convergence of the scaled finite-N kernels to their bulk limits."""
from charpoly import asymptotics as asy

for kid in asy.ALL_KERNELS:
    rep = asy.scaling_study(kid.beta, kid.family, asy.DEFAULT_N_LIST, asy.SAMPLE_POINTS)
    errs = [max(r.abs_error for r in rep.rows if r.N == N) for N in asy.DEFAULT_N_LIST]
    print(f"{str(kid):8s}", "  ".join(f"N={N}: {e:.2e}" for N, e in zip(asy.DEFAULT_N_LIST, errs)),
          " monotone" if rep.monotone else " NOT monotone")

alpha, beta_ = [0.3, -0.4 + 0.1j], [0.2 - 0.6j, -0.5 - 0.3j]
print("ratio limit", asy.ratio_limit(alpha, beta_))
for beta in (1, 2, 4):
    print(f"  beta={beta} N=80:", asy.scaled_average(beta, 80, alpha, beta_))

print("GOE sine-limit block at (0.7, -0.4):")
print(asy.sine_limit_correlations(1, 0.7, -0.4))
