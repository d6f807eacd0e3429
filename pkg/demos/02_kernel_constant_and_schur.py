"""The homogeneous kernel K(x, y) and its Beta-function constant.

For 0 < alpha <= 2 <= beta < 4 the kernel
    K(x, y) = x^((3-beta)/2) y^((alpha-1)/2) / (x+y)^(2-(beta-alpha)/2)
has int_0^inf K(x,1) x^(-1/2) dx = B(2 - beta/2, alpha/2), and the matrix
(K(n, k)) is bounded on l^2 by that constant.
"""
from dhilbert.analysis import schur_inequality_check
from dhilbert.specialfn import KernelParams, hardy_constant, kernel_integral_check

print(f"{'alpha':>6} {'beta':>6} {'B(2-b/2, a/2)':>16} {'quadrature':>16} {'max Schur ratio':>16}")
for alpha, beta in [(2, 2), (1, 3), (2, 3), (0.5, 2.5), (1.5, 3.5), (0.5, 3.99)]:
    p = KernelParams(alpha, beta)
    ratio = schur_inequality_check(p, trials=50, K=1024, seed=0)
    print(f"{alpha:6} {beta:6} {hardy_constant(p):16.10f} {kernel_integral_check(p):16.10f} {ratio:16.6f}")

# beta close to 4 pushes the first Beta argument toward zero: the constant
# grows like 2/(4-beta) and the x^(1-beta/2) singularity at the origin gets
# close to non-integrable.  The graded quadrature still resolves it.
