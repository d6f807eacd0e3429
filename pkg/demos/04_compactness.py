"""Compactness through finite-rank truncations.

Zeroing rows 0..m of S_mu leaves the tail S_mu - S_mu,m.  For vanishing
Carleson measures its norm goes to 0 as m grows; for a merely Carleson
measure it does not.
"""
from dhilbert.analysis import compactness_diagnostic, lower_bound_check
from dhilbert.measure import Measure
from dhilbert.specialfn import KernelParams

p = KernelParams(2, 2)
cuts = [16, 32, 64, 128, 256]
cases = [
    ("atom(0.5)", Measure.atom(0.5)),        # geometric moments
    ("(1-t)^1.5 dt", Measure.jacobi(0, 1.5)),  # vanishing 2-Carleson
    ("(1-t) dt", Measure.jacobi(0, 1.0)),     # 2-Carleson, not vanishing
]
for name, m in cases:
    tails = compactness_diagnostic(m, p, 1024, cuts)
    print(f"{name:>14}:", "  ".join(f"m={t.mcut}: {t.norm:.3e}" for t in tails))

# Test functions f_t: the ratio mu([t,1)) / ((1-t^2)^s ||DH f_t||) stays bounded
# when DH_mu is bounded.
for name, m in cases[1:]:
    print(name, [(t, round(r, 5)) for t, r in lower_bound_check(m, p, [0.5, 0.9, 0.99, 0.999])])
