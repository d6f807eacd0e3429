"""Bounded versus unbounded DH_mu on the Bergman space (alpha = beta = 2).

(1-t) dt is a 2-Carleson measure: the norm of the truncated S_mu settles.
Lebesgue measure is not: the norm roughly doubles with the truncation.
"""
from dhilbert.analysis import DiagnosticConfig, boundedness_diagnostic
from dhilbert.measure import Measure
from dhilbert.specialfn import KernelParams

p = KernelParams(2, 2)
config = DiagnosticConfig(truncations=(128, 256, 512, 1024))

for name, m in [("(1-t) dt", Measure.jacobi(0.0, 1.0)), ("lebesgue", Measure.lebesgue())]:
    rep = boundedness_diagnostic(m, p, config)
    print(f"== {name}")
    print("   carleson sup ratio   ", rep.carleson.sup_ratio)
    print("   moment sup, trend    ", rep.moment_decay)
    print("   norm estimates       ", [round(e, 5) for e in rep.norm_curve.estimates])
    print("   growth per doubling  ", [round(g, 4) for g in rep.norm_curve.growth_ratios])
    print("   Hardy bound C_mu * B ", rep.hardy_bound)
    for note in rep.verdict_notes:
        print("   -", note)
