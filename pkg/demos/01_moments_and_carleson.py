"""Moments, tail masses and Carleson ratios for a few measures on [0, 1).

Run with ``python demos/01_moments_and_carleson.py``.
"""
import math

from dhilbert.measure import Measure, carleson_report, moment_decay_report, moment_sequence

# Three measures: Lebesgue measure, a point mass at 1/2 and the density (1-t) dt.
measures = {
    "lebesgue": Measure.lebesgue(),
    "atom(0.5)": Measure.atom(0.5),
    "(1-t) dt": Measure.jacobi(0.0, 1.0),
}

# Lebesgue moments are 1/(n+1), which makes H_mu the classical Hilbert matrix.
for name, m in measures.items():
    print(f"{name:>10}: mu_0..mu_5 =", [round(float(x), 6) for x in moment_sequence(m, 5).values])

# The density (1-t)^b dt has tail mass (1-t)^(b+1)/(b+1), so it is a
# (b+1)-Carleson measure and every ratio equals 1/(b+1).
for b in (0.5, 1.0, 1.5):
    rep = carleson_report(Measure.jacobi(0.0, b), b + 1)
    print(f"b={b}: ratios in [{min(rep.ratios):.6f}, {max(rep.ratios):.6f}], 1/(b+1) = {1/(b+1):.6f}")

# Lebesgue measure is only 1-Carleson: at order 2 the ratios blow up like 1/(1-t).
rep = carleson_report(Measure.lebesgue(), 2.0)
print("lebesgue, s=2: last ratios", rep.ratios[-3:], "trend", rep.vanishing_trend)

# The matching moment decay: mu_n (n+1)^(b+1) approaches Gamma(b+1).
for b in (0.5, 1.0, 1.5):
    sup, trend = moment_decay_report(Measure.jacobi(0.0, b), b + 1, 4096)
    last = moment_sequence(Measure.jacobi(0.0, b), 4096)[4096] * 4097 ** (b + 1)
    print(f"b={b}: mu_4096 * 4097^(b+1) = {last:.5f}, Gamma(b+1) = {math.gamma(b + 1):.5f}, trend {trend:.4f}")

# A point mass below 1 has geometric moments: little-o of every power, trend ~ 0.
print("atom(0.5), s=2:", moment_decay_report(Measure.atom(0.5), 2.0, 64))
