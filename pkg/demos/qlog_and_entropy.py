"""
The q-logarithm and Tsallis entropy
===================================

The deformed logarithm log_q(t) = (t^(1-q) - 1)/(1 - q) is the scoring
transform behind every robust objective in this package.  This demo shows
its shape, its limit back to the natural log, and its link to entropy.
"""

import numpy as np

from qlid import qlog, qlog_second_derivative, tsallis_entropy

t = np.array([0.25, 0.5, 1.0, 2.0, 4.0])

# At q = 1 the transform is the natural logarithm exactly.
print("t        :", t)
print("log t    :", np.round(qlog(t, 1.0), 6))

# Smaller q flattens the right tail and steepens the left one; larger q
# does the opposite.  Downweighting huge density ratios is what makes the
# q-log objectives robust.
for q in (0.5, 0.9, 1.1, 2.0):
    print(f"log_{q:<4}:", np.round(qlog(t, q), 6))

# The transform is concave for every q > 0: the second derivative
# -q t^(-q-1) is always negative.
print("\nsecond derivative at t=2:",
      [float(qlog_second_derivative(2.0, q)) for q in (0.5, 1.0, 2.0)])

# Continuity in q: the gap to the natural log shrinks linearly in |1-q|.
for delta in (1e-2, 1e-4, 1e-6):
    gap = abs(qlog(3.0, 1.0 + delta) - qlog(3.0, 1.0))
    print(f"|log_(1+{delta:.0e})(3) - log 3| = {gap:.3e}")

# Tsallis entropy of a finite distribution; q = 1 recovers Shannon.
uniform = [0.25, 0.25, 0.25, 0.25]
print("\nS_2(uniform/4)  =", tsallis_entropy(uniform, 2.0))
print("S_1(fair coin)  =", tsallis_entropy([0.5, 0.5], 1.0), "(= ln 2)")

# Per observation, the q-log of a density value is the Tsallis entropy of
# the rescaled singleton: log_q(f) = S_q([f^((1-q)/q)]).  Summing this
# identity over a sample turns any q-log-likelihood into an entropy.
f, q = 0.7, 0.5
lhs = float(qlog(f, q))
rhs = tsallis_entropy([f ** ((1.0 - q) / q)], q)
print(f"\nlog_q(f) = {lhs:.12f}")
print(f"S_q form = {rhs:.12f}")
