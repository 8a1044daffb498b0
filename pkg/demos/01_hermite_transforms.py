"""Tour of the Hermite basis layer: evaluation, quadrature, analyze/synthesize.

Run:  python3 demos/01_hermite_transforms.py
"""

import math

import numpy as np

from hgl import analyze, gauss_hermite_rule, hermite_eval, hermite_matrix, synthesize, synthesize_many

# --- normalized Hermite functions -----------------------------------------
# h_0 peaks at pi^{-1/4}; every later mode stays below that peak.
print("h_0(0) =", hermite_eval(0, 0.0), "= pi^(-1/4)")
print("h_2(0) =", hermite_eval(2, 0.0), "= -pi^(-1/4)/sqrt(2)")

xs = np.linspace(-40, 40, 81)
peak = np.abs(hermite_matrix(2000, xs)).max()
print(f"max |h_k(x)| over k <= 2000, |x| <= 40: {peak:.10f} (bound {math.pi**-0.25:.10f})")

# --- Gauss-Hermite quadrature ----------------------------------------------
rule = gauss_hermite_rule(5)
print("\n5-point rule nodes:", np.round(rule.nodes, 6))
print("sum of weights:", rule.weights.sum(), "vs sqrt(pi) =", math.sqrt(math.pi))

# degree-9 exactness: integral of x^8 exp(-x^2) = 105 sqrt(pi)/16
approx = np.sum(rule.weights * rule.nodes**8)
print("x^8 moment:", approx, "exact:", 105 * math.sqrt(math.pi) / 16)

# --- analyze / synthesize roundtrip ----------------------------------------
# exp(-x^2/2) is pi^{1/4} h_0, so one coefficient carries everything.
series = analyze(lambda x: np.exp(-x**2 / 2), 1, 8)
print("\nanalyzed exp(-x^2/2):  c_0 =", series.coefficient((0,)).real,
      " (pi^(1/4) =", math.pi**0.25, ")")
print("tail max:", max(abs(series.coefficient((k,))) for k in range(1, 9)))
print("synthesize at x=1:", synthesize(series, 1.0).real, "vs exp(-1/2) =", math.exp(-0.5))

# a 2-d example: the tensor ground state
series2 = analyze(lambda p: np.exp(-(p[:, 0] ** 2 + p[:, 1] ** 2) / 2), 2, 6)
pt = (0.3, -0.7)
print("2-d synthesize:", synthesize(series2, pt).real,
      "vs", math.exp(-(0.3**2 + 0.7**2) / 2))

# random finite series roundtrip error
from hgl import finite_random

base = finite_random(30, seed=1)
recovered = analyze(lambda pts: synthesize_many(base, pts), 1, 30, quad_order=38)
grid = np.linspace(-3, 3, 100)
err = np.abs(synthesize_many(base, grid) - synthesize_many(recovered, grid)).max()
print("\nrandom degree-30 series roundtrip max error:", err)
