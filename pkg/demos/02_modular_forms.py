"""
The two weight-2 forms of level 11
==================================

The cusp form q prod (1 - q^n)^2 (1 - q^11n)^2 and the Eisenstein series
E2(z) - 11 E2(11z), evaluated anywhere in the upper half-plane by first
moving the point up its Gamma_0(11)-orbit.
"""
import numpy as np

from chenforms import B, eval_form, height_lift, named_form

cusp, eis = named_form("cusp11"), named_form("eis11")
print("cusp a_0..a_10:", cusp.coefficients[:11])
print("eis  b_0..b_11:", eis.coefficients[:12])

# A point close to the real axis and the point it is lifted to.
z = 0.3 + 0.004j
g, w = height_lift(z, 11)
print(f"lift of {z}: g = {g}, w = {w:.6f}")

# Weight-2 invariance: (cz + d)^-2 f(gz) = f(z).
z = 0.2 + 0.7j
for f in (cusp, eis):
    lhs = eval_form(f, B.act(z)) * B.automorphy(z) ** -2
    print(f.name, abs(lhs - eval_form(f, z)))

# Values along a vertical ray approach the constant term.
ys = np.array([0.5, 1.0, 2.0, 4.0])
print(np.round(eval_form(eis, 0.1 + 1j * ys), 8))
