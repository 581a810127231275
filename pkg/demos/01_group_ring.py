"""
Group ring of Gamma_0(11)
=========================

Products of (g - 1) factors, their expansion over subsets, and the
telescoping identity, all in exact integer arithmetic.
"""
from chenforms import B, C, T, augmentation, delta_product, elliptic_telescoping, inclusion_exclusion_expand

# The product (T - 1)(B - 1)(C - 1) lies in the cube of the augmentation ideal.
x = delta_product([T, B, C])
print(x)
print("augmentation:", augmentation(x), "order tag:", x.order)

# Expanding over subsets gives the same element without any ring products.
print("inclusion-exclusion agrees:", x == inclusion_exclusion_expand([T, B, C]))

# Each term remembers how it factors; the integrator uses this to lift loops.
for g, coeff in x.items():
    print(f"{coeff:+d}  {g}  =  {' * '.join(map(str, x.factorization(g))) or '1'}")

# (1 + B + B^2)(B - 1) = B^3 - 1
print(elliptic_telescoping(B, 3))
