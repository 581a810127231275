"""
Period matrix and dual basis
============================

The periods of (cusp, conj cusp, eis) against three group elements form an
invertible matrix; its inverse Kronecker powers give combinations Lambda_L
of the F_I whose psi-images are Kronecker deltas.

With C = (12,1,11,1) the matrix is singular: C is T times a parabolic
fixing 0, so every cusp-form period of C vanishes.  D = (2,1,11,6) is used
in its place.
"""
import numpy as np

from chenforms import B, C, D, Letter, T, dual_basis_coefficients, named_form, period_matrix, section_construct
from chenforms.errors import SingularPeriodMatrix

cusp, eis = Letter(named_form("cusp11")), Letter(named_form("eis11"))
letters = (cusp, cusp.conj(), eis)

try:
    period_matrix(letters, (T, B, C))
except SingularPeriodMatrix as exc:
    print("T, B, C:", exc)

P = period_matrix(letters, (T, B, D))
np.set_printoptions(precision=6, suppress=True)
print(P.entries)
print("row-normalized |det|:", P.normalized_det)

M = dual_basis_coefficients(P, 2)
periods = {(r, g): P.entries[r, j] for r in range(3) for j, g in enumerate((T, B, D))}
lam = section_construct({(2, 2): 1.0}, M, letters, 2)
for pair in ((T, T), (D, D), (B, T)):
    print(" ".join(map(str, pair)), round(abs(lam.psi(pair, 2j, periods)), 10))
