"""
A tour of the coordinates: the field tower, the nonsplit quadratic space,
and what Frobenius does to the standard basis.

    python3 demos/field_and_space.py
"""
import numpy as np

from orthodl import build_space, make_tower
from orthodl.quadspace import enumerate_isotropic, isotropic_line_count_formula

p, d = 3, 2
T = make_tower(p, 2)
print(T)
b = T.elem(T.b)
print("b^2 =", (b * b).code, " a =", T.a, " Frob(b) = -b:", b.frob() == -b)

V = build_space(p, d)
print("\nGram matrix over F_%d (hyperbolic planes, then diag(a, -1)):" % p)
print(V.gram)

F2 = V.tower(1)
e, f = V.e(d + 1), V.f(d + 1)
print("\nFrob(e_%d) = -2 f_%d:" % (d + 1, d + 1),
      np.array_equal(F2.vfrob(e), F2.vmul(F2.from_int(-2), f)))
print("so Frob swaps the isotropic lines <e_%d> and <f_%d>: the form does not split over F_%d"
      % (d + 1, d + 1, p))

for dd in (1, 2, 3):
    W = build_space(p, dd)
    n = sum(1 for _ in enumerate_isotropic(W, 1, 0))
    print("d = %d: %4d isotropic lines (formula %d)" % (dd, n, isotropic_line_count_formula(p, dd)))
