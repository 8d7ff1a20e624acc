"""Checking a published polynomial against its own regular limit.

For (d1, d2) = (2, 3) a degree-4 polynomial in mu was printed.  At p = 1
the model is 3-regular, so 3 - 2 sqrt 2 must be a root.  It is not: the
value is 316 sqrt 2 - 444.  Rebuilding the polynomial from the discriminant
of the cubic gives a sextic that does vanish there.
"""

import math

from semireg.asymptotics import mu23_polynomial, mu23_regenerated

mu = 3 - 2 * math.sqrt(2)
print(f"printed polynomial at p=1:     {mu23_polynomial(1)(mu):+.6f}")
print(f"316 sqrt 2 - 444:              {316 * math.sqrt(2) - 444:+.6f}")
print(f"regenerated polynomial at p=1: {mu23_regenerated(1)(mu):+.1e}")
print("regenerated coefficients at p=1:", [str(c) for c in mu23_regenerated(1).coeffs])
