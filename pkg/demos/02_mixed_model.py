"""The mixed model: algebraic connectivity as a function of the share p.

The prediction comes from the repeated-root condition of a cubic in the
tree-walk series R(x).  At p = 1 it reduces to the 3-regular value and for
small p it behaves like p^2 / 4.  The same number is recovered from the
coefficient growth of the walk-count series.
"""

from fractions import Fraction

from semireg.asymptotics import mu_regular, mu_rsr
from semireg.series import builtin_system, growth_rate, solve_gf_system

print("  p      mu_rsr(p,2,3)   p^2/4")
for k in range(0, 11):
    p = Fraction(k, 10)
    print(f"{float(p):4.1f}  {mu_rsr(p, 2, 3):14.8f}  {float(p * p) / 4:8.5f}")
print(f"3-regular limit: {mu_regular(3):.8f}")

phi = solve_gf_system(builtin_system("rsr", p=Fraction(1, 2), d1=2, d2=3), 4000)["phi"]
print(f"series estimate at p = 0.5: {3 - growth_rate(phi):.6f}")
