"""Large-n algebraic connectivity for every integer-average-degree pair.

For average degree d = 3..8 we list all bipartite (d1, d2) pairs and compare
the bipartite prediction with the d-regular value d - 2 sqrt(d - 1).  The
unequal pair wins up to d = 7; at d = 8 the regular graph is better.
"""

from semireg.asymptotics import mu_regular, mu_rsrb
from semireg.generators import integer_pairs

print(f"{'d':>2} {'d1':>3} {'d2':>3} {'mu':>9} {'vs regular':>11}")
for d in range(3, 9):
    reg = mu_regular(d)
    for d1, d2 in integer_pairs(d):
        mu = mu_rsrb(d1, d2)
        print(f"{d:>2} {d1:>3} {d2:>3} {mu:9.5f} {mu - reg:+11.5f}")
