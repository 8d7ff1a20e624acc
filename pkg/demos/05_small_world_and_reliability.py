"""Two smaller experiments.

The ring with a random perfect matching on every other vertex has average
degree 2.5; its predicted algebraic connectivity is the smallest root of a
degree-9 polynomial.  Then a reliability probe: how many uniformly random
edge deletions a 6-regular graph on 500 vertices survives.
"""

from semireg.asymptotics import mu_small_world
from semireg.experiments import reliability_deletions, run_ensemble
from semireg.generators import RegularParams, SmallWorldParams

rep = run_ensemble(SmallWorldParams(1000), trials=20, seed=0)
print(f"small world: mean AC {rep.mean:.5f}, prediction {mu_small_world():.5f}")

rel = reliability_deletions(RegularParams(6, 500), trials=20, seed=0)
print(f"6-regular, n=500: {rel.mean:.0f} deletions on average, "
      f"{rel.isolated_fraction:.0%} of them ended by isolating a vertex")
