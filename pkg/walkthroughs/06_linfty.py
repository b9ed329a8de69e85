# The pair (pi, P) as one Maurer-Cartan element of an L-infinity algebra, and
# the twisted structure it induces.
import random

from triavg.fixtures import RAVG_FIXTURES
from triavg.linfty import (Twisted, higher_jacobi_check, jacobi_samples, mc_element,
                           mc_pair_check, mc_sum)

rng = random.Random(0)
for name, make in sorted(RAVG_FIXTURES.items()):
    s = make()
    v, alpha = mc_element(s)
    samples = jacobi_samples(v, rng, per_n=3)
    tw = Twisted(v, alpha)
    print(f"{name:10} MC {mc_sum(v, alpha).is_zero()}  Jacobi fails {len(higher_jacobi_check(v, samples))}"
          f"  twisted fails {len(higher_jacobi_check(v, samples, lk=tw.lk))}")

s = RAVG_FIXTURES["projection"]()
bad = type(s)(s.bimodule, s.P.scale(3), s.lam)
print()
print("3P is MC:", mc_pair_check(bad).is_zero())
