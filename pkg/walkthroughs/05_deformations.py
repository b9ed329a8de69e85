# Infinitesimal deformations: a direction (mu1, nu1, l1, r1, P1) keeps the
# identities to first order exactly when its cochain is a 2-cocycle, and two
# directions are equivalent when the cocycles differ by a coboundary.
import random

from triavg.algebras import LinearOp
from triavg.cohomology import (check_infinitesimal, classify_deformations, coboundary_direction,
                               cochain_direction, dump_representative, equivalent_by_coboundary)
from triavg.fixtures import dual_projection

s = dual_projection()
reps = classify_deformations(s)
print("dim H^2 =", len(reps))
for r in reps:
    print(dump_representative(r))

nontrivial = cochain_direction(s, reps[0])
rep = check_infinitesimal(s, nontrivial)
print("representative: deformation", rep.is_deformation, "class", rep.cohomology_class)

rng = random.Random(1)
n = s.dimA


def rnd_op(k):
    return LinearOp(k, k, [[rng.randint(-2, 2) for _ in range(k)] for _ in range(k)])


trivial = coboundary_direction(s, rnd_op(s.dimA), rnd_op(s.dimB))
rep = check_infinitesimal(s, trivial)
print("coboundary: deformation", rep.is_deformation, "class", rep.cohomology_class)
print("coboundary ~ 0:", equivalent_by_coboundary(s, trivial, cochain_direction(s, {})))
print("representative ~ 0:", equivalent_by_coboundary(s, nontrivial, cochain_direction(s, {})))

# perturb mu1 at random; the two tests still agree
mu1 = [[[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)] for _ in range(n)]
random_dir = (mu1,) + nontrivial[1:]
rep = check_infinitesimal(s, random_dir)
print("random mu1: deformation", rep.is_deformation, "cocycle", rep.is_cocycle,
      "class", rep.cohomology_class)
