# Triassociative structures are the Maurer-Cartan elements of a graded Lie
# bracket on tree-indexed cochains: [pi, pi] = 0 exactly when pi is triass.
from triavg.algebras import check_triass
from triavg.complexes import bracket, mc_operator, pi_of
from triavg.fixtures import broken_triass, induced_kz2, projection

for name, d in (("induced_kz2", induced_kz2()), ("broken", broken_triass())):
    pi = pi_of(d)
    print(name, "triass:", check_triass(d).ok, " [pi,pi] = 0:", bracket(pi, pi).is_zero())

# and an operator P is averaging exactly when dP + 1/2 [[P, P]] vanishes
s = projection()
print()
print("projection: mc_operator zero:", mc_operator(s).is_zero())
