# A relative averaging operator P: B -> A of weight lam turns the bimodule B
# into a triassociative algebra:  x ⊣ y = x.P(y),  x ⊢ y = P(x).y,  x ⊥ y = lam xy.
from triavg.algebras import check_triass, semidirect
from triavg.fixtures import deformed_average, projection
from triavg.operators import check_relative_averaging, graph_check, induced_triass

for make in (projection, deformed_average):
    s = make()
    print(make.__name__, "weight", s.lam)
    print("  averaging:", check_relative_averaging(s).ok)
    d = induced_triass(s)
    print("  induced triass:", check_triass(d).ok)
    print("  graph is a subalgebra of A ⊕ B:", graph_check(s))
    print("  A ⊕ B itself is triass:", check_triass(semidirect(s.bimodule, s.lam)).ok)

# doubling P breaks the identities; the report names the failing clause
s = projection()
bad = type(s)(s.bimodule, s.P.scale(2), s.lam)
rep = check_relative_averaging(bad)
print()
print("2P:", rep.ok)
for line in rep.lines()[:3]:
    print(" ", line)
