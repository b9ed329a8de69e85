# N(a, x) = (P(x), 0) on A ⊕ B against the Nijenhuis identity.  For ⊣ and ⊢
# it tracks the averaging identities, but for ⊥ both sides of the identity
# collapse: with N² = 0 and (P(x), 0) ⊥ (0, y) = 0, it reads P(x)P(y) = 0.
from triavg.algebras import check_nijenhuis, semidirect_unchecked
from triavg.fixtures import RAVG_FIXTURES
from triavg.operators import check_relative_averaging, nijenhuis_of

for name, make in sorted(RAVG_FIXTURES.items()):
    s = make()
    d = semidirect_unchecked(s.bimodule, s.lam)
    rep = check_nijenhuis(d, nijenhuis_of(s))
    tags = sorted({v.tag for v in rep.violations})
    print(f"{name:10} averaging {check_relative_averaging(s).ok!s:5}  nijenhuis {rep.ok!s:5}  {tags}")
