# Strict structures seen as homotopy ones, and a genuinely graded example:
# an interval algebra with a differential, where P = id is a homotopy
# operator for one weight and not another.
from triavg.fixtures import RAVG_FIXTURES
from triavg.homotopy import (HomotopyOperator, adjoint_rep, ainf_check, homotopy_operator_check,
                             interval_algebra, strict_ainf, strict_operator, strict_rep,
                             triassinf_check)

s = RAVG_FIXTURES["deformed"]()
res = homotopy_operator_check(strict_ainf(s.bimodule.mu), *strict_rep(s.bimodule), s.lam,
                              strict_operator(s.P))
print("strict deformed: operator ok", res.ok, "after", res.terms, "exponential terms")
print("  induced Triass-infinity ok:", triassinf_check(res.induced).ok)

ia = interval_algebra()
print()
print("interval algebra A-infinity:", ainf_check(ia).ok)
P = HomotopyOperator({1: {(0, (j,), j): 1 for j in range(ia.dim)}})
for lam in (1, 2):
    r = homotopy_operator_check(ia, *adjoint_rep(ia), lam, P)
    nz = {k: len(c.data) for k, c in r.defect.items() if not c.is_zero()}
    print(f"  P = id, weight {lam}: ok {r.ok}, defect entries by arity {nz}")
