# Cohomology of a relative averaging algebra and the long exact sequence
# linking it to the operator complex and the bimodule complex.
from triavg.cohomology import (assact_cohomology, format_table, long_exact_check,
                               operator_cohomology, ravg_cohomology)
from triavg.fixtures import RAVG_FIXTURES

for name in ("projection", "dual", "zero"):
    s = RAVG_FIXTURES[name]()
    print(f"== {name}")
    for label, fn in (("rAvg", ravg_cohomology), ("P", operator_cohomology)):
        print(label)
        print(format_table([fn(s, n) for n in (1, 2, 3)]))
    print("AssAct")
    print(format_table([assact_cohomology(s.bimodule, n) for n in (1, 2, 3)]))

print()
rep = long_exact_check(RAVG_FIXTURES["dual"]())
print("\n".join(rep.lines()))
print("exact:", rep.ok)
