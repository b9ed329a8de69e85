# Bracketed words modulo the averaging relations: every word rewrites to a
# unique normal form, and evaluation factors through it.
from triavg.fixtures import kz2_averaging
from triavg.free import (Evaluator, all_normal_forms, all_words, confluence_check,
                         enumerate_words, factorization_failures, normal_form, parse, pretty,
                         reduce_by_steps)

w = parse("[ x ] [ [ x ] ] [ x ]")
print("word", pretty(w))
print("  three-rule system reaches", sorted((int(c), pretty(v)) for c, v in all_normal_forms(w, 2, "basic")))
print("  completed system reaches", sorted((int(c), pretty(v)) for c, v in all_normal_forms(w, 2)))
nw, steps = reduce_by_steps(w)
for st in steps:
    print("   ", st.line())

print()
for n in (1, 2, 3):
    print(f"len <= {n}: {len(enumerate_words('xy', n, 3))} normal words")
ws = all_words("xy", 3, 3)
print(len(ws), "words, critical failures:", len(confluence_check(ws)),
      "(basic rules:", len(confluence_check(ws, "basic")), ")")

ev = Evaluator(*kz2_averaging(), {"x": (1, 0), "y": (2, -1)})
print("factorization failures:", len(factorization_failures(ev, ws)))
print(pretty(parse("x [ y [ x ] ]")), "->", normal_form(parse("x [ y [ x ] ]"), 2))
