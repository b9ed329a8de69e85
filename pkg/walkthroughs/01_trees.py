# Planar trees index everything downstream: a cochain of arity n is a
# family of n-ary maps, one per tree with n leaves.
from triavg.trees import (BulletKind, bullet, distinguished, enumerate_trees, face, joints,
                          parse)

for n in range(1, 6):
    print(f"arity {n}: {len(enumerate_trees(n))} trees")

print()
for t in enumerate_trees(2):
    print(t, "joints", joints(t))

# leaf deletion and the product a tree induces at a pair of leaves
t = parse("((| |) | |)")
print()
print("tree", t)
for i in range(1, 4):
    print(f"  delete leaf {i}: {face(t, i)}")
print("  bullets:", [bullet(t, i).name for i in range(1, 4)])

# the trees on which a triassociative algebra restricts to an associative one
for kind in BulletKind:
    print(kind.name, [str(distinguished(n, kind)) for n in (2, 3)])
