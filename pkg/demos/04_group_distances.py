"""Exact distances between bilipschitz automorphisms of a finite space.

Run:  python demos/04_group_distances.py
"""

import random

from urylab import AutoMap, dist_L, dist_S, dist_hat, dist_n
from urylab.gen import random_permutation_map, random_space

rng = random.Random(2)
space = random_space(rng, 8)
f = random_permutation_map(rng, space)
g = random_permutation_map(rng, space)
h = random_permutation_map(rng, space)
ident = AutoMap.identity(space)

# The stretch distance is stored as the exact rational lip(f^-1 o g); its
# logarithm is produced only for display.
print("lip(f^-1 o g) =", dist_L(f, g))
print("ball sups d_1..d_4:", [str(dist_n(f, g, n)) for n in range(1, 5)])
print("weighted series d_S =", dist_S(f, g))

hat = dist_hat(f, g)
print("combined: stretch", hat.stretch, " series", hat.series,
      " display", round(hat.display(), 6))
print("zero iff equal:", dist_hat(f, f).is_zero(), dist_hat(f, g).is_zero())

# Group-flavored identities hold exactly, not approximately.
print("\nleft invariance:",
      dist_L(h.compose(f), h.compose(g)) == dist_L(f, g))
print("series triangle:",
      dist_S(f, h) <= dist_S(f, g) + dist_S(g, h))
print("stretch triangle (multiplicative):",
      dist_L(f, h) <= dist_L(f, g) * dist_L(g, h))
print("identity is lip", ident.lip(), "and", dist_S(ident, ident), "from itself")
