"""Mobius functions, and what they count for hyperplane arrangements.

The characteristic polynomial of an arrangement is a Mobius sum over its
intersection poset. Evaluating it at -1 counts regions; at a prime q it
counts points of F_q^d off the hyperplanes. Three independent computations
agree.
"""

from __future__ import annotations

import math

from enumcomb.arrkit import (
    BACKENDS,
    arrangement_cd_index,
    build_named_arrangement,
    char_poly,
    complement_count,
    intersection_poset,
    regions,
)
from enumcomb.posetkit import (
    flag_and_cd,
    isomorphic,
    linear_extensions,
    mobius_value,
    named_poset,
    noncomm_str,
    partition_lattice,
    zeta_polynomial,
)

# Mobius values of the partition lattices: (-1)^(n-1) (n-1)!
print("mu(partition lattice):", [mobius_value(partition_lattice(n)) for n in range(1, 7)])

# the zeta polynomial at -1 gives the Mobius value again
nc = named_poset("noncrossing:5")
print("noncrossing 5: Z(-1) =", zeta_polynomial(nc)(-1), " mu =", mobius_value(nc))

# linear extensions of a 2 x n grid are the Catalan numbers
print("linear extensions of 2 x n:", [linear_extensions(named_poset(f"grid:2x{n}")) for n in range(1, 7)])

# the face lattice of a hexagonal prism
print("hexagonal prism cd-index:", noncomm_str(flag_and_cd(named_poset("prism:6")).cd))

# the braid arrangement: its intersection poset is a partition lattice
braid = build_named_arrangement("braid:4")
print("braid 4 intersection poset is the partition lattice:", isomorphic(intersection_poset(braid), partition_lattice(4)))

for spec in ("braid:4", "shi:3", "catalan:3", "bc:3", "tuvw"):
    a = build_named_arrangement(spec)
    polys = {b: str(char_poly(a, b)) for b in BACKENDS}
    agree = len(set(polys.values())) == 1
    r = regions(a)
    print(f"{spec:10} chi = {polys['whitney']:28} backends agree: {agree}; regions {r.regions}, bounded {r.bounded}")

shi = build_named_arrangement("shi:3")
print("Shi 3 over F_7:", complement_count(shi, 7), "points; q(q-3)^2 at 7 =", 7 * 4 * 4)
print("Shi n regions (n+1)^(n-1):", [regions(build_named_arrangement(f"shi:{n}")).regions for n in range(2, 5)],
      [(n + 1) ** (n - 1) for n in range(2, 5)])
print("braid regions n!:", [regions(build_named_arrangement(f"braid:{n}")).regions for n in range(2, 6)],
      [math.factorial(n) for n in range(2, 6)])
print("zonotope cd-index of the tuvw arrangement:", noncomm_str(arrangement_cd_index(build_named_arrangement("tuvw"))))
