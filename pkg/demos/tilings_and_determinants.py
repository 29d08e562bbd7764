"""Counting tilings and paths with determinants.

Domino tilings are perfect matchings of a grid graph, so a Pfaffian counts
them. Lozenge tilings of a hexagon are families of non-crossing lattice paths,
so a determinant of path counts counts them. Aztec diamonds connect both to
Hankel determinants of the Schroeder numbers.
"""

from __future__ import annotations

from enumcomb.detcount import (
    GridRegion,
    aztec_count,
    aztec_diamond_region,
    catalan_numbers,
    dodgson_det,
    hankel_det,
    hexagon_dag,
    hexagon_product,
    kasteleyn_match_count,
    lgv_routing_count,
)
from enumcomb.oracles import domino_tilings_brute

# an 8 x 8 chessboard
board = GridRegion.rectangle(8, 8)
print("domino tilings of the chessboard:", kasteleyn_match_count(board))

# a small region with a hole, checked against a brute-force tiler
holed = GridRegion(frozenset((r, c) for r in range(3) for c in range(5)) - {(1, 1)})
print("3 x 5 minus cell (1, 1):", kasteleyn_match_count(holed), "brute force:", domino_tilings_brute(holed.cells))

# Aztec diamonds: Pfaffian, Hankel determinant, closed form 2^(n(n+1)/2)
for n in range(1, 6):
    pf = kasteleyn_match_count(aztec_diamond_region(n))
    print(f"Aztec diamond {n}: Pfaffian {pf}, Hankel {aztec_count(n)}, closed form {2 ** (n * (n + 1) // 2)}")

# lozenge tilings of an n x n x n hexagon as non-intersecting paths
for n in range(1, 5):
    print(f"hexagon {n}: paths {lgv_routing_count(hexagon_dag(n))}, product formula {hexagon_product(n)}")

# Hankel determinants of the Catalan numbers are all 1
cat = catalan_numbers(20)
print("Catalan Hankel determinants:", [int(hankel_det(cat, n)) for n in range(7)])

# condensation computes a determinant from 2 x 2 minors only
m = [[2, 7, 5, 4], [1, 9, 7, 7], [2, 3, 2, 1], [5, 7, 6, 3]]
print("condensation determinant of the 4 x 4 example:", dodgson_det(m))
