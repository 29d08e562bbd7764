"""Tutte polynomials and lattice-point counts.

The Tutte polynomial is computed three ways (a sum over subsets, deletion and
contraction, basis activities) and a fourth way from point counts over finite
fields. Ehrhart polynomials are interpolated from exact lattice-point scans.
"""

from __future__ import annotations

from enumcomb.arrkit import build_named_arrangement
from enumcomb.ehrhartkit import build_polytope, ehrhart_polynomial, pick_check, polygon, poset_polytope_bridge
from enumcomb.graphcount import build_named_graph, spanning_tree_count
from enumcomb.matroidkit import (
    TUTTE_BACKENDS,
    Matroid,
    arrangement_matroid,
    fano,
    tutte,
    tutte_evaluations,
    tutte_via_finite_fields,
)
from enumcomb.posetkit import named_poset

for name, m in [("U(2,4)", Matroid.uniform(2, 4)), ("Fano", fano()), ("K4", Matroid.from_graph(build_named_graph("complete:4")))]:
    polys = [tutte(m, b) for b in TUTTE_BACKENDS]
    print(f"{name}: T = {polys[0].to_string()}  (backends agree: {polys[0] == polys[1] == polys[2]})")

g = build_named_graph("wheel:4")
rep = tutte_evaluations(Matroid.from_graph(g), g)
print(f"wheel 4: bases {rep.bases} = spanning trees {spanning_tree_count(g)}, "
      f"acyclic orientations {rep.acyclic_orientations}, chromatic {rep.chromatic.to_string('q')}")

bc2 = build_named_arrangement("bc:2")
print("BC2 by finite fields:", tutte_via_finite_fields(bc2).to_string(),
      " by subsets:", tutte(arrangement_matroid(bc2), "subset_sum").to_string())

for spec in ("simplex:3", "cube:3", "cross:3", "hypersimplex:2,4"):
    data = ehrhart_polynomial(build_polytope(spec))
    print(f"{spec:17} L(n) = {data.poly.to_string('n'):40} h* = {data.h_star}")

r = pick_check(polygon([(0, 0), (4, 1), (3, 4), (1, 3)]))
print(f"Pick: area {r.area} = interior {r.interior} + boundary {r.boundary}/2 - 1: {r.ok}")

b = poset_polytope_bridge(named_poset("grid:2x3"))
print(f"order and chain polytopes of 2 x 3: {b.order_poly.to_string('n')}, volume {b.volume} (bridge holds: {b.ok})")
