from __future__ import annotations

import math
from itertools import product

import pytest

from enumcomb.arrkit import (
    BACKENDS,
    Arrangement,
    acyclic_orientation_count,
    arrangement_cd_index,
    build_named_arrangement,
    char_poly,
    char_poly_all,
    chromatic_polynomial,
    coboundary_histogram,
    complement_count,
    graphical,
    intersection_poset,
    parse_arrangement,
    regions,
    restriction_char_poly,
    tuvw,
)
from enumcomb.errors import BadSpec, NotCentral, NotPrime
from enumcomb.graphcount import Graph, build_named_graph
from enumcomb.poly import Poly
from enumcomb.posetkit import boolean_lattice, isomorphic, partition_lattice

q = Poly([0, 1])


def falling(*roots):
    out = Poly([1])
    for r in roots:
        out = out * (q - r)
    return out


# --- construction -----------------------------------------------------------


def test_family_sizes():
    assert len(build_named_arrangement("braid:3")) == 3
    assert build_named_arrangement("braid:3").dim == 3
    assert len(build_named_arrangement("shi:3")) == 6
    assert set(graphical(build_named_graph("complete:3")).hyperplanes) == set(
        build_named_arrangement("braid:3").hyperplanes
    )


def test_rejects_bad_input():
    with pytest.raises(ValueError):
        Arrangement(2, (((0, 0), 1),))
    with pytest.raises(ValueError):
        Arrangement(2, (((1, 1), 1), ((2, 2), 2)))
    with pytest.raises(BadSpec):
        build_named_arrangement("moon:3")
    with pytest.raises(BadSpec):
        parse_arrangement("2\n1 0\n")


def test_file_round_trip():
    a = build_named_arrangement("catalan:3")
    assert parse_arrangement(a.to_text()) == a


# --- finite field counts ------------------------------------------------------


def test_complement_counts():
    assert complement_count(build_named_arrangement("braid:3"), 5) == 60
    assert complement_count(build_named_arrangement("shi:3"), 7) == 112
    assert complement_count(Arrangement(2, ()), 3) == 9
    with pytest.raises(NotPrime):
        complement_count(build_named_arrangement("braid:3"), 9)


def test_complement_count_brute():
    a = build_named_arrangement("catalan:2")
    p = 7
    brute = sum(
        1
        for x in product(range(p), repeat=a.dim)
        if all(sum(n * v for n, v in zip(nv, x)) % p != b % p for nv, b in a.hyperplanes)
    )
    assert complement_count(a, p) == brute


def test_coboundary_histograms():
    assert coboundary_histogram(build_named_arrangement("coordinate:2"), 3) == Poly([4, 4, 1])
    assert coboundary_histogram(Arrangement(2, ()), 5) == Poly([25])
    assert coboundary_histogram(build_named_arrangement("braid:2"), 3) == Poly([6, 3])


# --- characteristic polynomial --------------------------------------------------


def test_char_poly_examples():
    assert char_poly(build_named_arrangement("catalan:3")).poly == q * (q - 4) * (q - 5)
    assert char_poly(build_named_arrangement("coordinate:3")).poly == (q - 1) ** 3
    assert char_poly(build_named_arrangement("bc:2")).poly == (q - 1) * (q - 3)
    assert char_poly(tuvw()).poly == Poly([-2, 5, -4, 1])


SPECS = [f"{f}:{n}" for f in ("braid", "shi", "catalan", "coordinate") for n in (2, 3, 4)]
SPECS += ["bc:2", "d:3", "ish:3", "linial:3", "threshold:3", "tuvw", "generic:4,2", "cone:shi:2"]


@pytest.mark.parametrize("spec", SPECS)
def test_backends_agree(spec):
    a = build_named_arrangement(spec)
    polys = {b: char_poly(a, b).poly for b in BACKENDS}
    assert len(set(map(str, polys.values()))) == 1, polys
    assert char_poly_all(a).poly == polys["whitney"]


@pytest.mark.parametrize("n", range(2, 6))
def test_shi_and_ish_formula(n):
    target = q * (q - n) ** (n - 1)
    assert char_poly(build_named_arrangement(f"shi:{n}")).poly == target
    assert char_poly(build_named_arrangement(f"ish:{n}")).poly == target


@pytest.mark.parametrize("spec", ["braid:3", "shi:3", "catalan:2", "bc:2", "tuvw", "generic:4,2"])
def test_deletion_restriction(spec):
    a = build_named_arrangement(spec)
    for i in range(len(a)):
        assert char_poly(a).poly == char_poly(a.delete(i)).poly - restriction_char_poly(a, i)


@pytest.mark.parametrize("spec", ["braid:3", "shi:3", "catalan:2", "generic:3,2"])
def test_coning(spec):
    a = build_named_arrangement(spec)
    assert char_poly(a.cone()).poly == (q - 1) * char_poly(a).poly


# --- regions ---------------------------------------------------------------------


def test_region_examples():
    assert regions(build_named_arrangement("braid:3")).regions == 6
    shi = regions(build_named_arrangement("shi:3"))
    assert (shi.regions, shi.bounded) == (16, 4)
    assert regions(build_named_arrangement("catalan:2")).regions == 4


@pytest.mark.parametrize("n", range(2, 5))
def test_region_tables(n):
    cat = math.comb(2 * n, n) // (n + 1)
    assert regions(build_named_arrangement(f"braid:{n}")).regions == math.factorial(n)
    shi = regions(build_named_arrangement(f"shi:{n}"))
    assert (shi.regions, shi.bounded) == ((n + 1) ** (n - 1), (n - 1) ** (n - 1))
    assert regions(build_named_arrangement(f"catalan:{n}")).regions == math.factorial(n) * cat
    assert regions(build_named_arrangement(f"bc:{n}")).regions == 2**n * math.factorial(n)
    if n >= 2:
        assert regions(build_named_arrangement(f"d:{n}")).regions == 2 ** (n - 1) * math.factorial(n)


def test_generic_regions():
    # n lines in general position in the plane
    for n in range(1, 6):
        r = regions(build_named_arrangement(f"generic:{n},2"))
        assert r.regions == 1 + n + math.comb(n, 2)
        assert r.bounded == math.comb(n - 1, 2)


# --- intersection posets ------------------------------------------------------


def test_intersection_posets():
    assert isomorphic(intersection_poset(build_named_arrangement("coordinate:2")), boolean_lattice(2))
    assert isomorphic(intersection_poset(build_named_arrangement("braid:3")), partition_lattice(3))
    assert isomorphic(intersection_poset(build_named_arrangement("braid:4")), partition_lattice(4))


# --- graphs ------------------------------------------------------------------------


def acyclic_brute(g: Graph) -> int:
    edges = [(g.index(u), g.index(v)) for u, v in g.edges]
    count = 0
    for signs in product((0, 1), repeat=len(edges)):
        arcs = [(u, v) if s else (v, u) for (u, v), s in zip(edges, signs)]
        indeg = [0] * g.n
        for _, v in arcs:
            indeg[v] += 1
        stack = [x for x in range(g.n) if indeg[x] == 0]
        seen = 0
        while stack:
            x = stack.pop()
            seen += 1
            for u, v in arcs:
                if u == x:
                    indeg[v] -= 1
                    if indeg[v] == 0:
                        stack.append(v)
        count += seen == g.n
    return count


def test_chromatic_examples():
    k3 = build_named_graph("complete:3")
    assert chromatic_polynomial(k3).poly == q * (q - 1) * (q - 2)
    assert acyclic_orientation_count(k3) == 6
    assert chromatic_polynomial(build_named_graph("path:3")).poly == q * (q - 1) ** 2
    assert chromatic_polynomial(build_named_graph("path:1")).poly == q


@pytest.mark.parametrize("spec", ["cycle:5", "complete:4", "wheel:4", "grid:2x3"])
def test_acyclic_orientations_brute(spec):
    g = build_named_graph(spec)
    assert acyclic_orientation_count(g) == acyclic_brute(g)


# --- cd-index ----------------------------------------------------------------------


def test_cd_index_examples():
    assert arrangement_cd_index(tuvw()) == {"ccc": 1, "cd": 6, "dc": 10}
    assert arrangement_cd_index(build_named_arrangement("coordinate:2")) == {"cc": 1, "d": 2}
    assert arrangement_cd_index(Arrangement(1, (((1,), 0),))) == {"c": 1}
    with pytest.raises(NotCentral):
        arrangement_cd_index(build_named_arrangement("shi:2"))
