from __future__ import annotations

import random
from itertools import combinations, product

import pytest

from enumcomb.arrkit import build_named_arrangement, char_poly, coboundary_histogram
from enumcomb.errors import AxiomViolation, BadSpec
from enumcomb.graphcount import Graph, build_named_graph, spanning_tree_count
from enumcomb.matroidkit import (
    TUTTE_BACKENDS,
    Matroid,
    arrangement_matroid,
    build_named_matroid,
    coboundary,
    fano,
    is_geometric,
    matroid_coboundary,
    parse_matroid,
    tutte,
    tutte_evaluations,
    tutte_uniform,
    tutte_via_finite_fields,
)
from enumcomb.poly import BiPoly, Poly
from enumcomb.recipes import MATROID_CORPUS

X, Y = BiPoly.x(), BiPoly.y()
q = Poly.x()

# t, u, v sum to zero, w is off their plane
TUVW = Matroid.from_vectors([(1, -1, 0), (0, 1, -1), (-1, 0, 1), (1, 1, 1)], labels="tuvw")


def subset_brute(m: Matroid, pred) -> int:
    n = len(m)
    return sum(1 for k in range(n + 1) for s in combinations(m.ground, k) if pred(s))


# --- construction and queries ----------------------------------------------------


def test_tuvw_bases_and_circuits():
    assert sorted("".join(sorted(b)) for b in TUVW.bases()) == ["tuw", "tvw", "uvw"]
    assert [set(c) for c in TUVW.circuits()] == [{"t", "u", "v"}]


def test_small_examples():
    assert len(Matroid.uniform(2, 4).bases()) == 6
    assert len(fano().bases()) == 28
    assert {len(c) for c in Matroid.uniform(2, 4).circuits()} == {3}
    assert len(Matroid.uniform(2, 4).circuits()) == 4
    k3 = Matroid.from_graph(build_named_graph("complete:3"))
    assert len(k3.circuits()) == 1


def test_fano_bases_brute():
    vecs = [v for v in product((0, 1), repeat=3) if any(v)]

    def independent_mod2(s):
        a, b, c = s
        return all(any(x) for x in (a, b, c, [u ^ w for u, w in zip(a, b)], [u ^ w for u, w in zip(a, c)],
                                        [u ^ w for u, w in zip(b, c)], [u ^ w ^ z for u, w, z in zip(a, b, c)]))

    assert sum(independent_mod2(s) for s in combinations(vecs, 3)) == len(fano().bases())


def test_axiom_violation():
    with pytest.raises(AxiomViolation):
        Matroid.from_bases("abcd", ["ab", "cd"])
    with pytest.raises(AxiomViolation):
        Matroid.from_bases("abc", ["ab", "c"])
    m = Matroid.from_bases(range(4), combinations(range(4), 2))
    assert m.same_as(Matroid.uniform(2, 4))


@pytest.mark.parametrize("spec", ["uniform:2,4", "fano", "graph:complete:4", "arr:tuvw"])
def test_flats_are_geometric(spec):
    assert is_geometric(build_named_matroid(spec))


def test_loops_coloops_components():
    g = Graph.from_edges([(1, 2), (2, 3), (3, 1), (3, 4), (5, 5)])
    m = Matroid.from_graph(g)
    assert len(m.loops()) == 1
    assert len(m.coloops()) == 1
    assert len(m.components()) == 3


def test_parse_matroid_json():
    m = parse_matroid('{"backend": "matrix", "rows": [[1, 0, 1], [0, 1, 1]], "field": "2"}')
    assert len(m.circuits()) == 1
    assert parse_matroid('{"backend": "uniform", "k": 2, "n": 4}').same_as(Matroid.uniform(2, 4))
    with pytest.raises(BadSpec):
        build_named_matroid("uniform:5,3")


# --- minors and duality ----------------------------------------------------------


def test_dual_and_minors():
    u24 = Matroid.uniform(2, 4)
    assert u24.dual().same_as(u24)
    m = TUVW
    assert m.dual().dual().same_as(m)
    assert m.delete(["t"]).contract(["u"]).same_as(m.contract(["u"]).delete(["t"]))
    assert m.delete(["t"]).dual().same_as(m.dual().contract(["t"]))
    assert m.contract(["w"]).rank() == m.rank() - 1


def test_triangle_dual_is_parallel_class():
    k3 = Matroid.from_graph(build_named_graph("complete:3"))
    assert tutte(k3) == X * X + X + Y
    assert tutte(k3.dual()) == X + Y * Y + Y


# --- Tutte polynomial -----------------------------------------------------------


def test_tutte_examples():
    assert tutte(Matroid.uniform(2, 4)) == X * X + 2 * X + 2 * Y + Y * Y
    loop = Matroid.uniform(0, 1)
    coloop = Matroid.uniform(1, 1)
    assert tutte(loop.direct_sum(coloop)) == X * Y


@pytest.mark.parametrize("spec", MATROID_CORPUS)
def test_backends_agree_and_laws(spec):
    m = build_named_matroid(spec)
    ts = [tutte(m, b) for b in TUTTE_BACKENDS]
    assert ts[0] == ts[1] == ts[2]
    t = ts[0]
    assert all(c > 0 for c in t.terms.values())
    assert t(1, 1) == len(m.bases())
    assert t(2, 2) == 2 ** len(m)
    assert tutte(m.dual()) == t.swap()


@pytest.mark.parametrize("seed", range(3))
def test_activities_order_invariant(seed):
    rng = random.Random(seed)
    for spec in ("graph:wheel:4", "arr:tuvw", "uniform:3,6"):
        m = build_named_matroid(spec)
        base = tutte(m, "subset_sum")
        for _ in range(10):
            order = list(m.ground)
            rng.shuffle(order)
            assert tutte(m, "activities", order=order) == base


@pytest.mark.parametrize("k,n", [(k, n) for n in range(0, 7) for k in range(0, n + 1)])
def test_uniform_closed_form(k, n):
    assert tutte(Matroid.uniform(k, n), "subset_sum") == tutte_uniform(k, n)


def test_direct_sum_product():
    a, b = build_named_matroid("uniform:2,4"), build_named_matroid("graph:cycle:3")
    assert tutte(a.direct_sum(b)) == tutte(a) * tutte(b)


@pytest.mark.parametrize("spec", ["complete:4", "bipartite:2,3", "wheel:4"])
def test_trees_are_bases(spec):
    g = build_named_graph(spec)
    assert tutte(Matroid.from_graph(g))(1, 1) == spanning_tree_count(g)


# --- evaluations ------------------------------------------------------------------


def test_triangle_evaluations():
    g = build_named_graph("complete:3")
    rep = tutte_evaluations(Matroid.from_graph(g), g)
    assert (rep.bases, rep.independent_sets, rep.acyclic_orientations) == (3, 7, 6)
    assert rep.chromatic == q * (q - 1) * (q - 2)
    assert rep.char_poly == (q - 1) * (q - 2)
    assert rep.flow == q - 1


def test_evaluations_against_brute():
    g = build_named_graph("wheel:4")
    m = Matroid.from_graph(g)
    rep = tutte_evaluations(m, g)
    r = m.rank()
    assert rep.independent_sets == subset_brute(m, lambda s: m.rank(s) == len(s))
    assert rep.spanning_sets == subset_brute(m, lambda s: m.rank(s) == r)
    assert sum(rep.independence_f) == rep.independent_sets
    assert rep.reliability(1) == 1 and rep.reliability(0) == 0


def test_beta_invariant():
    assert tutte_evaluations(Matroid.uniform(1, 2)).beta == 1
    assert tutte_evaluations(build_named_matroid("graph:complete:4")).beta == 2


@pytest.mark.parametrize("spec", ["braid:3", "braid:4", "coordinate:3", "bc:2", "bc:3"])
def test_char_poly_matches_arrangement(spec):
    a = build_named_arrangement(spec)
    rep = tutte_evaluations(arrangement_matroid(a))
    assert rep.char_poly * Poly.monomial(a.dim - a.rank) == char_poly(a).poly


# --- coboundary and finite fields ----------------------------------------------


def test_coboundary_examples():
    assert coboundary(X + Y, 1) == X + Y * Y - 1
    assert matroid_coboundary(Matroid.uniform(0, 3)) == Y**3


@pytest.mark.parametrize("p", [5, 7])
def test_coboundary_matches_histogram(p):
    a = build_named_arrangement("braid:3")
    cb = matroid_coboundary(arrangement_matroid(a))
    hist = coboundary_histogram(a, p)
    scale = p ** (a.dim - a.rank)
    for j in range(len(a) + 1):
        assert hist[j] == scale * sum(c * p**i for (i, jj), c in cb.terms.items() if jj == j)


def test_finite_field_tutte():
    assert tutte_via_finite_fields(build_named_arrangement("braid:3")) == X * X + X + Y
    assert tutte_via_finite_fields(build_named_arrangement("coordinate:2")) == X * X
    bc2 = build_named_arrangement("bc:2")
    assert tutte_via_finite_fields(bc2) == tutte(arrangement_matroid(bc2), "subset_sum")
