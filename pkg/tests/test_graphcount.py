from __future__ import annotations

import random
from itertools import product

import pytest

from enumcomb.cfinite import RationalGF
from enumcomb.errors import BadSpec, Disconnected, KindMismatch, LoopPresent, NotEulerian, UnknownVertex
from enumcomb.graphcount import (
    Graph,
    bidirected_complete,
    build_named_graph,
    closed_walk_gf,
    complete_graph,
    count_avoiding_words,
    count_walks,
    cycle_graph,
    de_bruijn_graph,
    eulerian_count,
    forbidden_word_automaton,
    format_graph,
    graph_matrices,
    hyperoctahedral_graph,
    monomer_dimer_transfer,
    parse_graph,
    rooted_tree_count,
    spanning_tree_count,
    transfer_denominator,
    walk_gf,
    wheel_graph,
)
from enumcomb.matroidkit import Matroid, tutte
from enumcomb.oracles import eulerian_circuits_brute, in_trees_brute, spanning_trees_brute
from enumcomb.poly import Poly


def ints(rows):
    return [[int(x) for x in r] for r in rows]


def test_matrices():
    k3 = complete_graph(3)
    assert ints(graph_matrices(k3, "adjacency").rows) == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]
    assert ints(graph_matrices(k3, "laplacian").rows) == [[2, -1, -1], [-1, 2, -1], [-1, -1, 2]]
    c3 = cycle_graph(3, directed=True)
    assert ints(graph_matrices(c3, "directed_laplacian").rows) == [[1, -1, 0], [0, 1, -1], [-1, 0, 1]]
    with pytest.raises(KindMismatch):
        graph_matrices(c3, "laplacian")
    with pytest.raises(KindMismatch):
        graph_matrices(k3, "directed_laplacian")
    inc = ints(graph_matrices(k3, "incidence").rows)
    assert all(sum(col) == 0 for col in zip(*inc))


def test_multiedges_in_adjacency():
    g = parse_graph("undirected\na b 3\nb c\n")
    assert ints(graph_matrices(g, "adjacency").rows) == [[0, 3, 0], [3, 0, 1], [0, 1, 0]]
    assert spanning_tree_count(g) == 3


def test_count_walks_examples():
    k3 = complete_graph(3)
    assert count_walks(k3, 0, 0, 2) == 2
    assert sum(count_walks(k3, v, v, 2) for v in k3.vertices) == 6 == 2 ** 2 + 2 * (-1) ** 2
    aa = forbidden_word_automaton("ab", ["aa"])
    assert aa.n == 2
    # words of length 4 avoiding aa: F_6 = 8
    assert count_avoiding_words(aa, 4, 1) == 8
    assert [count_avoiding_words(aa, n, 1) for n in range(1, 9)] == [2, 3, 5, 8, 13, 21, 34, 55]
    for u, v in product(k3.vertices, repeat=2):
        assert count_walks(k3, u, v, 0) == int(u == v)
    with pytest.raises(UnknownVertex):
        count_walks(k3, 0, 9, 1)


def test_necklace_formula():
    # closed walks of length k in K_n: (n-1)^k + (n-1)(-1)^k
    for n in range(2, 6):
        s = closed_walk_gf(complete_graph(n)).series(8)
        assert [int(c) for c in s.coeffs[1:]] == [(n - 1) ** k + (n - 1) * (-1) ** k for k in range(1, 9)]


def test_walk_gf_examples():
    g = monomer_dimer_transfer(3)
    s = walk_gf(g, "111", "111").series(4)
    assert [int(c) for c in s.coeffs] == [1, 3, 22, 131, 823]
    loop = Graph(("v",), (("v", "v"),), directed=True)
    assert walk_gf(loop, "v", "v") == RationalGF(Poly([1]), Poly([1, -1]))
    assert closed_walk_gf(loop) == RationalGF(Poly([0, 1]), Poly([1, -1]))
    aa = forbidden_word_automaton("ab", ["aa"])
    total = [sum(int(walk_gf(aa, u, v).series(8)[n]) for u in aa.vertices for v in aa.vertices) for n in range(9)]
    assert total == [2, 3, 5, 8, 13, 21, 34, 55, 89]


def random_graph(rng, n, m, directed):
    edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
    return Graph(tuple(range(n)), tuple(edges), directed)


def test_walk_gf_matches_count_walks():
    rng = random.Random(5)
    for trial in range(6):
        g = random_graph(rng, rng.randint(1, 8), rng.randint(0, 12), directed=trial % 2 == 0)
        for u, v in product(g.vertices, repeat=2):
            s = walk_gf(g, u, v).series(19)
            assert [int(c) for c in s.coeffs] == [count_walks(g, u, v, n) for n in range(20)]


def test_forbidden_abba_automaton():
    g = forbidden_word_automaton("ab", ["aa", "abba"])
    assert g.n == 5
    assert transfer_denominator(g) == Poly([1, -1, -1, 1, -1])
    s = closed_walk_gf(g).series(9)
    assert [int(c) for c in s.coeffs] == [0, 1, 3, 1, 7, 6, 15, 15, 31, 37]
    single = forbidden_word_automaton("a", ["aa"])
    # one vertex 'a' with no edges: words of length 1 only
    assert count_avoiding_words(single, 1, 1) == 1
    assert count_avoiding_words(single, 2, 1) == 0
    with pytest.raises(BadSpec):
        forbidden_word_automaton("ab", [])


def test_cyclic_words_brute():
    # closed walks of length n count cyclic words whose every rotation avoids the factors
    def ok(w):
        ww = w + w
        n = len(w)
        return all(f not in ww[i:i + len(f)] for i in range(n) for f in ("aa", "abba"))

    want = [sum(1 for w in product("ab", repeat=n) if ok("".join(w))) for n in range(1, 10)]
    got = [int(c) for c in closed_walk_gf(forbidden_word_automaton("ab", ["aa", "abba"])).series(9).coeffs[1:]]
    assert got == want


def test_spanning_tree_examples():
    assert spanning_tree_count(build_named_graph("complete:4")) == 16
    assert spanning_tree_count(build_named_graph("bipartite:2,3")) == 12
    assert spanning_tree_count(build_named_graph("cube:3")) == 384
    assert spanning_tree_count(build_named_graph("complete:5")) == 125
    for n in range(2, 5):
        assert spanning_tree_count(hyperoctahedral_graph(n)) == 2 ** (2 * n - 2) * (n - 1) ** n * n ** (n - 2)
    disc = Graph((0, 1, 2), ((0, 1),))
    assert spanning_tree_count(disc) == 0
    with pytest.raises(Disconnected):
        spanning_tree_count(disc, strict=True)
    with pytest.raises(LoopPresent):
        spanning_tree_count(Graph((0, 1), ((0, 1), (1, 1))))


def test_spanning_trees_brute_and_cofactors():
    rng = random.Random(11)
    for _ in range(15):
        n = rng.randint(2, 6)
        m = rng.randint(n - 1, 10)
        edges = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
        g = Graph(tuple(range(n)), tuple(edges))
        want = spanning_trees_brute(g.vertices, g.edges)
        assert {spanning_tree_count(g, drop=k) for k in range(n)} == {want}


def test_rooted_tree_examples():
    c3 = cycle_graph(3, directed=True)
    assert all(rooted_tree_count(c3, v) == 1 for v in c3.vertices)
    db = de_bruijn_graph(2, 3)
    assert {rooted_tree_count(db, v) for v in db.vertices} == {2}
    k3 = bidirected_complete(3)
    assert rooted_tree_count(k3, 0) == 3 == in_trees_brute(k3.vertices, k3.edges, 0)
    with pytest.raises(UnknownVertex):
        rooted_tree_count(c3, 7)


def test_eulerian_examples():
    assert eulerian_count(de_bruijn_graph(2, 3)) == 2
    assert eulerian_count(de_bruijn_graph(2, 2)) == 1
    assert eulerian_count(de_bruijn_graph(2, 4)) == 16
    assert eulerian_count(de_bruijn_graph(3, 2)) == 24
    assert eulerian_count(cycle_graph(3, directed=True)) == 1
    with pytest.raises(NotEulerian) as info:
        eulerian_count(Graph((0, 1), ((0, 1),), True))
    assert info.value.vertex == 0


def random_eulerian(rng):
    n = rng.randint(2, 5)
    edges = []
    while len(edges) < 10:
        k = rng.randint(2, n)
        cyc = rng.sample(range(n), k)
        if len(edges) + k > 10:
            break
        edges += [(cyc[i], cyc[(i + 1) % k]) for i in range(k)]
    return Graph(tuple(range(n)), tuple(edges), True)


def test_eulerian_brute():
    rng = random.Random(3)
    for _ in range(25):
        g = random_eulerian(rng)
        used = {v for e in g.edges for v in e}
        core = Graph(tuple(sorted(used)), g.edges, True)
        if len(core.components()) > 1:
            with pytest.raises(NotEulerian):
                eulerian_count(g)
            continue
        assert eulerian_count(g) == eulerian_circuits_brute(g.edges)
        roots = {rooted_tree_count(core, v) for v in core.vertices}
        assert len(roots) == 1


def test_named_graphs():
    db = build_named_graph("debruijn:2,3")
    assert db.n == 4 and len(db.edges) == 8
    assert len(build_named_graph("complete:4").edges) == 6
    h = build_named_graph("hyperoctahedral:2")
    assert h.n == 4 and len(h.edges) == 4
    assert build_named_graph("grid:2x3").n == 6
    for bad in ("nope:3", "complete:x", "complete:1,2"):
        with pytest.raises(BadSpec):
            build_named_graph(bad)


def test_wheel_tutte_bases():
    for n in range(3, 7):
        g = wheel_graph(n)
        assert tutte(Matroid.from_graph(g))(1, 1) == spanning_tree_count(g)


def test_graph_text_roundtrip():
    g = parse_graph("directed\n# comment\na b 2\nb a\nb c\nc a\nd\n")
    assert g.directed and g.n == 4 and len(g.edges) == 5
    again = parse_graph(format_graph(g))
    assert sorted(again.edges) == sorted(g.edges) and again.n == 4
    with pytest.raises(BadSpec):
        parse_graph("a b\n")
