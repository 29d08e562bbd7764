from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from enumcomb.detcount import (
    GridRegion,
    WeightedDAG,
    aztec_count,
    aztec_diamond_region,
    binomial_hexagon_det,
    catalan_numbers,
    condensation_levels,
    dodgson_det,
    hankel_det,
    hexagon_dag,
    hexagon_product,
    kasteleyn_match_count,
    kasteleyn_orientation,
    lgv_routing_count,
    pfaffian,
    schroder_numbers,
)
from enumcomb.errors import CyclicGraph, NotSkewSymmetric, OddDimension
from enumcomb.graphcount import Graph
from enumcomb.linalg import ExactMatrix, det_exact
from enumcomb.oracles import disjoint_routings_brute, domino_tilings_brute
from enumcomb.recipes import CONDENSATION_EXAMPLE, fibonacci, random_skew


def test_pfaffian_examples():
    assert pfaffian([[0, 5], [-5, 0]]) == 5
    with pytest.raises(NotSkewSymmetric):
        pfaffian([[0, 1], [1, 0]])
    with pytest.raises(OddDimension):
        pfaffian([[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
    # 4x4: Pf = a01 a23 - a02 a13 + a03 a12
    m = [[0, 1, 2, 3], [-1, 0, 4, 5], [-2, -4, 0, 6], [-3, -5, -6, 0]]
    assert pfaffian(m) == 1 * 6 - 2 * 5 + 3 * 4


def test_pfaffian_square_random():
    rng = random.Random(0)
    for _ in range(100):
        dim = 2 * rng.randint(1, 5)
        m = [[Fraction(0)] * dim for _ in range(dim)]
        for i in range(dim):
            for j in range(i + 1, dim):
                v = Fraction(rng.randint(-6, 6), rng.randint(1, 4))
                m[i][j], m[j][i] = v, -v
        assert pfaffian(m) ** 2 == det_exact(ExactMatrix(m))


def test_pfaffian_of_signed_grid():
    region = GridRegion.rectangle(2, 2)
    orient = kasteleyn_orientation(region)
    cells = region.ordered()
    idx = {c: i for i, c in enumerate(cells)}
    m = [[0] * 4 for _ in range(4)]
    for tail, head in orient.values():
        m[idx[tail]][idx[head]] = 1
        m[idx[head]][idx[tail]] = -1
    assert abs(pfaffian(m)) == 2 == domino_tilings_brute(region.cells)


def test_kasteleyn_examples():
    assert kasteleyn_match_count(GridRegion.rectangle(2, 4)) == 5
    assert [kasteleyn_match_count(GridRegion.rectangle(2, n)) for n in range(1, 11)] == fibonacci(11)[1:]
    assert kasteleyn_match_count(GridRegion.rectangle(3, 4)) == 11
    assert kasteleyn_match_count(GridRegion.rectangle(8, 8)) == 12988816
    assert kasteleyn_match_count(GridRegion(frozenset())) == 1
    assert kasteleyn_match_count(GridRegion.rectangle(3, 3)) == 0


def test_kasteleyn_product_formula():
    # exact rectangles against the cosine product, evaluated to high precision and rounded
    for a, b in ((2, 3), (4, 4), (4, 6), (6, 6)):
        p = 1.0
        for j in range(1, math.ceil(a / 2) + 1):
            for k in range(1, math.ceil(b / 2) + 1):
                p *= 4 * math.cos(math.pi * j / (a + 1)) ** 2 + 4 * math.cos(math.pi * k / (b + 1)) ** 2
        assert kasteleyn_match_count(GridRegion.rectangle(a, b)) == round(p)


def random_region(rng, rows, cols, keep):
    cells = {(r, c) for r in range(rows) for c in range(cols) if rng.random() < keep}
    return GridRegion(frozenset(cells))


def test_kasteleyn_matches_brute_tiler():
    rng = random.Random(8)
    checked = 0
    for _ in range(150):
        rows, cols = rng.randint(1, 5), rng.randint(1, 6)
        region = random_region(rng, rows, cols, rng.choice((0.7, 0.85, 1.0)))
        if len(region) > 24:
            continue
        assert kasteleyn_match_count(region) == domino_tilings_brute(region.cells)
        checked += 1
    assert checked > 100


def test_region_with_hole():
    text = "#####\n#.###\n#####\n"
    region = GridRegion.parse(text)
    assert len(region) == 14
    assert kasteleyn_match_count(region) == domino_tilings_brute(region.cells) == 8
    assert region.render() == text.strip()
    with pytest.raises(ValueError):
        GridRegion.parse("#x#")


def test_lgv_examples():
    assert lgv_routing_count(hexagon_dag(2)) == 20
    assert lgv_routing_count(hexagon_dag(1)) == 2
    single = WeightedDAG(Graph(("s",), (), True), ("s",), ("s",))
    assert lgv_routing_count(single) == 1
    with pytest.raises(CyclicGraph):
        WeightedDAG(Graph((0, 1), ((0, 1), (1, 0)), True), (0,), (1,))


def test_hexagon_product():
    for n in range(1, 5):
        want = Fraction(1)
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    want *= Fraction(i + j + k - 1, i + j + k - 2)
        assert hexagon_product(n) == want == lgv_routing_count(hexagon_dag(n)) == binomial_hexagon_det(n)


def test_lgv_matches_brute_on_grids():
    rng = random.Random(4)
    for _ in range(40):
        w, h = rng.randint(2, 4), rng.randint(2, 3)
        pts = [(x, y) for x in range(w) for y in range(h)]
        edges = []
        for x, y in pts:
            if x + 1 < w and rng.random() < 0.85:
                edges.append(((x, y), (x + 1, y)))
            if y + 1 < h and rng.random() < 0.85:
                edges.append(((x, y), (x, y + 1)))
        g = Graph(tuple(pts), tuple(edges), True)
        sources, sinks = ((0, 1), (1, 0)), ((w - 2, h - 1), (w - 1, h - 2))
        if len(set(sources + sinks)) < 4:
            continue
        got = lgv_routing_count(WeightedDAG(g, sources, sinks))
        assert got == disjoint_routings_brute(edges, sources, sinks)


def test_weighted_paths():
    g = Graph(("a", "b", "c"), (("a", "b"), ("b", "c"), ("a", "c")), True)
    d = WeightedDAG(g, ("a",), ("c",), (2, 3, Fraction(1, 2)))
    assert lgv_routing_count(d) == Fraction(13, 2)


def test_hankel_examples():
    cat = catalan_numbers(20)
    for n in range(7):
        assert hankel_det(cat, n) == 1
        assert hankel_det(cat, n, shifted=True) == 1
    sch = schroder_numbers(20)
    # (n+1) x (n+1) matrices: 2^(n(n+1)/2); the 3 x 3 case is 8
    assert hankel_det(sch, 2) == 8
    assert [hankel_det(sch, n) for n in range(5)] == [2 ** (n * (n + 1) // 2) for n in range(5)]
    assert hankel_det([0] * 9, 3) == 0


def test_dodgson_examples():
    assert condensation_levels(CONDENSATION_EXAMPLE)[1] == [[11, 4, 7], [-15, -3, -7], [-1, 4, 0]]
    assert dodgson_det(CONDENSATION_EXAMPLE) == -7 == det_exact(ExactMatrix(CONDENSATION_EXAMPLE))
    assert dodgson_det([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == 1
    assert dodgson_det([[1, 2, 3], [1, 2, 3], [4, 5, 6]]) == 0


def test_dodgson_random():
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(2, 7)
        m = [[Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)] for _ in range(n)]
        assert dodgson_det(m) == det_exact(ExactMatrix(m))


def test_aztec():
    assert aztec_count(0) == 1
    assert aztec_count(2) == 8
    assert aztec_count(5) == 32768
    counts = [aztec_count(n) for n in range(10)]
    assert counts == [2 ** (n * (n + 1) // 2) for n in range(10)]
    for n in range(1, 9):
        assert counts[n - 1] * counts[n + 1] == 2 * counts[n] ** 2
    for n in range(1, 4):
        region = aztec_diamond_region(n)
        assert kasteleyn_match_count(region) == domino_tilings_brute(region.cells) == counts[n]


def test_random_skew_helper():
    m = random_skew(random.Random(2), 6)
    assert all(m[i][j] == -m[j][i] for i in range(6) for j in range(6))
