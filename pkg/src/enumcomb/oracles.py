"""Brute-force counters used to cross-check the algebraic methods.

Everything here enumerates objects directly and is only meant for small
inputs. None of it shares code with the determinant or generating-function
machinery it is checking.
"""

from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Iterable, Sequence


def _components_ok(n_vertices: int, edges: Sequence[tuple[int, int]]) -> bool:
    parent = list(range(n_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            return False
        parent[ru] = rv
    return True


def spanning_trees_brute(vertices: Sequence, edges: Sequence[tuple]) -> int:
    """Count (n-1)-edge subsets that are acyclic (hence spanning trees)."""
    idx = {v: i for i, v in enumerate(vertices)}
    n = len(vertices)
    if n == 0:
        return 0
    es = [(idx[u], idx[v]) for u, v in edges if u != v]
    return sum(1 for sub in combinations(range(len(es)), n - 1) if _components_ok(n, [es[k] for k in sub]))


def in_trees_brute(vertices: Sequence, edges: Sequence[tuple], root) -> int:
    """Spanning trees with every edge directed toward ``root``: pick one out-edge per non-root vertex."""
    others = [v for v in vertices if v != root]
    choices = [[k for k, (u, w) in enumerate(edges) if u == v and w != v] for v in others]
    count = 0
    for pick in product(*choices):
        nxt = {edges[k][0]: edges[k][1] for k in pick}
        ok = True
        for v in others:
            seen, w = set(), v
            while w != root:
                if w in seen:
                    ok = False
                    break
                seen.add(w)
                w = nxt[w]
            if not ok:
                break
        count += ok
    return count


def eulerian_circuits_brute(edges: Sequence[tuple]) -> int:
    """Eulerian circuits of a digraph, counted with the first edge fixed to edge 0."""
    m = len(edges)
    if m == 0:
        return 1
    out: dict = {}
    for k, (u, _) in enumerate(edges):
        out.setdefault(u, []).append(k)
    used = [False] * m
    used[0] = True
    start = edges[0][0]

    def go(v, depth):
        if depth == m:
            return 1 if v == start else 0
        total = 0
        for k in out.get(v, ()):
            if not used[k]:
                used[k] = True
                total += go(edges[k][1], depth + 1)
                used[k] = False
        return total

    return go(edges[0][1], 1)


def domino_tilings_brute(cells: Iterable[tuple[int, int]]) -> int:
    """Recursive tiler: cover the smallest free cell horizontally or vertically."""
    free = frozenset(cells)
    memo: dict = {}

    def go(rest: frozenset) -> int:
        if not rest:
            return 1
        if rest in memo:
            return memo[rest]
        r, c = min(rest)
        total = 0
        for other in ((r, c + 1), (r + 1, c)):
            if other in rest:
                total += go(rest - {(r, c), other})
        memo[rest] = total
        return total

    return go(free)


def monomer_dimer_brute(rows: int, cols: int) -> int:
    cells = frozenset((r, c) for r in range(rows) for c in range(cols))
    memo: dict = {}

    def go(rest: frozenset) -> int:
        if not rest:
            return 1
        if rest in memo:
            return memo[rest]
        r, c = min(rest)
        total = go(rest - {(r, c)})
        for other in ((r, c + 1), (r + 1, c)):
            if other in rest:
                total += go(rest - {(r, c), other})
        memo[rest] = total
        return total

    return go(cells)


def disjoint_routings_brute(edges: Sequence[tuple], sources: Sequence, sinks: Sequence) -> int:
    """Vertex-disjoint path systems joining sources[i] to sinks[i] for every i."""
    out: dict = {}
    for u, v in edges:
        out.setdefault(u, []).append(v)

    def paths(s, t):
        if s == t:
            yield (s,)
            return
        for w in out.get(s, ()):
            for rest in paths(w, t):
                yield (s,) + rest

    all_paths = [list(paths(s, t)) for s, t in zip(sources, sinks)]

    def go(i, used):
        if i == len(all_paths):
            return 1
        total = 0
        for p in all_paths[i]:
            if used.isdisjoint(p):
                total += go(i + 1, used | set(p))
        return total

    return go(0, frozenset())


def integer_partitions(n: int, max_part: int | None = None):
    """Yield partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def alternating_permutations(n: int) -> int:
    """Permutations w with w1 > w2 < w3 > ... (down-up)."""
    count = 0
    for w in permutations(range(n)):
        if all((w[i] > w[i + 1]) if i % 2 == 0 else (w[i] < w[i + 1]) for i in range(n - 1)):
            count += 1
    return count


def derangements(n: int) -> int:
    return sum(1 for w in permutations(range(n)) if all(w[i] != i for i in range(n)))


def linear_extensions_brute(elements: Sequence, less: set[tuple]) -> int:
    """Orderings of ``elements`` that respect every pair (a, b) in ``less``."""
    count = 0
    for w in permutations(elements):
        pos = {x: i for i, x in enumerate(w)}
        if all(pos[a] < pos[b] for a, b in less):
            count += 1
    return count


def proper_colorings(n_vertices: int, edges: Sequence[tuple[int, int]], q: int) -> int:
    return sum(1 for col in product(range(q), repeat=n_vertices) if all(col[u] != col[v] for u, v in edges))


def acyclic_orientations(n_vertices: int, edges: Sequence[tuple[int, int]]) -> int:
    count = 0
    for bits in product((0, 1), repeat=len(edges)):
        arcs = [(u, v) if b == 0 else (v, u) for (u, v), b in zip(edges, bits)]
        if _is_acyclic(n_vertices, arcs):
            count += 1
    return count


def _is_acyclic(n: int, arcs: Sequence[tuple[int, int]]) -> bool:
    indeg = [0] * n
    out = [[] for _ in range(n)]
    for u, v in arcs:
        out[u].append(v)
        indeg[v] += 1
    stack = [v for v in range(n) if indeg[v] == 0]
    seen = 0
    while stack:
        v = stack.pop()
        seen += 1
        for w in out[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    return seen == n


def nowhere_zero_flows(n_vertices: int, edges: Sequence[tuple[int, int]], t: int) -> int:
    """Assignments of nonzero Z_t values to arcs with zero net flow at every vertex."""
    count = 0
    for vals in product(range(1, t), repeat=len(edges)):
        net = [0] * n_vertices
        for (u, v), x in zip(edges, vals):
            net[u] += x
            net[v] -= x
        if all(x % t == 0 for x in net):
            count += 1
    return count


def lattice_points_box(a_rows: Sequence[Sequence[int]], b: Sequence[int], box: Sequence[tuple[int, int]],
                       eq_rows: Sequence[Sequence[int]] = (), e: Sequence[int] = (), strict: bool = False) -> int:
    """Integer points in a box satisfying A x <= b (or < b) and C x = e."""
    count = 0
    for pt in product(*(range(lo, hi + 1) for lo, hi in box)):
        ok = all(sum(a * x for a, x in zip(row, pt)) == rhs for row, rhs in zip(eq_rows, e))
        if ok:
            if strict:
                ok = all(sum(a * x for a, x in zip(row, pt)) < rhs for row, rhs in zip(a_rows, b))
            else:
                ok = all(sum(a * x for a, x in zip(row, pt)) <= rhs for row, rhs in zip(a_rows, b))
        count += ok
    return count


__all__ = [
    "spanning_trees_brute",
    "in_trees_brute",
    "eulerian_circuits_brute",
    "domino_tilings_brute",
    "monomer_dimer_brute",
    "disjoint_routings_brute",
    "integer_partitions",
    "alternating_permutations",
    "derangements",
    "linear_extensions_brute",
    "proper_colorings",
    "acyclic_orientations",
    "nowhere_zero_flows",
    "lattice_points_box",
]
