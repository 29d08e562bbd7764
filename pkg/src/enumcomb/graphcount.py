"""Counting with graph matrices: walks, spanning trees, Eulerian circuits.

Graphs carry explicit vertex labels and an edge list in which repeated
pairs are parallel edges. Matrix rows and columns follow the order of
``Graph.vertices``.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from itertools import product
from math import factorial, prod
from typing import Hashable, Iterable, Sequence

from .cfinite import RationalGF
from .errors import BadSpec, Disconnected, KindMismatch, LoopPresent, NotEulerian, UnknownVertex
from .linalg import ExactMatrix, bareiss_det_int, det_exact
from .poly import Poly

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple
    directed: bool = False
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        verts = tuple(self.vertices)
        if len(set(verts)) != len(verts):
            raise ValueError("vertex labels must be distinct")
        index = {v: i for i, v in enumerate(verts)}
        edges = tuple((u, v) for u, v in self.edges)
        for u, v in edges:
            if u not in index:
                raise UnknownVertex(u)
            if v not in index:
                raise UnknownVertex(v)
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_index", index)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], directed: bool = False, vertices: Iterable = ()) -> "Graph":
        edges = list(edges)
        seen = list(vertices)
        known = set(seen)
        for u, v in edges:
            for w in (u, v):
                if w not in known:
                    known.add(w)
                    seen.append(w)
        return cls(tuple(seen), tuple(edges), directed)

    @property
    def n(self) -> int:
        return len(self.vertices)

    def index(self, v: Hashable) -> int:
        try:
            return self._index[v]
        except KeyError:
            raise UnknownVertex(v) from None

    def has_loops(self) -> bool:
        return any(u == v for u, v in self.edges)

    def out_degree(self, v) -> int:
        return sum(1 for a, _ in self.edges if a == v) if self.directed else self.degree(v)

    def in_degree(self, v) -> int:
        return sum(1 for _, b in self.edges if b == v)

    def degree(self, v) -> int:
        return sum((a == v) + (b == v) for a, b in self.edges)

    def components(self) -> list[set]:
        """Weakly connected components."""
        parent = {v: v for v in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
        groups: dict = {}
        for v in self.vertices:
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1


# --- matrices ---------------------------------------------------------------


def adjacency_ints(g: Graph) -> list[list[int]]:
    n = g.n
    a = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        i, j = g.index(u), g.index(v)
        a[i][j] += 1
        if not g.directed and i != j:
            a[j][i] += 1
    return a


def laplacian_ints(g: Graph) -> list[list[int]]:
    """Degree minus adjacency with loops ignored.

    For directed graphs the diagonal holds out-degrees, so principal minors
    count spanning trees oriented toward the deleted vertex.
    """
    n = g.n
    lap = [[0] * n for _ in range(n)]
    for u, v in g.edges:
        i, j = g.index(u), g.index(v)
        if i == j:
            continue
        lap[i][i] += 1
        lap[i][j] -= 1
        if not g.directed:
            lap[j][j] += 1
            lap[j][i] -= 1
    return lap


def incidence_ints(g: Graph) -> list[list[int]]:
    """Vertex-by-edge matrix with +1 at the tail and -1 at the head.

    Undirected edges use the orientation in which they were listed.
    """
    m = [[0] * len(g.edges) for _ in range(g.n)]
    for k, (u, v) in enumerate(g.edges):
        if u == v:
            continue
        m[g.index(u)][k] += 1
        m[g.index(v)][k] -= 1
    return m


def graph_matrices(g: Graph, kind: str) -> ExactMatrix:
    if kind == "adjacency":
        return ExactMatrix(adjacency_ints(g))
    if kind == "laplacian":
        if g.directed:
            raise KindMismatch("laplacian needs an undirected graph; use directed_laplacian")
        return ExactMatrix(laplacian_ints(g))
    if kind == "directed_laplacian":
        if not g.directed:
            raise KindMismatch("directed_laplacian needs a directed graph")
        return ExactMatrix(laplacian_ints(g))
    if kind == "incidence":
        return ExactMatrix(incidence_ints(g))
    raise KindMismatch(f"unknown matrix kind {kind!r}")


# --- walks ------------------------------------------------------------------


def _int_matmul(a: list[list[int]], b: list[list[int]]) -> list[list[int]]:
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in cols] for r in a]


def walk_matrix(g: Graph, n: int) -> list[list[int]]:
    """A^n as an integer matrix."""
    size = g.n
    result = [[int(i == j) for j in range(size)] for i in range(size)]
    base = adjacency_ints(g)
    while n:
        if n & 1:
            result = _int_matmul(result, base)
        base = _int_matmul(base, base)
        n >>= 1
    return result


def count_walks(g: Graph, u, v, n: int) -> int:
    i, j = g.index(u), g.index(v)
    if n < 0:
        raise ValueError("walk length must be nonnegative")
    return walk_matrix(g, n)[i][j]


def _i_minus_xa(g: Graph) -> ExactMatrix:
    a = adjacency_ints(g)
    n = g.n
    return ExactMatrix([[Poly([int(i == j), -a[i][j]]) for j in range(n)] for i in range(n)])


def transfer_denominator(g: Graph) -> Poly:
    """Q(x) = det(I - xA)."""
    if g.n == 0:
        return Poly([1])
    return det_exact(_i_minus_xa(g))


def walk_gf(g: Graph, u, v) -> RationalGF:
    """Sum over n of (A^n)_{uv} x^n as a cofactor ratio."""
    i, j = g.index(u), g.index(v)
    m = _i_minus_xa(g)
    q = det_exact(m)
    minor = m.minor([j], [i])
    cof = det_exact(minor) if minor.nrows else Poly([1])
    sign = -1 if (i + j) % 2 else 1
    return RationalGF(cof * sign, q)


def closed_walk_gf(g: Graph) -> RationalGF:
    """Sum over n >= 1 of tr(A^n) x^n = -x Q'(x)/Q(x)."""
    q = transfer_denominator(g)
    return RationalGF(-(Poly.x() * q.derivative()), q)


# --- trees and Eulerian circuits -------------------------------------------


def spanning_tree_count(g: Graph, drop: int = 0, strict: bool = False) -> int:
    """Number of spanning trees via a principal cofactor of the Laplacian.

    A disconnected graph has no spanning tree: the result is 0 and a
    diagnostic is logged, or ``Disconnected`` is raised when ``strict``.
    """
    if g.directed:
        raise KindMismatch("spanning trees of a directed graph: use rooted_tree_count")
    if g.has_loops():
        raise LoopPresent("spanning_tree_count expects a loopless graph")
    if g.n == 0:
        return 0
    if not g.is_connected():
        msg = f"graph has {len(g.components())} components, so no spanning tree"
        if strict:
            raise Disconnected(msg)
        log.info(msg)
        return 0
    lap = laplacian_ints(g)
    keep = [k for k in range(g.n) if k != drop]
    return bareiss_det_int([[lap[r][c] for c in keep] for r in keep])


def rooted_tree_count(g: Graph, root) -> int:
    """Oriented spanning trees with every edge pointing toward ``root``.

    Loops can never lie in a tree and are ignored.
    """
    if not g.directed:
        raise KindMismatch("rooted_tree_count needs a directed graph")
    r = g.index(root)
    lap = laplacian_ints(g)
    keep = [k for k in range(g.n) if k != r]
    return bareiss_det_int([[lap[i][j] for j in keep] for i in keep])


def eulerian_count(g: Graph) -> int:
    """Eulerian circuits by the BEST formula.

    Circuits are edge sequences up to rotation: one fixed edge is always
    traversed first. Parallel edges are distinguishable. Vertices without
    edges are ignored.
    """
    if not g.directed:
        raise KindMismatch("eulerian_count needs a directed graph")
    outd = Counter(u for u, _ in g.edges)
    ind = Counter(v for _, v in g.edges)
    for v in g.vertices:
        if outd[v] != ind[v]:
            raise NotEulerian(f"vertex {v!r} has indegree {ind[v]} and outdegree {outd[v]}", vertex=v)
    used = [v for v in g.vertices if outd[v]]
    if not used:
        return 1
    core = Graph(tuple(used), g.edges, True)
    comps = core.components()
    if len(comps) > 1:
        stray = next(v for c in comps if used[0] not in c for v in c)
        raise NotEulerian("edges do not form a connected graph", vertex=stray)
    trees = rooted_tree_count(core, used[0])
    return trees * prod(factorial(outd[v] - 1) for v in used)


# --- named families ---------------------------------------------------------


def complete_graph(n: int) -> Graph:
    return Graph(tuple(range(n)), tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite(m: int, n: int) -> Graph:
    left = [f"a{i}" for i in range(m)]
    right = [f"b{j}" for j in range(n)]
    return Graph(tuple(left + right), tuple((u, v) for u in left for v in right))


def cube_graph(n: int) -> Graph:
    verts = ["".join(bits) for bits in product("01", repeat=n)]
    edges = []
    for w in verts:
        for k in range(n):
            if w[k] == "0":
                edges.append((w, w[:k] + "1" + w[k + 1:]))
    return Graph(tuple(verts), tuple(edges))


def hyperoctahedral_graph(n: int) -> Graph:
    """K_{2n} minus the perfect matching {i, i + n}."""
    verts = list(range(2 * n))
    edges = [(i, j) for i in verts for j in verts if i < j and j - i != n]
    return Graph(tuple(verts), tuple(edges))


def grid_graph(m: int, n: int) -> Graph:
    verts = [(r, c) for r in range(m) for c in range(n)]
    edges = []
    for r, c in verts:
        if c + 1 < n:
            edges.append(((r, c), (r, c + 1)))
        if r + 1 < m:
            edges.append(((r, c), (r + 1, c)))
    return Graph(tuple(verts), tuple(edges))


def cycle_graph(n: int, directed: bool = False) -> Graph:
    return Graph(tuple(range(n)), tuple((i, (i + 1) % n) for i in range(n)), directed)


def path_graph(n: int) -> Graph:
    return Graph(tuple(range(n)), tuple((i, i + 1) for i in range(n - 1)))


def wheel_graph(n: int) -> Graph:
    """Hub 0 joined to every vertex of the rim cycle 1..n."""
    rim = [(i, i % n + 1) for i in range(1, n + 1)]
    spokes = [(0, i) for i in range(1, n + 1)]
    return Graph(tuple(range(n + 1)), tuple(spokes + rim))


def de_bruijn_graph(k: int, n: int) -> Graph:
    """Vertices: words of length n-1 over 0..k-1; one edge per word of length n."""
    if k < 1 or n < 1:
        raise BadSpec("de Bruijn graphs need k >= 1 and n >= 1")
    letters = "0123456789abcdefghijklmnopqrstuvwxyz"[:k]
    if len(letters) < k:
        raise BadSpec("alphabet too large")
    verts = ["".join(w) for w in product(letters, repeat=n - 1)]
    edges = [(w, (w + c)[1:]) for w in verts for c in letters]
    return Graph(tuple(verts), tuple(edges), directed=True)


def bidirected_complete(n: int) -> Graph:
    return Graph(tuple(range(n)), tuple((i, j) for i in range(n) for j in range(n) if i != j), True)


_FAMILIES = {
    "complete": (complete_graph, 1),
    "bipartite": (complete_bipartite, 2),
    "cube": (cube_graph, 1),
    "hyperoctahedral": (hyperoctahedral_graph, 1),
    "grid": (grid_graph, 2),
    "cycle": (cycle_graph, 1),
    "dicycle": (lambda n: cycle_graph(n, True), 1),
    "path": (path_graph, 1),
    "wheel": (wheel_graph, 1),
    "debruijn": (de_bruijn_graph, 2),
    "bicomplete": (bidirected_complete, 1),
}


def build_named_graph(spec: str) -> Graph:
    """Build a graph from ``family:params``, e.g. ``complete:4``, ``grid:2x3``, ``debruijn:2,3``."""
    name, _, args = spec.partition(":")
    name = name.strip().lower()
    if name not in _FAMILIES:
        raise BadSpec(f"unknown graph family {name!r}; known: {', '.join(sorted(_FAMILIES))}")
    builder, arity = _FAMILIES[name]
    try:
        params = [int(t) for t in args.replace("x", ",").split(",") if t.strip()]
    except ValueError:
        raise BadSpec(f"bad parameters in {spec!r}") from None
    if len(params) != arity or any(p < 0 for p in params):
        raise BadSpec(f"{name} takes {arity} nonnegative integer parameter(s)")
    return builder(*params)


def _column_fillings(free: int, width: int) -> int:
    """Ways to cover the set bits of ``free`` by monomers and vertical dominoes."""
    total, run = 1, 0
    for k in range(width + 1):
        if k < width and free >> k & 1:
            run += 1
            continue
        # a run of length L has F_{L+1} fillings
        a, b = 1, 1
        for _ in range(run - 1):
            a, b = b, a + b
        total *= b
        run = 0
    return total


def monomer_dimer_transfer(width: int) -> Graph:
    """Transfer graph for monomer-dimer tilings of width x n strips.

    A vertex records which cells of a column are still free ('1') rather
    than already covered by a horizontal domino from the previous column
    ('0'). Edge multiplicities count the monomer/vertical-domino fillings of
    cells free in both columns. Closed walks at the all-'1' vertex of
    length n count tilings of the width x n rectangle.
    """
    full = (1 << width) - 1
    label = lambda s: "".join("0" if s >> k & 1 else "1" for k in range(width))
    edges = []
    for s in range(full + 1):
        for t in range(full + 1):
            if s & t:
                continue
            mult = _column_fillings(full & ~s & ~t, width)
            edges.extend([(label(s), label(t))] * mult)
    return Graph(tuple(label(s) for s in range(full + 1)), tuple(edges), directed=True)


# --- forbidden factors ------------------------------------------------------


def _avoids(word: str, forbidden: Sequence[str]) -> bool:
    return not any(f in word for f in forbidden)


def forbidden_word_automaton(alphabet: Sequence[str], forbidden: Sequence[str]) -> Graph:
    """Transfer graph for words avoiding every forbidden factor.

    With L the longest forbidden length, vertices are the allowed words of
    length L-1 and w -> w[1:]+z whenever w+z is allowed. Walks of length n
    then correspond to allowed words of length n+L-1.
    """
    forbidden = [f for f in forbidden]
    if not forbidden or any(not f for f in forbidden):
        raise BadSpec("need at least one nonempty forbidden word")
    alphabet = list(alphabet)
    width = max(len(f) for f in forbidden) - 1
    verts = ["".join(w) for w in product(alphabet, repeat=width)]
    verts = [w for w in verts if _avoids(w, forbidden)]
    keep = set(verts)
    edges = []
    for w in verts:
        for z in alphabet:
            if _avoids(w + z, forbidden):
                nxt = (w + z)[1:] if width else ""
                if nxt in keep:
                    edges.append((w, nxt))
    return Graph(tuple(verts), tuple(edges), directed=True)


def count_avoiding_words(g: Graph, length: int, width: int) -> int:
    """Allowed words of the given length, from an automaton with window ``width``."""
    if length < width:
        raise ValueError("length below window size; enumerate directly")
    m = walk_matrix(g, length - width)
    return sum(map(sum, m))


# --- text format ------------------------------------------------------------


def parse_graph(text: str) -> Graph:
    """First line ``directed`` or ``undirected``; then ``u v [multiplicity]`` per line."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] not in ("directed", "undirected"):
        raise BadSpec("graph file must start with 'directed' or 'undirected'")
    directed = lines[0] == "directed"
    edges, verts = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) == 1:
            verts.append(parts[0])
            continue
        if len(parts) not in (2, 3):
            raise BadSpec(f"bad edge line {ln!r}")
        mult = int(parts[2]) if len(parts) == 3 else 1
        edges.extend([(parts[0], parts[1])] * mult)
    return Graph.from_edges(edges, directed, verts)


def format_graph(g: Graph) -> str:
    out = ["directed" if g.directed else "undirected"]
    counts = Counter(g.edges)
    for (u, v), m in counts.items():
        out.append(f"{u} {v}" + (f" {m}" if m > 1 else ""))
    touched = {w for e in g.edges for w in e}
    out += [str(v) for v in g.vertices if v not in touched]
    return "\n".join(out) + "\n"


__all__ = [
    "Graph",
    "graph_matrices",
    "adjacency_ints",
    "laplacian_ints",
    "count_walks",
    "walk_matrix",
    "walk_gf",
    "closed_walk_gf",
    "transfer_denominator",
    "spanning_tree_count",
    "rooted_tree_count",
    "eulerian_count",
    "build_named_graph",
    "forbidden_word_automaton",
    "monomer_dimer_transfer",
    "count_avoiding_words",
    "parse_graph",
    "format_graph",
    "complete_graph",
    "complete_bipartite",
    "cube_graph",
    "hyperoctahedral_graph",
    "grid_graph",
    "cycle_graph",
    "path_graph",
    "wheel_graph",
    "de_bruijn_graph",
    "bidirected_complete",
]
