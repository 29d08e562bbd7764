"""Counting by determinants and Pfaffians.

Perfect matchings of grid regions (Kasteleyn), nonintersecting path
systems (Lindstrom-Gessel-Viennot), Hankel determinants, condensation.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from graphlib import CycleError, TopologicalSorter
from typing import Sequence

from .errors import CyclicGraph, NotSkewSymmetric, OddDimension, WindowTooShort
from .graphcount import Graph
from .linalg import ExactMatrix, det_exact
from .poly import as_fraction

# --- Pfaffians --------------------------------------------------------------


def pfaffian(m: ExactMatrix | Sequence[Sequence]) -> Fraction:
    """Pfaffian by skew Gaussian elimination.

    Pf(A) = a_01 * Pf(A') where A' is the Schur complement of the leading
    2x2 block; a simultaneous row/column swap flips the sign.
    """
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.is_polynomial:
        raise TypeError("pfaffian expects rational entries")
    n = m.nrows
    if m.ncols != n or not m.is_skew_symmetric():
        raise NotSkewSymmetric("matrix is not skew-symmetric")
    if n % 2:
        raise OddDimension(f"dimension {n} is odd")
    a = [list(r) for r in m.rows]
    result = Fraction(1)
    while a:
        k = len(a)
        j = next((c for c in range(1, k) if a[0][c] != 0), None)
        if j is None:
            return Fraction(0)
        if j != 1:
            a[1], a[j] = a[j], a[1]
            for row in a:
                row[1], row[j] = row[j], row[1]
            result = -result
        p = a[0][1]
        result *= p
        r0, r1 = a[0], a[1]
        a = [
            [a[i][c] + (r1[i] * r0[c] - r0[i] * r1[c]) / p for c in range(2, k)]
            for i in range(2, k)
        ]
    return result


# --- grid regions -----------------------------------------------------------


@dataclass(frozen=True)
class GridRegion:
    """A finite set of unit cells (row, col)."""

    cells: frozenset

    def __post_init__(self):
        object.__setattr__(self, "cells", frozenset((int(r), int(c)) for r, c in self.cells))

    @classmethod
    def rectangle(cls, rows: int, cols: int) -> "GridRegion":
        return cls(frozenset((r, c) for r in range(rows) for c in range(cols)))

    @classmethod
    def parse(cls, text: str) -> "GridRegion":
        """ASCII art: ``#`` is a cell, ``.`` (or space) is a hole."""
        cells = set()
        for r, line in enumerate(ln for ln in text.splitlines() if ln.strip() or ln == ""):
            for c, ch in enumerate(line.rstrip("\n")):
                if ch == "#":
                    cells.add((r, c))
                elif ch not in ". ":
                    raise ValueError(f"unexpected character {ch!r} in region")
        return cls(frozenset(cells))

    def ordered(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def __len__(self):
        return len(self.cells)

    def render(self) -> str:
        if not self.cells:
            return ""
        r0 = min(r for r, _ in self.cells)
        r1 = max(r for r, _ in self.cells)
        c0 = min(c for _, c in self.cells)
        c1 = max(c for _, c in self.cells)
        return "\n".join(
            "".join("#" if (r, c) in self.cells else "." for c in range(c0, c1 + 1)) for r in range(r0, r1 + 1)
        )


def aztec_diamond_region(n: int) -> GridRegion:
    """Rows of 2, 4, ..., 2n, 2n, ..., 4, 2 cells centred horizontally."""
    cells = set()
    widths = list(range(2, 2 * n + 1, 2)) + list(range(2 * n, 0, -2))
    for r, w in enumerate(widths):
        start = n - w // 2
        for c in range(start, start + w):
            cells.add((r, c))
    return GridRegion(frozenset(cells))


def _grid_edges(cells: set) -> list[tuple]:
    edges = []
    for r, c in sorted(cells):
        if (r, c + 1) in cells:
            edges.append(((r, c), (r, c + 1)))
        if (r + 1, c) in cells:
            edges.append(((r, c), (r + 1, c)))
    return edges


def row_alternating_orientation(cells: set) -> dict:
    """Vertical edges point up; horizontal edges run right on even rows, left on odd rows.

    Returns a map from the unordered edge (as listed by ``_grid_edges``) to
    its (tail, head).
    """
    orient = {}
    for u, v in _grid_edges(cells):
        (r, c), (r2, c2) = u, v
        if r == r2:
            orient[(u, v)] = (u, v) if r % 2 == 0 else (v, u)
        else:
            orient[(u, v)] = (v, u)  # v is the lower cell
    return orient


def _rotation(edges: list) -> dict:
    nbrs = defaultdict(list)
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    rot = {}
    for v, ns in nbrs.items():
        # plane coordinates: x = col, y = -row; sort counterclockwise
        ns.sort(key=lambda w: math.atan2(-(w[0] - v[0]), w[1] - v[1]))
        rot[v] = ns
    return rot


def _faces(edges: list) -> list[list[tuple]]:
    """Face boundary walks of a plane embedding, as lists of directed half-edges."""
    rot = _rotation(edges)
    pos = {v: {w: i for i, w in enumerate(ns)} for v, ns in rot.items()}
    unused = {(u, v) for u, v in edges} | {(v, u) for u, v in edges}
    faces = []
    while unused:
        start = min(unused)
        walk = []
        he = start
        while True:
            unused.discard(he)
            walk.append(he)
            u, v = he
            ns = rot[v]
            w = ns[(pos[v][u] - 1) % len(ns)]
            he = (v, w)
            if he == start:
                break
        faces.append(walk)
    return faces


def _signed_area(walk: list[tuple]) -> float:
    s = 0.0
    for (r1, c1), (r2, c2) in walk:
        s += c1 * (-r2) - c2 * (-r1)
    return s / 2


def _face_is_odd(walk: list[tuple], orient: dict) -> bool:
    along = 0
    for u, v in walk:
        key = (u, v) if (u, v) in orient else (v, u)
        along += orient[key] == (u, v)
    return along % 2 == 1


def kasteleyn_orientation(region: GridRegion) -> dict:
    """A Pfaffian orientation of the grid graph of ``region``.

    The row-alternating rule makes every unit square clockwise-odd, which is
    all that is needed when the region has no holes. Around a hole the
    merged face can come out even; such components get the spanning-tree
    repair: tree edges keep the rule and the other edges are re-oriented
    face by face. Faces are boundary walks, so an edge seen twice on one
    face (a bridge) counts once in each direction.
    """
    cells = set(region.cells)
    edges = _grid_edges(cells)
    orient = row_alternating_orientation(cells)
    for comp_edges in _edge_components(edges):
        faces = _faces(comp_edges)
        if len(faces) < 2:
            continue
        areas = [_signed_area(f) for f in faces]
        outer = max(range(len(faces)), key=lambda i: abs(areas[i]))
        bounded = [f for i, f in enumerate(faces) if i != outer]
        if all(_face_is_odd(f, orient) for f in bounded):
            continue
        _repair(comp_edges, bounded, orient)
    return orient


def _canon(he: tuple) -> tuple:
    u, v = he
    return (u, v) if u < v else (v, u)


def _edge_components(edges: list) -> list[list]:
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        parent[find(u)] = find(v)
    groups = defaultdict(list)
    for e in edges:
        groups[find(e[0])].append(e)
    return list(groups.values())


def _repair(edges: list, bounded: list, orient: dict) -> None:
    adj = defaultdict(list)
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = edges[0][0]
    tree, seen, queue = set(), {root}, deque([root])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(_canon((v, w)))
                queue.append(w)
    free = {e for e in edges if e not in tree}
    face_edges = [{_canon(he) for he in f} for f in bounded]
    pending = list(range(len(bounded)))
    while pending:
        progress = False
        for idx in list(pending):
            open_edges = face_edges[idx] & free
            if len(open_edges) != 1:
                continue
            (e,) = open_edges
            if not _face_is_odd(bounded[idx], orient):
                orient[e] = (orient[e][1], orient[e][0])
            free.discard(e)
            pending.remove(idx)
            progress = True
        if not progress:
            raise RuntimeError("face peeling stalled; embedding is inconsistent")


def kasteleyn_match_count(region: GridRegion) -> int:
    """Number of domino tilings (perfect matchings) of the region."""
    cells = set(region.cells)
    if not cells:
        return 1
    if len(cells) % 2:
        return 0
    orient = kasteleyn_orientation(region)
    # matchings factor over connected components
    comps = _edge_components(_grid_edges(cells))
    covered = {v for comp in comps for e in comp for v in e}
    if covered != cells:
        return 0  # an isolated cell cannot be matched
    total = 1
    for comp in comps:
        verts = sorted({v for e in comp for v in e})
        if len(verts) % 2:
            return 0
        idx = {v: i for i, v in enumerate(verts)}
        n = len(verts)
        s = [[0] * n for _ in range(n)]
        for e in comp:
            t, h = orient[e]
            s[idx[t]][idx[h]] = 1
            s[idx[h]][idx[t]] = -1
        pf = pfaffian(s)
        total *= abs(int(pf))
        if total == 0:
            return 0
    return total


# --- Lindstrom-Gessel-Viennot ----------------------------------------------


@dataclass(frozen=True)
class WeightedDAG:
    graph: Graph
    sources: tuple
    sinks: tuple
    weights: tuple = ()
    _order: tuple = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        if not self.graph.directed:
            raise ValueError("LGV needs a directed graph")
        if len(self.sources) != len(self.sinks) or not self.sources:
            raise ValueError("need equally many (and at least one) sources and sinks")
        for v in (*self.sources, *self.sinks):
            self.graph.index(v)
        w = tuple(as_fraction(x) for x in self.weights) if self.weights else (Fraction(1),) * len(self.graph.edges)
        if len(w) != len(self.graph.edges):
            raise ValueError("one weight per edge")
        ts = TopologicalSorter({v: set() for v in self.graph.vertices})
        for u, v in self.graph.edges:
            ts.add(v, u)
        try:
            order = tuple(ts.static_order())
        except CycleError as exc:
            raise CyclicGraph(f"directed cycle through {exc.args[1][0]!r}") from None
        object.__setattr__(self, "weights", w)
        object.__setattr__(self, "_order", order)

    def path_sums(self, source) -> dict:
        incoming = defaultdict(list)
        for (u, v), w in zip(self.graph.edges, self.weights):
            incoming[v].append((u, w))
        total = {v: Fraction(0) for v in self.graph.vertices}
        total[source] = Fraction(1)
        for v in self._order:
            if v == source:
                continue
            total[v] = sum((total[u] * w for u, w in incoming[v]), Fraction(0))
        return total

    def path_matrix(self) -> ExactMatrix:
        rows = []
        for s in self.sources:
            ps = self.path_sums(s)
            rows.append([ps[t] for t in self.sinks])
        return ExactMatrix(rows)


def lgv_routing_count(d: WeightedDAG) -> Fraction:
    return det_exact(d.path_matrix())


def hexagon_dag(n: int) -> WeightedDAG:
    """North/east lattice paths whose routings are rhombus tilings of the
    hexagon with side lengths n.

    Sources (-i, i) and sinks (n-i, n+i) for i = 1..n; there are
    C(2n, n+i-j) paths from source i to sink j.
    """
    pts = [(x, y) for x in range(-n, n) for y in range(1, 2 * n + 1)]
    have = set(pts)
    edges = []
    for x, y in pts:
        if (x + 1, y) in have:
            edges.append(((x, y), (x + 1, y)))
        if (x, y + 1) in have:
            edges.append(((x, y), (x, y + 1)))
    g = Graph(tuple(pts), tuple(edges), directed=True)
    return WeightedDAG(g, tuple((-i, i) for i in range(1, n + 1)), tuple((n - i, n + i) for i in range(1, n + 1)))


def hexagon_product(n: int) -> Fraction:
    out = Fraction(1)
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                out *= Fraction(i + j + k - 1, i + j + k - 2)
    return out


def binomial_hexagon_det(n: int) -> Fraction:
    """det[C(2n, n+i-j)] for 1 <= i, j <= n."""
    if n == 0:
        return Fraction(1)
    return det_exact(ExactMatrix([[math.comb(2 * n, n + i - j) for j in range(1, n + 1)] for i in range(1, n + 1)]))


# --- Hankel, condensation, Aztec -------------------------------------------


def hankel_matrix(seq: Sequence, n: int, shifted: bool = False) -> ExactMatrix:
    """(n+1)x(n+1) matrix with entries a_{i+j} (or a_{i+j+1} when shifted)."""
    need = 2 * n + 2 if shifted else 2 * n + 1
    if len(seq) < need:
        raise WindowTooShort(f"need {need} terms, got {len(seq)}")
    off = 1 if shifted else 0
    return ExactMatrix([[seq[i + j + off] for j in range(n + 1)] for i in range(n + 1)])


def hankel_det(seq: Sequence, n: int, shifted: bool = False) -> Fraction:
    if n < 0:
        return Fraction(1)
    return det_exact(hankel_matrix(seq, n, shifted))


def condensation_levels(m: ExactMatrix | Sequence[Sequence]) -> list[list[list[Fraction]]] | None:
    """All levels of the condensation pyramid above the matrix itself.

    Returns None when a zero would be used as a divisor.
    """
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    n = m.nrows
    prev = [[Fraction(1)] * (n + 1) for _ in range(n + 1)]
    cur = [list(r) for r in m.rows]
    levels = [cur]
    while len(cur) > 1:
        k = len(cur) - 1
        nxt = []
        for i in range(k):
            row = []
            for j in range(k):
                e = prev[i + 1][j + 1]
                if e == 0:
                    return None
                row.append((cur[i][j] * cur[i + 1][j + 1] - cur[i][j + 1] * cur[i + 1][j]) / e)
            nxt.append(row)
        prev, cur = cur, nxt
        levels.append(cur)
    return levels


def dodgson_det(m: ExactMatrix | Sequence[Sequence]) -> Fraction:
    """Determinant by condensation, falling back to elimination on a zero divisor."""
    if not isinstance(m, ExactMatrix):
        m = ExactMatrix(m)
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if m.nrows == 0:
        return Fraction(1)
    levels = condensation_levels(m)
    if levels is None:
        return det_exact(m)
    return levels[-1][0][0]


def schroder_numbers(count: int) -> list[int]:
    """Large Schroeder numbers 1, 2, 6, 22, 90, ..."""
    r = [1]
    while len(r) < count:
        n = len(r)
        r.append(r[n - 1] + sum(r[k] * r[n - 1 - k] for k in range(n)))
    return r[:count]


def catalan_numbers(count: int) -> list[int]:
    return [math.comb(2 * n, n) // (n + 1) for n in range(count)]


def aztec_count(n: int) -> int:
    """Domino tilings of the Aztec diamond of order n, as det H'_{n-1}(Schroeder)."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n == 0:
        return 1
    seq = schroder_numbers(2 * n)
    return int(hankel_det(seq, n - 1, shifted=True))


__all__ = [
    "pfaffian",
    "GridRegion",
    "aztec_diamond_region",
    "row_alternating_orientation",
    "kasteleyn_orientation",
    "kasteleyn_match_count",
    "WeightedDAG",
    "lgv_routing_count",
    "hexagon_dag",
    "hexagon_product",
    "binomial_hexagon_det",
    "hankel_matrix",
    "hankel_det",
    "condensation_levels",
    "dodgson_det",
    "schroder_numbers",
    "catalan_numbers",
    "aztec_count",
]
