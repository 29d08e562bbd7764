"""Matroids given by a rank oracle on bitmasks, and their Tutte polynomials.

Backends: explicit bases, vectors over Q or a prime field, graphs, uniform
matroids. Duals, minors and direct sums wrap the parent's rank oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Hashable, Iterable, Sequence

from .errors import AxiomViolation, BadSpec, BadSubset, PrimeInstability
from .graphcount import Graph
from .linalg import rank as rank_q
from .linalg import rank_mod_p
from .poly import BiPoly, Poly
from .posetkit import Poset, lattice_ops


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Matroid:
    """Ground set labels plus a rank function on subsets encoded as bitmasks."""

    __slots__ = ("ground", "index", "kind", "_rank_fn", "_cache")

    def __init__(self, ground: Iterable[Hashable], rank_fn: Callable[[int], int], kind: str = "oracle"):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise ValueError("ground set labels must be distinct")
        self.index = {e: i for i, e in enumerate(self.ground)}
        self.kind = kind
        self._rank_fn = rank_fn
        self._cache: dict[int, int] = {}

    def __len__(self):
        return len(self.ground)

    def __repr__(self):
        return f"Matroid({self.kind}, {len(self)} elements, rank {self.rank()})"

    @property
    def full(self) -> int:
        return (1 << len(self.ground)) - 1

    def rank_mask(self, mask: int) -> int:
        r = self._cache.get(mask)
        if r is None:
            r = self._rank_fn(mask)
            self._cache[mask] = r
        return r

    def mask(self, subset: Iterable) -> int:
        m = 0
        for e in subset:
            if e not in self.index:
                raise BadSubset(f"{e!r} is not in the ground set")
            m |= 1 << self.index[e]
        return m

    def labels(self, mask: int) -> frozenset:
        return frozenset(self.ground[i] for i in _bits(mask))

    def rank(self, subset: Iterable | None = None) -> int:
        return self.rank_mask(self.full if subset is None else self.mask(subset))

    def closure_mask(self, mask: int) -> int:
        r = self.rank_mask(mask)
        out = mask
        for i in range(len(self.ground)):
            if not mask >> i & 1 and self.rank_mask(mask | 1 << i) == r:
                out |= 1 << i
        return out

    # constructors

    @classmethod
    def from_bases(cls, ground: Iterable, bases: Iterable[Iterable], check: bool = True) -> "Matroid":
        ground = tuple(ground)
        idx = {e: i for i, e in enumerate(ground)}
        bmasks = []
        for b in bases:
            m = 0
            for e in b:
                if e not in idx:
                    raise AxiomViolation(f"basis element {e!r} is not in the ground set")
                m |= 1 << idx[e]
            bmasks.append(m)
        bmasks = sorted(set(bmasks))
        if not bmasks:
            raise AxiomViolation("a matroid has at least one basis")
        if check:
            sizes = {m.bit_count() for m in bmasks}
            if len(sizes) != 1:
                raise AxiomViolation("bases have different sizes")
            have = set(bmasks)
            for b1 in bmasks:
                for b2 in bmasks:
                    for x in _bits(b1 & ~b2):
                        if not any((b1 & ~(1 << x)) | (1 << y) in have for y in _bits(b2 & ~b1)):
                            raise AxiomViolation(
                                f"exchange fails for {ground[x]!r} between two bases"
                            )

        def rank_fn(mask):
            return max((mask & b).bit_count() for b in bmasks)

        return cls(ground, rank_fn, "bases")

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[int]], p: int | None = None, labels: Iterable | None = None) -> "Matroid":
        """One element per vector; rank over Q (p None) or over F_p."""
        vecs = [tuple(v) for v in vectors]
        ground = tuple(labels) if labels is not None else tuple(range(len(vecs)))
        if len(ground) != len(vecs):
            raise ValueError("one label per vector")

        def rank_fn(mask):
            rows = [vecs[i] for i in _bits(mask)]
            if not rows:
                return 0
            return rank_mod_p(rows, p) if p else rank_q(rows)

        return cls(ground, rank_fn, "matrix" if p is None else f"matrix mod {p}")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], p: int | None = None, labels: Iterable | None = None) -> "Matroid":
        """Elements are the columns of the matrix."""
        cols = list(zip(*rows)) if rows else []
        return cls.from_vectors(cols, p, labels)

    @classmethod
    def from_graph(cls, g: Graph, labels: Iterable | None = None) -> "Matroid":
        """Cycle matroid: elements are edges, rank = |V| - components."""
        verts = {v: i for i, v in enumerate(g.vertices)}
        edges = [(verts[u], verts[v]) for u, v in g.edges]
        ground = tuple(labels) if labels is not None else tuple(range(len(edges)))

        def rank_fn(mask):
            parent = {}

            def find(x):
                while parent.get(x, x) != x:
                    parent[x] = parent.get(parent[x], parent[x])
                    x = parent[x]
                return x

            r = 0
            for i in _bits(mask):
                a, b = find(edges[i][0]), find(edges[i][1])
                if a != b:
                    parent[a] = b
                    r += 1
            return r

        m = cls(ground, rank_fn, "graph")
        return m

    @classmethod
    def uniform(cls, k: int, n: int) -> "Matroid":
        if not 0 <= k <= n:
            raise ValueError("uniform matroid needs 0 <= k <= n")
        return cls(range(n), lambda mask: min(mask.bit_count(), k), f"uniform U({k},{n})")

    # derived data

    def bases(self) -> list[frozenset]:
        r = self.rank()
        return [frozenset(self.ground[i] for i in s) for s in combinations(range(len(self)), r)
                if self.rank_mask(sum(1 << i for i in s)) == r]

    def independent_sets(self) -> list[frozenset]:
        return [self.labels(m) for m in range(self.full + 1) if self.rank_mask(m) == m.bit_count()]

    def circuits(self) -> list[frozenset]:
        out = []
        for m in range(1, self.full + 1):
            k = m.bit_count()
            if self.rank_mask(m) == k - 1 and all(self.rank_mask(m & ~(1 << i)) == k - 1 for i in _bits(m)):
                out.append(self.labels(m))
        return sorted(out, key=lambda c: (len(c), sorted(map(repr, c))))

    def flat_masks(self) -> list[int]:
        return [m for m in range(self.full + 1) if self.closure_mask(m) == m]

    def flats(self) -> list[frozenset]:
        return [self.labels(m) for m in self.flat_masks()]

    def loops(self) -> list:
        return [e for i, e in enumerate(self.ground) if self.rank_mask(1 << i) == 0]

    def coloops(self) -> list:
        r = self.rank()
        return [e for i, e in enumerate(self.ground) if self.rank_mask(self.full & ~(1 << i)) < r]

    def components(self) -> list[frozenset]:
        parent = list(range(len(self)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            idx = [self.index[e] for e in c]
            for i in idx[1:]:
                parent[find(i)] = find(idx[0])
        groups: dict = {}
        for i in range(len(self)):
            groups.setdefault(find(i), set()).add(self.ground[i])
        return [frozenset(g) for g in groups.values()]

    def lattice_of_flats(self) -> Poset:
        fl = self.flat_masks()
        have = set(fl)
        covers = []
        for f in fl:
            r = self.rank_mask(f)
            for i in range(len(self)):
                if not f >> i & 1:
                    g = self.closure_mask(f | 1 << i)
                    if g in have and self.rank_mask(g) == r + 1:
                        covers.append((self.labels(f), self.labels(g)))
        return Poset([self.labels(m) for m in fl], covers)

    # operations

    def dual(self) -> "Matroid":
        r = self.rank()
        full = self.full
        return Matroid(self.ground, lambda m: m.bit_count() - r + self.rank_mask(full & ~m), f"dual of {self.kind}")

    def _sub_ground(self, keep_mask: int):
        keep = list(_bits(keep_mask))

        def lift(mask):
            out = 0
            for k, i in enumerate(keep):
                if mask >> k & 1:
                    out |= 1 << i
            return out

        return [self.ground[i] for i in keep], lift

    def delete(self, subset: Iterable) -> "Matroid":
        s = self.mask(subset)
        ground, lift = self._sub_ground(self.full & ~s)
        return Matroid(ground, lambda m: self.rank_mask(lift(m)), f"{self.kind} deletion")

    def contract(self, subset: Iterable) -> "Matroid":
        s = self.mask(subset)
        rs = self.rank_mask(s)
        ground, lift = self._sub_ground(self.full & ~s)
        return Matroid(ground, lambda m: self.rank_mask(lift(m) | s) - rs, f"{self.kind} contraction")

    def restrict(self, subset: Iterable) -> "Matroid":
        return self.delete(set(self.ground) - set(subset))

    def direct_sum(self, other: "Matroid") -> "Matroid":
        if set(self.ground) & set(other.ground):
            ground = [(0, e) for e in self.ground] + [(1, e) for e in other.ground]
        else:
            ground = list(self.ground) + list(other.ground)
        n = len(self)
        low = (1 << n) - 1
        return Matroid(ground, lambda m: self.rank_mask(m & low) + other.rank_mask(m >> n), "direct sum")

    def same_as(self, other: "Matroid") -> bool:
        """Equal ground sets and equal rank on every subset."""
        if set(self.ground) != set(other.ground):
            return False
        return all(self.rank(self.labels(m)) == other.rank(self.labels(m)) for m in range(self.full + 1))


def is_geometric(m: Matroid) -> bool:
    """Lattice of flats is atomic and semimodular."""
    lat = m.lattice_of_flats()
    rep = lattice_ops(lat)
    if not rep.is_lattice:
        return False
    rk = {f: m.rank(f) for f in lat.elements}
    atoms = [f for f in lat.elements if rk[f] == 1]
    for f in lat.elements:
        below = [a for a in atoms if a <= f]
        j = min(lat.elements, key=lambda g: rk[g])
        for a in below:
            j = rep.joins[(j, a)]
        if j != f:
            return False
    for x in lat.elements:
        for y in lat.elements:
            if rk[x] + rk[y] < rk[rep.meets[(x, y)]] + rk[rep.joins[(x, y)]]:
                return False
    return True


def parse_matroid(text: str) -> Matroid:
    """JSON with a ``backend`` tag: ``bases``, ``matrix`` (+ ``field``), ``graph``, ``uniform``."""
    data = json.loads(text)
    kind = data.get("backend")
    if kind == "bases":
        return Matroid.from_bases(data["ground"], data["bases"])
    if kind == "matrix":
        fld = data.get("field", "Q")
        p = None if fld in ("Q", None) else int(fld)
        return Matroid.from_matrix(data["rows"], p, data.get("labels"))
    if kind == "graph":
        edges = [tuple(e) for e in data["edges"]]
        return Matroid.from_graph(Graph.from_edges(edges, vertices=data.get("vertices", ())))
    if kind == "uniform":
        return Matroid.uniform(int(data["k"]), int(data["n"]))
    raise ValueError(f"unknown matroid backend {kind!r}")


def fano() -> Matroid:
    vecs = [v for v in ((a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)) if any(v)]
    return Matroid.from_vectors(vecs, p=2)


# --- Tutte polynomial ---------------------------------------------------------------


def _poly(counts: dict) -> BiPoly:
    return BiPoly({k: v for k, v in counts.items() if v})


def _tutte_subset_sum(m: Matroid) -> BiPoly:
    """Sum over A of (x-1)^(r - r(A)) (y-1)^(|A| - r(A))."""
    r = m.rank()
    hist: dict = {}
    for a in range(m.full + 1):
        ra = m.rank_mask(a)
        key = (r - ra, a.bit_count() - ra)
        hist[key] = hist.get(key, 0) + 1
    # expand (x-1)^i (y-1)^j
    out: dict = {}
    for (i, j), c in hist.items():
        for a in range(i + 1):
            for b in range(j + 1):
                v = c * comb(i, a) * comb(j, b) * (-1) ** (i - a + j - b)
                out[(a, b)] = out.get((a, b), 0) + v
    return _poly(out)


def _mul_x(p: dict) -> dict:
    return {(i + 1, j): c for (i, j), c in p.items()}


def _mul_y(p: dict) -> dict:
    return {(i, j + 1): c for (i, j), c in p.items()}


def _add(p: dict, q: dict) -> dict:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return out


def _tutte_deletion_contraction(m: Matroid) -> BiPoly:
    """T(M) = T(M\\e) + T(M/e), with loops giving y and coloops giving x.

    A minor is (M / C) \\ D with remaining set R; its rank function is
    r(A | C) - r(C), which only depends on the closure of C. The memo is keyed
    on (R, closure(C)).
    """
    memo: dict = {}

    def go(rem: int, con: int) -> dict:
        if rem == 0:
            return {(0, 0): 1}
        key = (rem, m.closure_mask(con))
        hit = memo.get(key)
        if hit is not None:
            return hit
        e = (rem & -rem).bit_length() - 1
        bit = 1 << e
        rest = rem & ~bit
        rc = m.rank_mask(con)
        if m.rank_mask(con | bit) == rc:
            res = _mul_y(go(rest, con))
        elif m.rank_mask(rem | con) - m.rank_mask(rest | con) == 1:
            res = _mul_x(go(rest, con | bit))
        else:
            res = _add(go(rest, con), go(rest, con | bit))
        memo[key] = res
        return res

    return _poly(go(m.full, 0))


def _tutte_activities(m: Matroid, order: Sequence | None = None) -> BiPoly:
    """Sum over bases of x^(internal activity) y^(external activity)."""
    n = len(m)
    pos = list(range(n)) if order is None else [m.index[e] for e in order]
    if sorted(pos) != list(range(n)):
        raise ValueError("order must list every ground element once")
    rank_of = {i: k for k, i in enumerate(pos)}
    r = m.rank()
    out: dict = {}
    for s in combinations(range(n), r):
        b = sum(1 << i for i in s)
        if m.rank_mask(b) != r:
            continue
        ia = 0
        for e in s:
            # fundamental cocircuit of e: f such that B - e + f is a basis
            co = [f for f in range(n) if not b >> f & 1 and m.rank_mask((b & ~(1 << e)) | 1 << f) == r]
            if all(rank_of[e] < rank_of[f] for f in co):
                ia += 1
        ea = 0
        for f in range(n):
            if b >> f & 1:
                continue
            circ = [e for e in s if m.rank_mask((b & ~(1 << e)) | 1 << f) == r]
            if all(rank_of[f] < rank_of[e] for e in circ):
                ea += 1
        out[(ia, ea)] = out.get((ia, ea), 0) + 1
    return _poly(out)


TUTTE_BACKENDS = ("subset_sum", "deletion_contraction", "activities")


def tutte(m: Matroid, backend: str = "deletion_contraction", order: Sequence | None = None) -> BiPoly:
    if backend == "subset_sum":
        return _tutte_subset_sum(m)
    if backend == "deletion_contraction":
        return _tutte_deletion_contraction(m)
    if backend == "activities":
        return _tutte_activities(m, order)
    raise ValueError(f"unknown backend {backend!r}; choose from {TUTTE_BACKENDS}")


def tutte_uniform(k: int, n: int) -> BiPoly:
    """Closed form for U(k, n), for cross-checking."""
    if not 0 <= k <= n:
        raise ValueError("need 0 <= k <= n")
    if k == 0:
        return _poly({(0, n): 1})
    if k == n:
        return _poly({(n, 0): 1})
    out: dict = {}
    for i in range(1, k + 1):
        out[(i, 0)] = comb(n - i - 1, n - k - 1)
    for j in range(1, n - k + 1):
        out[(0, j)] = out.get((0, j), 0) + comb(n - j - 1, k - 1)
    return _poly(out)


def _one_var(p: BiPoly, x, y) -> Poly:
    """Substitute Poly or scalar values and collect a univariate Poly."""
    total = Poly()
    for (i, j), c in p.terms.items():
        total = total + Poly.const(c) * (Poly.const(x) if not isinstance(x, Poly) else x) ** i * (
            Poly.const(y) if not isinstance(y, Poly) else y
        ) ** j
    return total


@dataclass
class TutteReport:
    tutte: BiPoly
    bases: int
    independent_sets: int
    spanning_sets: int
    subsets: int
    beta: int
    char_poly: Poly
    independence_f: list[int]
    independence_h: list[int]
    convention: str = "char_poly has degree rank(M); an arrangement in dimension d has chi_A(q) = q^(d - r) chi_M(q)"
    chromatic: Poly | None = None
    acyclic_orientations: int | None = None
    flow: Poly | None = None
    reliability: Poly | None = None
    notes: list[str] = field(default_factory=list)


def tutte_evaluations(m: Matroid, graph: Graph | None = None, t: BiPoly | None = None) -> TutteReport:
    t = t if t is not None else tutte(m)
    r = m.rank()
    q = Poly.x()
    charp = _one_var(t, 1 - q, 0) * (-1) ** r
    f_poly = _one_var(t, q + 1, 1)
    h_poly = _one_var(t, q, 1)
    rep = TutteReport(
        tutte=t,
        bases=int(t(1, 1)),
        independent_sets=int(t(2, 1)),
        spanning_sets=int(t(1, 2)),
        subsets=int(t(2, 2)),
        beta=int(t.coeff(1, 0)),
        char_poly=charp,
        independence_f=[int(f_poly[r - i]) for i in range(r + 1)],
        independence_h=[int(h_poly[r - i]) for i in range(r + 1)],
    )
    if graph is not None:
        v, e = graph.n, len(graph.edges)
        c = len(graph.components())
        rep.chromatic = _one_var(t, 1 - q, 0) * Poly.monomial(c) * (-1) ** (v - c)
        rep.acyclic_orientations = int(t(2, 0))
        rep.flow = _one_var(t, 0, 1 - q) * (-1) ** (e - v + c)
        if c == 1:
            # (1-p)^(e-v+1) p^(v-1) T(1, 1/(1-p)); y-degree is at most e-v+1
            nul = e - v + 1
            total = Poly()
            for (i, j), coeff in t.terms.items():
                total = total + Poly.const(coeff) * (1 - q) ** (nul - j)
            rep.reliability = total * Poly.monomial(v - 1)
        else:
            rep.notes.append("reliability omitted: graph is disconnected")
    return rep


def coboundary(t: BiPoly, r: int) -> BiPoly:
    """(Y-1)^r T((X+Y-1)/(Y-1), Y), expanded; X and Y are the x and y slots."""
    X, Y = BiPoly.x(), BiPoly.y()
    out = BiPoly()
    for (i, j), c in t.terms.items():
        if i > r:
            raise ArithmeticError("x-degree of a Tutte polynomial cannot exceed the rank")
        out = out + (X + Y - 1) ** i * (Y - 1) ** (r - i) * Y ** j * c
    return out


def matroid_coboundary(m: Matroid) -> BiPoly:
    return coboundary(tutte(m), m.rank())


def tutte_from_coboundary(cb: BiPoly, r: int) -> BiPoly:
    """Invert the coboundary substitution: T(x, y) = cb((x-1)(y-1), y) / (y-1)^r."""
    x, y = BiPoly.x(), BiPoly.y()
    p = cb.substitute((x - 1) * (y - 1), y)
    for _ in range(r):
        p = p.divide_by_y_minus_one()
    return p


def tutte_via_finite_fields(a, primes: Sequence[int] | None = None, checks: int = 2) -> BiPoly:
    """Tutte polynomial of a central arrangement's matroid from F_q hit histograms.

    For each prime q, sum_p t^h(p) = q^(d-r) cb(q, t); the t-coefficients are
    interpolated in q (degree r), checked at extra primes, and inverted.
    """
    from .arrkit import coboundary_histogram, stable_primes

    if not a.is_central():
        from .errors import NotCentral

        raise NotCentral("finite-field Tutte needs a central arrangement")
    r, d = a.rank, a.dim
    need = r + 1
    if primes is None:
        primes = stable_primes(a, need + checks)
    hists = [coboundary_histogram(a, p) for p in primes]
    m = len(a)
    cols = {}
    for j in range(m + 1):
        vals = [Fraction(h[j], p ** (d - r)) for h, p in zip(hists, primes)]
        poly = Poly.interpolate(primes[:need], vals[:need])
        for p, v in zip(primes[need:], vals[need:]):
            if poly(p) != v:
                raise PrimeInstability(f"coboundary coefficient of t^{j} disagrees at q = {p}")
        cols[j] = poly
    cb = BiPoly({(i, j): c for j, pol in cols.items() for i, c in enumerate(pol.coeffs)})
    t = tutte_from_coboundary(cb, r)
    if not t.is_integral():
        raise PrimeInstability("reconstructed Tutte polynomial is not integral")
    return t


def arrangement_matroid(a) -> Matroid:
    return Matroid.from_vectors(a.normals)


def build_named_matroid(spec: str) -> Matroid:
    """``uniform:2,4``, ``fano``, ``graph:<graph spec>``, ``arr:<arrangement spec>``."""
    from .arrkit import build_named_arrangement
    from .graphcount import build_named_graph

    name, _, rest = spec.strip().partition(":")
    if name == "fano" and not rest:
        return fano()
    if name == "graph":
        return Matroid.from_graph(build_named_graph(rest))
    if name == "arr":
        return arrangement_matroid(build_named_arrangement(rest))
    if name == "uniform":
        try:
            k, n = (int(t) for t in rest.split(","))
        except ValueError:
            raise BadSpec(f"bad parameters in {spec!r}") from None
        if not 0 <= k <= n:
            raise BadSpec("uniform matroid needs 0 <= k <= n")
        return Matroid.uniform(k, n)
    raise BadSpec(f"unknown matroid spec {spec!r}")


__all__ = [
    "Matroid",
    "is_geometric",
    "parse_matroid",
    "fano",
    "TUTTE_BACKENDS",
    "tutte",
    "tutte_uniform",
    "TutteReport",
    "tutte_evaluations",
    "coboundary",
    "matroid_coboundary",
    "tutte_from_coboundary",
    "tutte_via_finite_fields",
    "arrangement_matroid",
    "build_named_matroid",
]
