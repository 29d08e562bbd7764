"""Finite posets: Mobius functions, zeta and order polynomials, linear
extensions, distributive lattices, flag vectors, ab- and cd-indices.

Elements are stored in a linear-extension order, and the order relation is
kept as bitmasks: ``down[i]`` has bit j set iff element j <= element i.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import combinations, permutations, product
from typing import Callable, Hashable, Iterable, Sequence

from .errors import BadSpec, CycleDetected, NotEulerianPoset, NotGraded, TooLarge
from .linalg import rref
from .poly import Poly

DEFAULT_MAX_BITS = 24


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    __slots__ = ("elements", "index", "down", "up", "covers", "_rank")

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple] = ()):
        """``relations`` holds pairs (a, b) meaning a <= b; closure is taken."""
        elems = list(elements)
        if len(set(elems)) != len(elems):
            raise ValueError("element labels must be distinct")
        pos = {e: i for i, e in enumerate(elems)}
        succ = [set() for _ in elems]
        indeg = [0] * len(elems)
        for a, b in relations:
            if a not in pos or b not in pos:
                raise ValueError(f"relation ({a!r}, {b!r}) mentions an unknown element")
            i, j = pos[a], pos[b]
            if i == j or j in succ[i]:
                continue
            succ[i].add(j)
            indeg[j] += 1
        # Kahn's algorithm, breaking ties by the caller's order
        heap = [i for i in range(len(elems)) if indeg[i] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            i = heapq.heappop(heap)
            order.append(i)
            for j in succ[i]:
                indeg[j] -= 1
                if indeg[j] == 0:
                    heapq.heappush(heap, j)
        if len(order) != len(elems):
            stuck = next(elems[i] for i in range(len(elems)) if indeg[i] > 0)
            raise CycleDetected(f"the relation has a cycle through {stuck!r}")
        new = {old: k for k, old in enumerate(order)}
        self.elements = tuple(elems[i] for i in order)
        self.index = {e: k for k, e in enumerate(self.elements)}
        preds = [[] for _ in order]
        for i in range(len(elems)):
            for j in succ[i]:
                preds[new[j]].append(new[i])
        down = [0] * len(order)
        for k in range(len(order)):
            m = 1 << k
            for p in preds[k]:
                m |= down[p]
            down[k] = m
        up = [0] * len(order)
        for k, m in enumerate(down):
            for j in _bits(m):
                up[j] |= 1 << k
        self.down = tuple(down)
        self.up = tuple(up)
        covers = []
        for y in range(len(order)):
            for x in _bits(down[y] & ~(1 << y)):
                if (up[x] & down[y]).bit_count() == 2:
                    covers.append((x, y))
        self.covers = tuple(covers)
        self._rank = None

    # construction helpers

    @classmethod
    def from_covers(cls, elements: Iterable, covers: Iterable[tuple]) -> "Poset":
        return cls(elements, covers)

    @classmethod
    def from_leq(cls, elements: Iterable, leq: Callable[[object, object], bool]) -> "Poset":
        elems = list(elements)
        rel = [(a, b) for a in elems for b in elems if a != b and leq(a, b)]
        for a, b in rel:
            if leq(b, a):
                raise CycleDetected(f"{a!r} and {b!r} are mutually related")
        return cls(elems, rel)

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"Poset({len(self)} elements, {len(self.covers)} covers)"

    def __eq__(self, other):
        if not isinstance(other, Poset) or set(self.elements) != set(other.elements):
            return False
        return self.relation_pairs() == other.relation_pairs()

    def __hash__(self):
        return hash(frozenset(self.relation_pairs()))

    def relation_pairs(self) -> set[tuple]:
        return {(self.elements[x], self.elements[y]) for y in range(len(self)) for x in _bits(self.down[y]) if x != y}

    def cover_pairs(self) -> list[tuple]:
        return [(self.elements[x], self.elements[y]) for x, y in self.covers]

    def leq(self, a, b) -> bool:
        return bool(self.down[self.index[b]] >> self.index[a] & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def interval_mask(self, i: int, j: int) -> int:
        return self.up[i] & self.down[j]

    def minimal(self) -> list:
        return [self.elements[i] for i in range(len(self)) if self.down[i] == 1 << i]

    def maximal(self) -> list:
        return [self.elements[i] for i in range(len(self)) if self.up[i] == 1 << i]

    def bottom(self):
        full = (1 << len(self)) - 1
        for i in range(len(self)):
            if self.up[i] == full:
                return self.elements[i]
        return None

    def top(self):
        full = (1 << len(self)) - 1
        for i in range(len(self)):
            if self.down[i] == full:
                return self.elements[i]
        return None

    def is_bounded(self) -> bool:
        return len(self) > 0 and self.bottom() is not None and self.top() is not None

    def dual(self) -> "Poset":
        return Poset(self.elements, [(b, a) for a, b in self.cover_pairs()])

    def subposet(self, keep: Iterable) -> "Poset":
        keep = list(keep)
        ks = set(keep)
        return Poset(keep, [(a, b) for a, b in self.relation_pairs() if a in ks and b in ks])

    def interval(self, a, b) -> "Poset":
        i, j = self.index[a], self.index[b]
        return self.subposet(self.elements[k] for k in _bits(self.interval_mask(i, j)))

    # grading

    def rank_function(self) -> dict | None:
        """Rank from the minimal elements if every cover raises rank by one, else None."""
        if self._rank is None:
            rank = [0] * len(self)
            for x, y in sorted(self.covers, key=lambda c: c[1]):
                rank[y] = max(rank[y], rank[x] + 1)
            ok = all(rank[y] == rank[x] + 1 for x, y in self.covers)
            mins = [i for i in range(len(self)) if self.down[i] == 1 << i]
            ok = ok and all(rank[i] == 0 for i in mins)
            self._rank = (ok, tuple(rank))
        ok, rank = self._rank
        if not ok:
            return None
        return {self.elements[i]: r for i, r in enumerate(rank)}

    def is_graded(self) -> bool:
        """Bounded and every maximal chain has the same length."""
        return self.is_bounded() and self.rank_function() is not None

    def to_text(self) -> str:
        return "".join(f"{a} < {b}\n" for a, b in self.cover_pairs())


# --- named posets ------------------------------------------------------------


def chain(n: int) -> Poset:
    return Poset(range(1, n + 1), [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    return Poset(range(1, n + 1))


def boolean_lattice(n: int) -> Poset:
    subsets = [frozenset(c) for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    covers = [(s, s | {x}) for s in subsets for x in range(1, n + 1) if x not in s]
    return Poset(subsets, covers)


def divisor_lattice(n: int) -> Poset:
    ds = [d for d in range(1, n + 1) if n % d == 0]
    return Poset(ds, [(a, b) for a in ds for b in ds if a != b and b % a == 0])


def set_partitions(n: int) -> list[tuple]:
    """Set partitions of {1..n}, each a sorted tuple of sorted tuples."""
    out = []

    def go(i, blocks):
        if i > n:
            out.append(tuple(sorted(tuple(b) for b in blocks)))
            return
        for b in blocks:
            b.append(i)
            go(i + 1, blocks)
            b.pop()
        blocks.append([i])
        go(i + 1, blocks)
        blocks.pop()

    go(1, [])
    return out


def _refines(p: tuple, q: tuple) -> bool:
    where = {x: k for k, b in enumerate(q) for x in b}
    return all(len({where[x] for x in b}) == 1 for b in p)


def _is_noncrossing(p: tuple) -> bool:
    where = {x: k for k, b in enumerate(p) for x in b}
    n = len(where)
    for a, b, c, d in combinations(range(1, n + 1), 4):
        if where[a] == where[c] and where[b] == where[d] and where[a] != where[b]:
            return False
    return True


def _partition_poset(parts: list[tuple]) -> Poset:
    covers = []
    for p in parts:
        # q covers p iff q merges exactly two blocks of p
        for i, j in combinations(range(len(p)), 2):
            merged = [b for k, b in enumerate(p) if k not in (i, j)] + [tuple(sorted(p[i] + p[j]))]
            q = tuple(sorted(merged))
            covers.append((p, q))
    have = set(parts)
    return Poset(parts, [(p, q) for p, q in covers if q in have])


def partition_lattice(n: int) -> Poset:
    if n > 8:
        raise TooLarge("partition lattices are provided for n <= 8")
    return _partition_poset(set_partitions(n))


def noncrossing_lattice(n: int) -> Poset:
    if n > 8:
        raise TooLarge("noncrossing partition lattices are provided for n <= 8")
    return _partition_poset([p for p in set_partitions(n) if _is_noncrossing(p)])


def bruhat_order(n: int) -> Poset:
    """Strong Bruhat order on permutations of 1..n via the tableau criterion."""
    perms = list(permutations(range(1, n + 1)))

    def leq(u, v):
        return all(
            all(a <= b for a, b in zip(sorted(u[:k]), sorted(v[:k]))) for k in range(1, n)
        )

    return Poset.from_leq(perms, leq)


def product_poset(p: Poset, q: Poset) -> Poset:
    elems = list(product(p.elements, q.elements))
    covers = [((a, c), (b, c)) for a, b in p.cover_pairs() for c in q.elements]
    covers += [((a, c), (a, d)) for c, d in q.cover_pairs() for a in p.elements]
    return Poset(elems, covers)


def disjoint_sum(p: Poset, q: Poset) -> Poset:
    elems = [(0, a) for a in p.elements] + [(1, b) for b in q.elements]
    covers = [((0, a), (0, b)) for a, b in p.cover_pairs()] + [((1, a), (1, b)) for a, b in q.cover_pairs()]
    return Poset(elems, covers)


def adjoin_bounds(p: Poset, bottom="0^", top="1^") -> Poset:
    elems = [bottom, *p.elements, top]
    rel = list(p.cover_pairs()) + [(bottom, e) for e in p.elements] + [(e, top) for e in p.elements]
    if not p.elements:
        rel.append((bottom, top))
    return Poset(elems, rel)


def prism_face_lattice(k: int) -> Poset:
    """Face lattice of the prism over a k-gon, faces labelled by vertex sets."""
    verts = [(i, s) for s in (0, 1) for i in range(k)]
    edges = [frozenset({(i, s), ((i + 1) % k, s)}) for s in (0, 1) for i in range(k)]
    edges += [frozenset({(i, 0), (i, 1)}) for i in range(k)]
    facets = [frozenset((i, s) for i in range(k)) for s in (0, 1)]
    facets += [frozenset({(i, 0), ((i + 1) % k, 0), (i, 1), ((i + 1) % k, 1)}) for i in range(k)]
    faces = [frozenset()] + [frozenset({v}) for v in verts] + edges + facets + [frozenset(verts)]
    return Poset.from_leq(faces, lambda a, b: a < b)


def named_poset(spec: str) -> Poset:
    """``chain:4``, ``antichain:3``, ``boolean:3``, ``divisors:12``, ``partition:4``,
    ``noncrossing:4``, ``bruhat:3``, ``grid:2x3``, ``prism:6``."""
    name, _, args = spec.partition(":")
    try:
        nums = [int(t) for t in args.replace("x", ",").split(",") if t.strip()]
    except ValueError:
        raise BadSpec(f"bad parameters in {spec!r}") from None
    one = {
        "chain": chain,
        "antichain": antichain,
        "boolean": boolean_lattice,
        "divisors": divisor_lattice,
        "partition": partition_lattice,
        "noncrossing": noncrossing_lattice,
        "bruhat": bruhat_order,
        "prism": prism_face_lattice,
    }
    if name in one and len(nums) == 1:
        return one[name](nums[0])
    if name == "grid" and len(nums) == 2:
        return product_poset(chain(nums[0]), chain(nums[1]))
    raise BadSpec(f"unknown poset spec {spec!r}")


def parse_poset(text: str) -> Poset:
    """One ``u < v`` cover per line; a bare label declares an isolated element."""
    elems, rel = [], []
    seen = set()

    def note(x):
        if x not in seen:
            seen.add(x)
            elems.append(x)

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "<" in line:
            a, b = (t.strip() for t in line.split("<", 1))
            if not a or not b:
                raise BadSpec(f"bad cover line {raw!r}")
            note(a)
            note(b)
            rel.append((a, b))
        else:
            note(line)
    return Poset(elems, rel)


# --- incidence algebra --------------------------------------------------------


class IncidenceFunction:
    """A function on the intervals [x, y] of a poset, keyed by element indices."""

    __slots__ = ("poset", "values")

    def __init__(self, poset: Poset, values: dict):
        self.poset = poset
        self.values = values

    def __call__(self, a, b):
        i, j = self.poset.index[a], self.poset.index[b]
        if not self.poset.down[j] >> i & 1:
            raise ValueError(f"{a!r} is not below {b!r}")
        return self.values.get((i, j), 0)

    def __eq__(self, other):
        if not isinstance(other, IncidenceFunction) or other.poset is not self.poset:
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self.values.get(k, 0) == other.values.get(k, 0) for k in keys)

    def convolve(self, other: "IncidenceFunction") -> "IncidenceFunction":
        p = self.poset
        out = {}
        for j in range(len(p)):
            for i in _bits(p.down[j]):
                s = 0
                for z in _bits(p.interval_mask(i, j)):
                    s += self.values.get((i, z), 0) * other.values.get((z, j), 0)
                out[(i, j)] = s
        return IncidenceFunction(p, out)

    __mul__ = convolve


def zeta_function(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, {(i, j): 1 for j in range(len(p)) for i in _bits(p.down[j])})


def delta_function(p: Poset) -> IncidenceFunction:
    return IncidenceFunction(p, {(i, j): int(i == j) for j in range(len(p)) for i in _bits(p.down[j])})


def mobius(p: Poset) -> IncidenceFunction:
    """mu(x, x) = 1 and sum over x <= z <= y of mu(x, z) = 0 for x < y."""
    mu = {}
    n = len(p)
    for i in range(n):
        mu[(i, i)] = 1
        for j in _bits(p.up[i] & ~(1 << i)):
            s = 0
            for z in _bits(p.interval_mask(i, j) & ~(1 << j)):
                s += mu[(i, z)]
            mu[(i, j)] = -s
    return IncidenceFunction(p, mu)


def mobius_value(p: Poset, a=None, b=None) -> int:
    """mu(a, b), defaulting to mu(0^, 1^); computes only the needed row."""
    a = p.bottom() if a is None else a
    b = p.top() if b is None else b
    if a is None or b is None:
        raise ValueError("poset needs a minimum and a maximum")
    i, j = p.index[a], p.index[b]
    row = {i: 1}
    for y in _bits(p.interval_mask(i, j) & ~(1 << i)):
        row[y] = -sum(row[z] for z in _bits(p.interval_mask(i, y) & ~(1 << y)))
    return row[j]


def mobius_row(p: Poset, a) -> dict:
    """{x: mu(a, x)} for every x >= a."""
    i = p.index[a]
    row = {i: 1}
    for y in _bits(p.up[i] & ~(1 << i)):
        row[y] = -sum(row[z] for z in _bits(p.interval_mask(i, y) & ~(1 << y)))
    return {p.elements[k]: v for k, v in row.items()}


def hall_mobius(p: Poset) -> int:
    """mu(0^, 1^) as c_0 - c_1 + c_2 - ..., c_i = chains 0^ = x_0 < ... < x_i = 1^."""
    lo, hi = p.index[p.bottom()], p.index[p.top()]
    if lo == hi:
        return 1
    # ways[y][len]: chains from 0^ to y with len steps
    ways = {lo: {0: 1}}
    for y in _bits(p.interval_mask(lo, hi) & ~(1 << lo)):
        acc: dict = {}
        for z in _bits(p.interval_mask(lo, y) & ~(1 << y)):
            for steps, c in ways.get(z, {}).items():
                acc[steps + 1] = acc.get(steps + 1, 0) + c
        ways[y] = acc
    return sum((-1) ** steps * c for steps, c in ways[hi].items())


def zeta_transform(p: Poset, f: dict, direction: str = "up") -> dict:
    """g(x) = sum of f(y) over y >= x (``up``) or y <= x (``down``)."""
    out = {}
    for i, x in enumerate(p.elements):
        mask = p.up[i] if direction == "up" else p.down[i]
        out[x] = sum(f[p.elements[j]] for j in _bits(mask))
    return out


def mobius_inversion(p: Poset, g: dict, direction: str = "up", mu: IncidenceFunction | None = None) -> dict:
    """Recover f from its cumulative sums g.

    ``up``: g(x) = sum_{y >= x} f(y), so f(x) = sum_{y >= x} mu(x, y) g(y).
    ``down``: g(x) = sum_{y <= x} f(y), so f(x) = sum_{y <= x} mu(y, x) g(y).
    The result is checked by summing it back up.
    """
    if direction not in ("up", "down"):
        raise ValueError("direction is 'up' or 'down'")
    mu = mu or mobius(p)
    f = {}
    for i, x in enumerate(p.elements):
        if direction == "up":
            f[x] = sum(mu.values[(i, j)] * g[p.elements[j]] for j in _bits(p.up[i]))
        else:
            f[x] = sum(mu.values[(j, i)] * g[p.elements[j]] for j in _bits(p.down[i]))
    back = zeta_transform(p, f, direction)
    if any(back[x] != g[x] for x in p.elements):
        raise ArithmeticError("Mobius inversion failed its round-trip check")
    return f


# --- chains, zeta and order polynomials ----------------------------------------


def chain_counts(p: Poset) -> list[int]:
    """counts[m] = number of chains with m elements (m >= 1)."""
    n = len(p)
    ending = [dict() for _ in range(n)]
    total: dict = {}
    for y in range(n):
        acc = {1: 1}
        for z in _bits(p.down[y] & ~(1 << y)):
            for m, c in ending[z].items():
                acc[m + 1] = acc.get(m + 1, 0) + c
        ending[y] = acc
        for m, c in acc.items():
            total[m] = total.get(m, 0) + c
    top = max(total, default=0)
    return [0] + [total.get(m, 0) for m in range(1, top + 1)]


def zeta_polynomial(p: Poset) -> Poly:
    """Z(k) = sum_{i >= 2} b_i C(k-2, i-2), b_i = chains with i-1 elements.

    Z(k) counts multichains t_0 <= ... <= t_{k-2}.
    """
    counts = chain_counts(p)
    z = Poly()
    for m in range(1, len(counts)):
        if counts[m]:
            z = z + Poly.binomial(-2, m - 1) * counts[m]
    return z


def multichain_count(p: Poset, length: int) -> int:
    """Multichains t_0 <= ... <= t_length, by direct dynamic programming."""
    n = len(p)
    ways = [1] * n
    for _ in range(length):
        ways = [sum(ways[z] for z in _bits(p.down[y])) for y in range(n)]
    return sum(ways) if n else 0


def _check_width(p: Poset, max_bits: int) -> None:
    if len(p) > max_bits:
        raise TooLarge(f"{len(p)} elements exceed the bitmask cap of {max_bits}")


def order_ideals(p: Poset, max_bits: int = DEFAULT_MAX_BITS, limit: int = 1 << 20) -> list[int]:
    """All order ideals as bitmasks, in nondecreasing size."""
    _check_width(p, max_bits)
    n = len(p)
    seen = {0}
    frontier = [0]
    out = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for x in range(n):
                if not mask >> x & 1 and (p.down[x] & ~(1 << x)) & ~mask == 0:
                    m2 = mask | 1 << x
                    if m2 not in seen:
                        seen.add(m2)
                        nxt.append(m2)
                        if len(seen) > limit:
                            raise TooLarge(f"more than {limit} order ideals")
        nxt.sort()
        out.extend(nxt)
        frontier = nxt
    return out


def ideal_lattice(p: Poset, max_bits: int = DEFAULT_MAX_BITS) -> Poset:
    """J(P): order ideals (as frozensets of labels) ordered by inclusion."""
    ideals = order_ideals(p, max_bits)
    have = set(ideals)
    label = {m: frozenset(p.elements[i] for i in _bits(m)) for m in ideals}
    covers = []
    for m in ideals:
        for x in range(len(p)):
            if not m >> x & 1:
                m2 = m | 1 << x
                if m2 in have:
                    covers.append((label[m], label[m2]))
    return Poset([label[m] for m in ideals], covers)


def join_irreducibles(lattice: Poset) -> Poset:
    """Elements covering exactly one element, with the induced order."""
    below = {}
    for x, y in lattice.covers:
        below[y] = below.get(y, 0) + 1
    keep = [lattice.elements[i] for i in range(len(lattice)) if below.get(i, 0) == 1]
    return lattice.subposet(keep)


def order_polynomial(p: Poset, max_bits: int = DEFAULT_MAX_BITS) -> Poly:
    """Omega_P(k): order-preserving maps P -> [k], as Z_{J(P)}(k)."""
    return zeta_polynomial(ideal_lattice(p, max_bits))


def linear_extensions(p: Poset, max_bits: int = DEFAULT_MAX_BITS) -> int:
    """e(P) by dynamic programming over order ideals."""
    _check_width(p, max_bits)
    n = len(p)
    ways = {0: 1}
    for mask in order_ideals(p, max_bits):
        c = ways.get(mask, 0)
        if not c:
            continue
        for x in range(n):
            if not mask >> x & 1 and (p.down[x] & ~(1 << x)) & ~mask == 0:
                m2 = mask | 1 << x
                ways[m2] = ways.get(m2, 0) + c
    return ways.get((1 << n) - 1, 0)


def isomorphic(p: Poset, q: Poset) -> bool:
    """Brute-force isomorphism test with degree-profile pruning (small posets only)."""
    if len(p) != len(q) or len(p.covers) != len(q.covers):
        return False
    n = len(p)

    def profile(r: Poset, i: int):
        return (r.down[i].bit_count(), r.up[i].bit_count())

    pp = [profile(p, i) for i in range(n)]
    qp = [profile(q, i) for i in range(n)]
    if sorted(pp) != sorted(qp):
        return False
    assign = [-1] * n
    used = [False] * n

    def go(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or qp[j] != pp[i]:
                continue
            ok = True
            for k in range(i):
                if (p.down[i] >> k & 1) != (q.down[j] >> assign[k] & 1) or (p.up[i] >> k & 1) != (
                    q.up[j] >> assign[k] & 1
                ):
                    ok = False
                    break
            if ok:
                assign[i], used[j] = j, True
                if go(i + 1):
                    return True
                used[j] = False
        assign[i] = -1
        return False

    return go(0)


# --- lattices ---------------------------------------------------------------


@dataclass
class LatticeReport:
    is_lattice: bool
    is_distributive: bool
    meets: dict | None
    joins: dict | None


def _extremum(p: Poset, mask: int, want_top: bool) -> int | None:
    for z in _bits(mask):
        rel = p.down[z] if want_top else p.up[z]
        if mask & ~rel == 0:
            return z
    return None


def lattice_ops(p: Poset) -> LatticeReport:
    n = len(p)
    meets, joins = {}, {}
    for i in range(n):
        for j in range(i, n):
            m = _extremum(p, p.down[i] & p.down[j], True)
            jn = _extremum(p, p.up[i] & p.up[j], False)
            if m is None or jn is None:
                return LatticeReport(False, False, None, None)
            meets[(i, j)] = meets[(j, i)] = m
            joins[(i, j)] = joins[(j, i)] = jn
    distributive = all(
        joins[(x, meets[(y, z)])] == meets[(joins[(x, y)], joins[(x, z)])]
        for x in range(n)
        for y in range(n)
        for z in range(y, n)
    )
    lab = p.elements
    return LatticeReport(
        True,
        distributive,
        {(lab[a], lab[b]): lab[c] for (a, b), c in meets.items()},
        {(lab[a], lab[b]): lab[c] for (a, b), c in joins.items()},
    )


# --- flag vectors, ab-index, cd-index ---------------------------------------------


def _graded_ranks(p: Poset) -> tuple[list[int], int]:
    if not p.is_bounded():
        raise NotGraded("flag vectors need a minimum and a maximum")
    rf = p.rank_function()
    if rf is None:
        raise NotGraded("poset is not graded")
    ranks = [rf[e] for e in p.elements]
    return ranks, ranks[p.index[p.top()]]


def flag_f_vector(p: Poset) -> dict[frozenset, int]:
    """f_S = number of chains meeting exactly the ranks in S, for S within 1..r-1."""
    ranks, r = _graded_ranks(p)
    by_rank = [[i for i in range(len(p)) if ranks[i] == k] for k in range(r + 1)]
    out = {}
    for k in range(r):
        for s in combinations(range(1, r), k):
            ways = {i: 1 for i in by_rank[s[0]]} if s else {}
            for a, b in zip(s, s[1:]):
                ways = {j: sum(c for i, c in ways.items() if p.down[j] >> i & 1) for j in by_rank[b]}
            out[frozenset(s)] = sum(ways.values()) if s else 1
    return out


def flag_h_vector(f: dict[frozenset, int]) -> dict[frozenset, int]:
    """h_S = sum over T within S of (-1)^{|S - T|} f_T."""
    h = {}
    for s in f:
        items = sorted(s)
        total = 0
        for k in range(len(items) + 1):
            for t in combinations(items, k):
                total += (-1) ** (len(items) - k) * f[frozenset(t)]
        h[s] = total
    return h


def ab_index(h: dict[frozenset, int], rank: int) -> dict[str, int]:
    """Sum of h_S u_S with u_i = b if i is in S, else a (positions 1..rank-1)."""
    out = {}
    for s, c in h.items():
        if c:
            w = "".join("b" if i in s else "a" for i in range(1, rank))
            out[w] = c
    return out


def _cd_words(degree: int) -> list[str]:
    if degree == 0:
        return [""]
    if degree == 1:
        return ["c"]
    return ["c" + w for w in _cd_words(degree - 1)] + ["d" + w for w in _cd_words(degree - 2)]


def cd_to_ab(cd: dict[str, int]) -> dict[str, int]:
    """Expand c = a + b and d = ab + ba."""
    out: dict[str, int] = {}
    for word, coeff in cd.items():
        terms = {"": coeff}
        for ch in word:
            parts = ("a", "b") if ch == "c" else ("ab", "ba")
            terms = {w + p: c for w, c in terms.items() for p in parts}
        for w, c in terms.items():
            out[w] = out.get(w, 0) + c
    return {w: c for w, c in out.items() if c}


def ab_to_cd(ab: dict[str, int], degree: int | None = None) -> dict[str, int] | None:
    """Write an ab-polynomial in c and d by matching coefficients.

    Returns None if it is not in the span of cd-words or the coefficients
    are not integers.
    """
    if degree is None:
        degree = len(next(iter(ab))) if ab else 0
    words = _cd_words(degree)
    ab_words = ["".join(t) for t in product("ab", repeat=degree)]
    col = [cd_to_ab({w: 1}) for w in words]
    rows = [[c.get(aw, 0) for c in col] + [ab.get(aw, 0)] for aw in ab_words]
    red, pivots = rref(rows, len(words) + 1)
    if len(words) in pivots:
        return None
    sol = {}
    for row, pc in zip(red, pivots):
        v = row[-1]
        if v.denominator != 1:
            return None
        if v:
            sol[words[pc]] = int(v)
    return sol


def is_eulerian(p: Poset) -> bool:
    ranks, _ = _graded_ranks(p)
    mu = mobius(p)
    return all(v == (-1) ** (ranks[j] - ranks[i]) for (i, j), v in mu.values.items())


def word_str(word: str) -> str:
    out, k = [], 0
    while k < len(word):
        j = k
        while j < len(word) and word[j] == word[k]:
            j += 1
        out.append(word[k] + (f"^{j - k}" if j - k > 1 else ""))
        k = j
    return "".join(out)


def noncomm_str(poly: dict[str, int]) -> str:
    """Readable form such as ``c^3 + 6cd + 10dc``."""
    if not poly:
        return "0"
    parts = []
    for w in sorted(poly, key=lambda w: (-(w.count("c") + 2 * w.count("d") + w.count("a") + w.count("b")), w)):
        c = poly[w]
        body = word_str(w) or "1"
        mag = abs(c)
        txt = body if mag == 1 and w else f"{mag}{body}" if w else str(mag)
        parts.append(("-" if c < 0 else "+", txt))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, txt in parts[1:]:
        s += f" {sign} {txt}"
    return s


@dataclass
class FlagReport:
    rank: int
    flag_f: dict
    flag_h: dict
    ab: dict
    cd: dict | None
    eulerian: bool


def flag_and_cd(p: Poset, require_eulerian: bool = True) -> FlagReport:
    f = flag_f_vector(p)
    ranks, r = _graded_ranks(p)
    h = flag_h_vector(f)
    ab = ab_index(h, r)
    eul = is_eulerian(p)
    if not eul:
        if require_eulerian:
            raise NotEulerianPoset("some interval has mu different from (-1)^(rank difference)")
        return FlagReport(r, f, h, ab, None, False)
    cd = ab_to_cd(ab, r - 1)
    if cd is None:
        raise ArithmeticError("Eulerian poset whose ab-index has no integral cd form")
    return FlagReport(r, f, h, ab, cd, True)


def cd_from_flag_f(f_values: Sequence[int], rank: int) -> dict[str, int] | None:
    """cd-index from raw flag f data listed in the order of subsets of 1..rank-1
    by size, then lexicographically (empty set first)."""
    subsets = [frozenset(s) for k in range(rank) for s in combinations(range(1, rank), k)]
    if len(f_values) != len(subsets):
        raise ValueError(f"expected {len(subsets)} flag numbers for rank {rank}")
    h = flag_h_vector(dict(zip(subsets, f_values)))
    return ab_to_cd(ab_index(h, rank), rank - 1)


__all__ = [
    "Poset",
    "IncidenceFunction",
    "chain",
    "antichain",
    "boolean_lattice",
    "divisor_lattice",
    "partition_lattice",
    "noncrossing_lattice",
    "bruhat_order",
    "product_poset",
    "disjoint_sum",
    "adjoin_bounds",
    "prism_face_lattice",
    "named_poset",
    "parse_poset",
    "zeta_function",
    "delta_function",
    "mobius",
    "mobius_value",
    "mobius_row",
    "hall_mobius",
    "zeta_transform",
    "mobius_inversion",
    "chain_counts",
    "zeta_polynomial",
    "multichain_count",
    "order_ideals",
    "ideal_lattice",
    "join_irreducibles",
    "order_polynomial",
    "linear_extensions",
    "isomorphic",
    "LatticeReport",
    "lattice_ops",
    "flag_f_vector",
    "flag_h_vector",
    "ab_index",
    "cd_to_ab",
    "ab_to_cd",
    "is_eulerian",
    "noncomm_str",
    "FlagReport",
    "flag_and_cd",
    "cd_from_flag_f",
]
