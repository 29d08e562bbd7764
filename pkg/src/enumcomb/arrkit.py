"""Hyperplane arrangements with integer data.

A hyperplane is a pair (normal, offset) meaning normal . x = offset. The
characteristic polynomial has three independent backends:

* ``finite_field``  count complement points of F_q^d at several large primes
                    and interpolate;
* ``intersection_poset``  sum mu(0^, F) q^dim F over the flats;
* ``whitney``       sum (-1)^|B| q^(d - rank B) over central subsets B.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, isqrt
from typing import Sequence

import numpy as np

from .errors import BadSpec, LoopPresent, NotCentral, NotPrime, PrimeInstability, ScanTooLarge
from .graphcount import Graph, build_named_graph
from .linalg import bareiss_det_int, hadamard_bound, rank
from .poly import Poly
from .posetkit import Poset, ab_index, flag_f_vector, flag_h_vector, mobius_row

log = logging.getLogger(__name__)

SCAN_CAP = 10 ** 8


def _normalize(normal: tuple[int, ...], offset: int) -> tuple[tuple[int, ...], int]:
    g = 0
    for v in (*normal, offset):
        g = gcd(g, v)
    normal = tuple(v // g for v in normal)
    offset //= g
    lead = next(v for v in normal if v)
    if lead < 0:
        normal = tuple(-v for v in normal)
        offset = -offset
    return normal, offset


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[tuple[tuple[int, ...], int], ...]

    def __post_init__(self):
        seen = set()
        out = []
        for normal, offset in self.hyperplanes:
            normal = tuple(int(v) for v in normal)
            if len(normal) != self.dim:
                raise ValueError(f"normal {normal} does not have length {self.dim}")
            if not any(normal):
                raise ValueError("zero normal vector")
            key = _normalize(normal, int(offset))
            if key in seen:
                raise ValueError(f"duplicate hyperplane {normal} . x = {offset}")
            seen.add(key)
            out.append((normal, int(offset)))
        object.__setattr__(self, "hyperplanes", tuple(out))

    def __len__(self):
        return len(self.hyperplanes)

    @property
    def normals(self) -> list[tuple[int, ...]]:
        return [n for n, _ in self.hyperplanes]

    @property
    def offsets(self) -> list[int]:
        return [b for _, b in self.hyperplanes]

    @property
    def rank(self) -> int:
        return rank(self.normals) if self.hyperplanes else 0

    def is_central(self) -> bool:
        if not self.hyperplanes:
            return True
        return rank([(*n, b) for n, b in self.hyperplanes]) == self.rank

    def delete(self, i: int) -> "Arrangement":
        return Arrangement(self.dim, self.hyperplanes[:i] + self.hyperplanes[i + 1:])

    def cone(self) -> "Arrangement":
        hs = [((*n, -b), 0) for n, b in self.hyperplanes]
        hs.append(((0,) * self.dim + (1,), 0))
        return Arrangement(self.dim + 1, tuple(hs))

    def to_text(self) -> str:
        lines = [str(self.dim)]
        lines += [" ".join(str(v) for v in (*n, b)) for n, b in self.hyperplanes]
        return "\n".join(lines) + "\n"


def parse_arrangement(text: str) -> Arrangement:
    """First line ``d``, then one hyperplane per line ``a_1 ... a_d b``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise BadSpec("empty arrangement file")
    try:
        d = int(lines[0])
        rows = [[int(t) for t in ln.split()] for ln in lines[1:]]
    except ValueError:
        raise BadSpec("arrangement files hold integers only") from None
    for r in rows:
        if len(r) != d + 1:
            raise BadSpec(f"expected {d + 1} integers per hyperplane, got {len(r)}")
    return Arrangement(d, tuple((tuple(r[:d]), r[d]) for r in rows))


# --- named families -------------------------------------------------------------


def _diff(n: int, i: int, j: int, si: int = 1, sj: int = -1) -> tuple[int, ...]:
    v = [0] * n
    v[i] += si
    v[j] += sj
    return tuple(v)


def _pairs_family(n: int, offsets: Sequence[int], plus: bool = False) -> Arrangement:
    sj = 1 if plus else -1
    hs = [(_diff(n, i, j, 1, sj), b) for i, j in combinations(range(n), 2) for b in offsets]
    return Arrangement(n, tuple(hs))


def coordinate(n: int) -> Arrangement:
    return Arrangement(n, tuple((tuple(int(k == i) for k in range(n)), 0) for i in range(n)))


def braid(n: int) -> Arrangement:
    return _pairs_family(n, (0,))


def shi(n: int) -> Arrangement:
    return _pairs_family(n, (0, 1))


def catalan(n: int) -> Arrangement:
    return _pairs_family(n, (-1, 0, 1))


def linial(n: int) -> Arrangement:
    return _pairs_family(n, (1,))


def threshold(n: int) -> Arrangement:
    return _pairs_family(n, (0,), plus=True)


def ish(n: int) -> Arrangement:
    """x_i = x_j for all i < j, and x_1 - x_j = k for 1 <= k <= j - 1."""
    hs = list(braid(n).hyperplanes)
    for j in range(1, n):
        hs += [(_diff(n, 0, j), k) for k in range(1, j + 1)]
    return Arrangement(n, tuple(hs))


def type_d(n: int) -> Arrangement:
    hs = [(_diff(n, i, j, 1, s), 0) for i, j in combinations(range(n), 2) for s in (-1, 1)]
    return Arrangement(n, tuple(hs))


def type_bc(n: int) -> Arrangement:
    return Arrangement(n, type_d(n).hyperplanes + coordinate(n).hyperplanes)


def tuvw() -> Arrangement:
    """Normals (1,-1,0), (0,1,-1), (-1,0,1), (1,1,1) through the origin."""
    return Arrangement(3, (((1, -1, 0), 0), ((0, 1, -1), 0), ((-1, 0, 1), 0), ((1, 1, 1), 0)))


def graphical(g: Graph) -> Arrangement:
    if g.has_loops():
        raise LoopPresent("a loop gives the zero normal vector")
    n = g.n
    seen, hs = set(), []
    for u, v in g.edges:
        i, j = sorted((g.index(u), g.index(v)))
        if (i, j) not in seen:
            seen.add((i, j))
            hs.append((_diff(n, i, j), 0))
    return Arrangement(n, tuple(hs))


def _is_generic(a: Arrangement) -> bool:
    d = a.dim
    aug = [(*nv, b) for nv, b in a.hyperplanes]
    k = min(d, len(a))
    if any(rank([a.normals[i] for i in s]) < k for s in combinations(range(len(a)), k)):
        return False
    return all(bareiss_det_int([list(aug[i]) for i in s]) != 0 for s in combinations(range(len(a)), d + 1))


def generic(n: int, r: int, seed: int = 0) -> Arrangement:
    """n hyperplanes in general position in dimension r.

    Normals lie on the moment curve (1, t, ..., t^(r-1)), t = 1..n, so any
    r of them are independent. Offsets are drawn from ``random.Random(seed)``
    in [-2n, 2n] and redrawn until no r+1 hyperplanes share a point.
    """
    rng = random.Random(seed)
    normals = [tuple(t ** k for k in range(r)) for t in range(1, n + 1)]
    for _ in range(1000):
        offs = [rng.randint(-2 * n, 2 * n) for _ in range(n)]
        a = Arrangement(r, tuple(zip(normals, offs)))
        if _is_generic(a):
            return a
    raise RuntimeError("no generic offsets found")


_FAMILIES = {
    "coordinate": coordinate,
    "braid": braid,
    "shi": shi,
    "catalan": catalan,
    "linial": linial,
    "threshold": threshold,
    "ish": ish,
    "d": type_d,
    "bc": type_bc,
}


def build_named_arrangement(spec: str) -> Arrangement:
    """``braid:3``, ``shi:3``, ``bc:2``, ``generic:5,3``, ``graphical:complete:4``,
    ``cone:shi:3``, ``tuvw``."""
    name, _, rest = spec.strip().partition(":")
    name = name.lower()
    if name == "tuvw":
        return tuvw()
    if name == "cone":
        return build_named_arrangement(rest).cone()
    if name == "graphical":
        return graphical(build_named_graph(rest))
    try:
        nums = [int(t) for t in rest.split(",") if t.strip()]
    except ValueError:
        raise BadSpec(f"bad parameters in {spec!r}") from None
    if name == "generic" and len(nums) in (2, 3):
        return generic(*nums)
    if name in _FAMILIES and len(nums) == 1 and nums[0] >= 1:
        return _FAMILIES[name](nums[0])
    raise BadSpec(f"unknown arrangement spec {spec!r}")


# --- finite field counting ---------------------------------------------------------


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, isqrt(q) + 1):
        if q % p == 0:
            return False
    return True


def next_prime(n: int) -> int:
    n = max(n, 2)
    while not is_prime(n):
        n += 1
    return n


def _column_reduce(normals: Sequence[Sequence[int]], d: int) -> list[list[int]]:
    """Integer column operations taking the normals to [N' | 0], N' with rank(N) columns.

    The operations are unimodular, so point counts over any F_q are unchanged
    up to the factor q^(d - rank) from the dropped coordinates.
    """
    a = [list(r) for r in normals]
    k = 0
    for row in range(len(a)):
        if k == d:
            break
        while True:
            nz = [c for c in range(k, d) if a[row][c] != 0]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda c: abs(a[row][c]))
            for c in nz:
                if c != piv:
                    f = a[row][c] // a[row][piv]
                    for r in a:
                        r[c] -= f * r[piv]
        nz = [c for c in range(k, d) if a[row][c] != 0]
        if not nz:
            continue
        c = nz[0]
        if c != k:
            for r in a:
                r[c], r[k] = r[k], r[c]
        k += 1
    return [r[:k] for r in a]


def _compressed(a: Arrangement) -> tuple[list[list[int]], list[int], int]:
    red = _column_reduce(a.normals, a.dim) if a.hyperplanes else []
    r = len(red[0]) if red else 0
    return red, a.offsets, r


def _check_prime(q: int) -> None:
    if not is_prime(q):
        raise NotPrime(f"{q} is not prime (prime powers are not supported)")


def _hit_histogram(a: Arrangement, q: int, cap: int = SCAN_CAP) -> list[int]:
    """hist[h] = number of points of F_q^d lying on exactly h hyperplanes."""
    _check_prime(q)
    m = len(a)
    red, offs, r = _compressed(a)
    if q ** r > cap:
        raise ScanTooLarge(f"{q}^{r} points exceed the scan cap {cap}")
    hist = np.zeros(m + 1, dtype=np.int64)
    if m == 0:
        hist[0] = 1
    else:
        n_mat = np.array(red, dtype=np.int64).reshape(m, r) % q
        b = np.array(offs, dtype=np.int64) % q
        total = q ** r
        chunk = max(1, 1 << 18)
        powers = q ** np.arange(r, dtype=np.int64)
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            pts = (idx[:, None] // powers[None, :]) % q
            vals = (pts @ n_mat.T - b[None, :]) % q
            hits = (vals == 0).sum(axis=1)
            hist += np.bincount(hits, minlength=m + 1)
    scale = q ** (a.dim - r)
    return [int(h) * scale for h in hist]


def complement_count(a: Arrangement, q: int, cap: int = SCAN_CAP) -> int:
    """Points of F_q^d on no hyperplane."""
    return _hit_histogram(a, q, cap)[0]


def coboundary_histogram(a: Arrangement, q: int, cap: int = SCAN_CAP) -> Poly:
    """Sum over p in F_q^d of t^h(p), h(p) = number of hyperplanes through p."""
    return Poly(_hit_histogram(a, q, cap))


def stable_prime_bound(a: Arrangement) -> int:
    """Primes above this cannot divide a nonzero minor of the compressed system."""
    red, offs, r = _compressed(a)
    rows = [(*row, b) for row, b in zip(red, offs)]
    return int(hadamard_bound(rows, r + 1)) + 1


def stable_primes(a: Arrangement, count: int, start: int | None = None) -> list[int]:
    p = next_prime(max(start or 0, stable_prime_bound(a) + 1, len(a) + 1))
    out = []
    while len(out) < count:
        out.append(p)
        p = next_prime(p + 1)
    return out


# --- characteristic polynomial ---------------------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    poly: Poly
    rank: int
    dim: int

    def __post_init__(self):
        p = self.poly
        if p.degree != self.dim or p.leading() != 1:
            raise ArithmeticError(f"characteristic polynomial {p} is not monic of degree {self.dim}")
        for k in range(self.dim + 1):
            c = p[self.dim - k]
            if c and (c > 0) != (k % 2 == 0):
                raise ArithmeticError(f"coefficients of {p} do not alternate in sign")

    def __call__(self, q):
        return self.poly(q)

    def __str__(self):
        return self.poly.to_string("q")

    def matroid_part(self) -> Poly:
        """chi divided by q^(dim - rank)."""
        return self.poly.exact_div(Poly.monomial(self.dim - self.rank))


def _char_finite_field(a: Arrangement, primes: Sequence[int] | None = None, checks: int = 2) -> Poly:
    red, _, r = _compressed(a)
    need = r + 1
    if primes is None:
        primes = stable_primes(a, need + checks)
    elif len(primes) < need + checks:
        raise ValueError(f"need {need + checks} primes, got {len(primes)}")
    bound = stable_prime_bound(a)
    if any(p <= bound for p in primes):
        log.info("some primes are below the stability bound %d; relying on the agreement check", bound)
    scale = a.dim - r
    vals = [Fraction(complement_count(a, p), p ** scale) for p in primes]
    core = Poly.interpolate(primes[:need], vals[:need])
    for p, v in zip(primes[need:], vals[need:]):
        if core(p) != v:
            raise PrimeInstability(f"interpolated count disagrees at q = {p}")
    if core.degree != r or not core.is_integral():
        raise PrimeInstability("finite-field interpolation gave a non-integral or wrong-degree polynomial")
    return core * Poly.monomial(scale)


class _Echelon:
    """Incrementally maintained reduced rows of an augmented system [n | b]."""

    __slots__ = ("rows", "d")

    def __init__(self, d: int, rows=None):
        self.d = d
        self.rows = dict(rows or {})

    def reduce(self, row) -> list[Fraction]:
        v = [Fraction(x) for x in row]
        for c, r in self.rows.items():
            if v[c]:
                f = v[c]
                v = [x - f * y for x, y in zip(v, r)]
        return v

    def add(self, row) -> tuple[str, "_Echelon | None"]:
        """('dependent', self), ('inconsistent', None) or ('new', bigger echelon)."""
        v = self.reduce(row)
        piv = next((c for c in range(self.d + 1) if v[c]), None)
        if piv is None:
            return "dependent", self
        if piv == self.d:
            return "inconsistent", None
        v = [x / v[piv] for x in v]
        rows = {}
        for c, r in self.rows.items():
            rows[c] = [x - r[piv] * y for x, y in zip(r, v)] if r[piv] else r
        rows[piv] = v
        return "new", _Echelon(self.d, rows)

    @property
    def rank(self) -> int:
        return len(self.rows)


def _char_whitney(a: Arrangement) -> Poly:
    d, m = a.dim, len(a)
    coeff = [0] * (d + 1)
    rows = [(*n, b) for n, b in a.hyperplanes]

    def go(start: int, ech: _Echelon, size: int):
        coeff[d - ech.rank] += -1 if size % 2 else 1
        for i in range(start, m):
            status, nxt = ech.add(rows[i])
            if status != "inconsistent":
                go(i + 1, nxt, size + 1)

    go(0, _Echelon(d), 0)
    return Poly(coeff)


@dataclass(frozen=True)
class FlatData:
    poset: Poset
    dims: dict
    bottom: frozenset


def intersection_data(a: Arrangement) -> FlatData:
    """Flats labelled by the set of hyperplane indices containing them.

    This set is a canonical name for the flat; two subsets of hyperplanes meet
    in the same flat exactly when their closures agree.
    """
    d, m = a.dim, len(a)
    rows = [(*n, b) for n, b in a.hyperplanes]
    bottom = frozenset()
    echelons = {bottom: _Echelon(d)}
    dims = {bottom: d}
    covers = []
    layer = [bottom]
    while layer:
        nxt_layer = []
        for flat in layer:
            ech = echelons[flat]
            for i in range(m):
                if i in flat:
                    continue
                status, bigger = ech.add(rows[i])
                if status != "new":
                    continue
                closed = frozenset(j for j in range(m) if not any(bigger.reduce(rows[j])))
                if closed not in echelons:
                    echelons[closed] = bigger
                    dims[closed] = d - bigger.rank
                    nxt_layer.append(closed)
                covers.append((flat, closed))
        layer = nxt_layer
    flats = sorted(echelons, key=lambda f: (len(f), sorted(f)))
    return FlatData(Poset(flats, covers), dims, bottom)


def intersection_poset(a: Arrangement) -> Poset:
    return intersection_data(a).poset


def _char_poset(a: Arrangement) -> Poly:
    data = intersection_data(a)
    coeff = [0] * (a.dim + 1)
    for flat, mu in mobius_row(data.poset, data.bottom).items():
        coeff[data.dims[flat]] += mu
    return Poly(coeff)


BACKENDS = ("finite_field", "intersection_poset", "whitney")


def char_poly(a: Arrangement, backend: str = "intersection_poset", primes: Sequence[int] | None = None) -> CharPoly:
    if backend == "finite_field":
        p = _char_finite_field(a, primes)
    elif backend == "intersection_poset":
        p = _char_poset(a)
    elif backend == "whitney":
        p = _char_whitney(a)
    else:
        raise ValueError(f"unknown backend {backend!r}; choose from {BACKENDS}")
    return CharPoly(p, a.rank, a.dim)


def char_poly_all(a: Arrangement) -> CharPoly:
    """Run every backend and insist they agree."""
    results = {b: char_poly(a, b).poly for b in BACKENDS}
    first = results["intersection_poset"]
    for b, p in results.items():
        if p != first:
            raise ArithmeticError(f"backend {b} gave {p}, intersection poset gave {first}")
    return CharPoly(first, a.rank, a.dim)


def restriction_char_poly(a: Arrangement, i: int) -> Poly:
    """chi of the arrangement induced on hyperplane i, read off the interval above it."""
    data = intersection_data(a)
    h = next(f for f in data.poset.elements if f == frozenset({i}))
    coeff = [0] * a.dim
    for flat, mu in mobius_row(data.poset, h).items():
        coeff[data.dims[flat]] += mu
    return Poly(coeff)


@dataclass(frozen=True)
class RegionCount:
    regions: int
    bounded: int


def regions(a: Arrangement, chi: CharPoly | None = None) -> RegionCount:
    """Zaslavsky: (-1)^d chi(-1) regions, (-1)^r chi(1) relatively bounded ones."""
    chi = chi or char_poly(a)
    reg = (-1) ** a.dim * chi.poly(-1)
    bdd = (-1) ** a.rank * chi.poly(1)
    return RegionCount(int(reg), int(bdd))


def chromatic_polynomial(g: Graph) -> CharPoly:
    return char_poly(graphical(g))


def acyclic_orientation_count(g: Graph) -> int:
    return int(abs(chromatic_polynomial(g).poly(-1)))


# --- cd-index of the zonotope -----------------------------------------------------


def omega(ab: dict[str, int]) -> dict[str, int]:
    """Replace each ab pair (read left to right) by 2d and every other letter by c."""
    out: dict[str, int] = {}
    for word, coeff in ab.items():
        res, k, mult = [], 0, 1
        while k < len(word):
            if word[k:k + 2] == "ab":
                res.append("d")
                mult *= 2
                k += 2
            else:
                res.append("c")
                k += 1
        w = "".join(res)
        out[w] = out.get(w, 0) + coeff * mult
    return {w: c for w, c in out.items() if c}


def arrangement_cd_index(a: Arrangement) -> dict[str, int]:
    """cd-index of the zonotope dual to a central arrangement."""
    if not a.is_central():
        raise NotCentral("the zonotope cd-index needs a central arrangement")
    lat = intersection_poset(a)
    r = a.rank
    h = flag_h_vector(flag_f_vector(lat))
    ab = ab_index(h, r)
    return omega({"a" + w: c for w, c in ab.items()})


__all__ = [
    "Arrangement",
    "parse_arrangement",
    "coordinate",
    "braid",
    "shi",
    "catalan",
    "linial",
    "threshold",
    "ish",
    "type_d",
    "type_bc",
    "tuvw",
    "graphical",
    "generic",
    "build_named_arrangement",
    "is_prime",
    "next_prime",
    "complement_count",
    "coboundary_histogram",
    "stable_prime_bound",
    "stable_primes",
    "CharPoly",
    "char_poly",
    "char_poly_all",
    "BACKENDS",
    "FlatData",
    "intersection_data",
    "intersection_poset",
    "restriction_char_poly",
    "RegionCount",
    "regions",
    "chromatic_polynomial",
    "acyclic_orientation_count",
    "omega",
    "arrangement_cd_index",
]
