"""Lattice points in dilations of integer polytopes A x <= b, C x = e.

Counting is an exhaustive scan of the integer points of the affine hull
{C x = n e} inside a bounding box found by linear programming. Everything
else (Ehrhart and interior polynomials, h*, Pick) is exact arithmetic on
those counts.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, floor, ceil
from typing import Sequence

import numpy as np
from scipy.optimize import linprog

from .errors import BadSpec, NonIntegralHStar, NotTwoDimensional, ScanTooLarge, Unbounded
from .poly import Poly
from .posetkit import Poset, linear_extensions, order_polynomial

DEFAULT_BUDGET = 10 ** 7


@dataclass(frozen=True)
class LatticePolytope:
    dim: int
    A: tuple[tuple[int, ...], ...]
    b: tuple[int, ...]
    C: tuple[tuple[int, ...], ...] = ()
    e: tuple[int, ...] = ()
    name: str = field(default="", compare=False)

    def __post_init__(self):
        A = tuple(tuple(int(v) for v in r) for r in self.A)
        C = tuple(tuple(int(v) for v in r) for r in self.C)
        for r in (*A, *C):
            if len(r) != self.dim:
                raise BadSpec(f"row {r} does not have length {self.dim}")
        if len(A) != len(self.b) or len(C) != len(self.e):
            raise BadSpec("right-hand sides do not match the number of rows")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "b", tuple(int(v) for v in self.b))
        object.__setattr__(self, "e", tuple(int(v) for v in self.e))

    def to_json(self) -> dict:
        return {"A": [list(r) for r in self.A], "b": list(self.b), "C": [list(r) for r in self.C], "e": list(self.e)}

    @classmethod
    def from_json(cls, data: dict) -> "LatticePolytope":
        A = data.get("A", [])
        C = data.get("C", [])
        rows = A or C
        if not rows:
            raise BadSpec("a polytope needs at least one row")
        return cls(len(rows[0]), tuple(map(tuple, A)), tuple(data.get("b", [])), tuple(map(tuple, C)), tuple(data.get("e", [])))

    def contains(self, x: Sequence[int], n: int = 1, strict: bool = False) -> bool:
        if any(sum(c * v for c, v in zip(r, x)) != n * ev for r, ev in zip(self.C, self.e)):
            return False
        if strict:
            return all(sum(a * v for a, v in zip(r, x)) < n * bv for r, bv in zip(self.A, self.b))
        return all(sum(a * v for a, v in zip(r, x)) <= n * bv for r, bv in zip(self.A, self.b))


def parse_polytope(text: str) -> LatticePolytope:
    return LatticePolytope.from_json(json.loads(text))


# --- families -------------------------------------------------------------------


def _unit(d: int, i: int, s: int = 1) -> tuple[int, ...]:
    return tuple(s if k == i else 0 for k in range(d))


def simplex(k: int) -> LatticePolytope:
    """The standard simplex conv(e_1..e_{k+1}) in R^(k+1)."""
    d = k + 1
    return LatticePolytope(d, tuple(_unit(d, i, -1) for i in range(d)), (0,) * d, ((1,) * d,), (1,), f"simplex {k}")


def unit_cube(d: int) -> LatticePolytope:
    A = tuple(_unit(d, i, s) for i in range(d) for s in (1, -1))
    b = tuple(1 if s == 1 else 0 for _ in range(d) for s in (1, -1))
    return LatticePolytope(d, A, b, name=f"cube {d}")


def crosspolytope(d: int) -> LatticePolytope:
    signs = [tuple(1 - 2 * ((m >> i) & 1) for i in range(d)) for m in range(2 ** d)]
    return LatticePolytope(d, tuple(signs), (1,) * len(signs), name=f"crosspolytope {d}")


def hypersimplex(r: int, d: int) -> LatticePolytope:
    A = tuple(_unit(d, i, s) for i in range(d) for s in (1, -1))
    b = tuple(1 if s == 1 else 0 for _ in range(d) for s in (1, -1))
    return LatticePolytope(d, A, b, ((1,) * d,), (r,), f"hypersimplex {r},{d}")


def order_polytope(p: Poset) -> LatticePolytope:
    """0 <= x <= 1 and x_i <= x_j whenever i < j (covers suffice)."""
    d = len(p)
    rows, rhs = [], []
    for i in range(d):
        rows += [_unit(d, i, -1), _unit(d, i, 1)]
        rhs += [0, 1]
    for i, j in p.covers:
        v = [0] * d
        v[i], v[j] = 1, -1
        rows.append(tuple(v))
        rhs.append(0)
    return LatticePolytope(d, tuple(rows), tuple(rhs), name="order polytope")


def maximal_chains(p: Poset) -> list[list[int]]:
    ups: dict = {}
    for i, j in p.covers:
        ups.setdefault(i, []).append(j)
    out = []

    def go(path):
        nxt = ups.get(path[-1], [])
        if not nxt:
            out.append(list(path))
            return
        for j in nxt:
            go(path + [j])

    for i in range(len(p)):
        if p.down[i] == 1 << i:
            go([i])
    return out


def chain_polytope(p: Poset) -> LatticePolytope:
    """x >= 0 and the sum over every maximal chain is at most 1."""
    d = len(p)
    rows = [_unit(d, i, -1) for i in range(d)]
    rhs = [0] * d
    for ch in maximal_chains(p):
        rows.append(tuple(1 if k in ch else 0 for k in range(d)))
        rhs.append(1)
    return LatticePolytope(d, tuple(rows), tuple(rhs), name="chain polytope")


def _hull(points: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for pt in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], pt) <= 0:
            lower.pop()
        lower.append(pt)
    for pt in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], pt) <= 0:
            upper.pop()
        upper.append(pt)
    return lower[:-1] + upper[:-1]


def polygon(vertices: Sequence[tuple[int, int]]) -> LatticePolytope:
    """Convex hull of integer points in the plane, as inequalities."""
    hull = _hull(vertices)
    if len(hull) < 3:
        raise NotTwoDimensional("points are collinear")
    rows, rhs = [], []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:] + hull[:1]):
        # counterclockwise hull: interior is to the left of each edge
        a, b = y1 - y0, x0 - x1
        rows.append((a, b))
        rhs.append(a * x0 + b * y0)
    return LatticePolytope(2, tuple(rows), tuple(rhs), name="polygon")


def random_polygon(rng: random.Random, size: int = 5, npts: int = 5) -> tuple[list, LatticePolytope]:
    while True:
        pts = [(rng.randint(0, size), rng.randint(0, size)) for _ in range(npts)]
        try:
            return _hull(pts), polygon(pts)
        except NotTwoDimensional:
            continue


def build_polytope(spec: str) -> LatticePolytope:
    """``simplex:2``, ``cube:3``, ``cross:2``, ``hypersimplex:2,3``,
    ``order:<poset spec>``, ``chainpoly:<poset spec>``."""
    from .posetkit import named_poset

    name, _, rest = spec.partition(":")
    if name in ("order", "chainpoly"):
        p = named_poset(rest)
        return order_polytope(p) if name == "order" else chain_polytope(p)
    try:
        nums = [int(t) for t in rest.split(",") if t.strip()]
    except ValueError:
        raise BadSpec(f"bad parameters in {spec!r}") from None
    if name == "simplex" and len(nums) == 1:
        return simplex(nums[0])
    if name == "cube" and len(nums) == 1:
        return unit_cube(nums[0])
    if name == "cross" and len(nums) == 1:
        return crosspolytope(nums[0])
    if name == "hypersimplex" and len(nums) == 2:
        return hypersimplex(*nums)
    raise BadSpec(f"unknown polytope spec {spec!r}")


# --- affine hull lattice ------------------------------------------------------------


def _column_hermite(C: Sequence[Sequence[int]], d: int) -> tuple[list[list[int]], list[list[int]], int]:
    """Unimodular U with C U = [H | 0]; returns (C U, U, rank)."""
    a = [list(r) for r in C]
    u = [[int(i == j) for j in range(d)] for i in range(d)]

    def colop(dst, src, f):
        for r in a:
            r[dst] -= f * r[src]
        for r in u:
            r[dst] -= f * r[src]

    def swap(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in u:
            r[i], r[j] = r[j], r[i]

    k = 0
    for row in range(len(a)):
        if k == d:
            break
        while True:
            nz = [c for c in range(k, d) if a[row][c]]
            if len(nz) <= 1:
                break
            piv = min(nz, key=lambda c: abs(a[row][c]))
            for c in nz:
                if c != piv:
                    colop(c, piv, a[row][c] // a[row][piv])
        nz = [c for c in range(k, d) if a[row][c]]
        if not nz:
            continue
        if nz[0] != k:
            swap(nz[0], k)
        k += 1
    return a, u, k


@dataclass(frozen=True)
class AffineLattice:
    """Integer points of {C x = n e}: base(n) + span_Z(kernel columns)."""

    u: tuple
    cu: tuple
    rank: int
    dim: int

    @property
    def kernel(self) -> list[list[int]]:
        return [[row[c] for c in range(self.rank, self.dim)] for row in self.u]

    def base(self, rhs: Sequence[int]) -> list[int] | None:
        y = []
        for k in range(self.rank):
            # pivot row of column k: first row whose column k entry is its last nonzero
            row = next(i for i, r in enumerate(self.cu) if r[k] and all(v == 0 for v in r[k + 1:self.rank]))
            rest = sum(self.cu[row][j] * y[j] for j in range(k))
            num = rhs[row] - rest
            if num % self.cu[row][k]:
                return None
            y.append(num // self.cu[row][k])
        for r, v in zip(self.cu, rhs):
            if sum(r[j] * y[j] for j in range(self.rank)) != v:
                return None
        return [sum(self.u[i][j] * y[j] for j in range(self.rank)) for i in range(self.dim)]


def affine_lattice(p: LatticePolytope) -> AffineLattice:
    cu, u, r = _column_hermite(p.C, p.dim)
    return AffineLattice(tuple(map(tuple, u)), tuple(tuple(row[:r]) for row in cu), r, p.dim)


def _bounds(A: np.ndarray, rhs: np.ndarray, strict_margin: float = 0.0) -> list[tuple[int, int]] | None:
    """Integer box for {z : A z <= rhs}; None if empty."""
    k = A.shape[1]
    box = []
    for j in range(k):
        lohi = []
        for sgn in (1, -1):
            c = np.zeros(k)
            c[j] = sgn
            res = linprog(c, A_ub=A, b_ub=rhs, bounds=[(None, None)] * k, method="highs")
            if res.status == 2:
                return None
            if res.status == 3:
                raise Unbounded("the inequality system does not bound the polytope")
            if res.status != 0:
                raise RuntimeError(f"linear program failed: {res.message}")
            lohi.append(sgn * res.fun)
        lo, hi = lohi[0], lohi[1]
        box.append((ceil(lo - 1e-7), floor(hi + 1e-7)))
    return box


def count_points(p: LatticePolytope, n: int, interior: bool = False, budget: int = DEFAULT_BUDGET) -> int:
    """|nP ∩ Z^d|, or relative-interior points with strict inequalities."""
    if n < 0:
        raise ValueError("dilation must be nonnegative")
    if n == 0:
        return 0 if interior and polytope_dim(p) > 0 else 1
    lat = affine_lattice(p)
    base = lat.base([n * v for v in p.e])
    if base is None:
        return 0
    K = np.array(lat.kernel, dtype=np.int64).reshape(p.dim, p.dim - lat.rank)
    x0 = np.array(base, dtype=np.int64)
    A = np.array(p.A, dtype=np.int64).reshape(len(p.A), p.dim)
    rhs = n * np.array(p.b, dtype=np.int64) - A @ x0
    AK = A @ K
    k = K.shape[1]
    if k == 0:
        ok = (rhs > 0) if interior else (rhs >= 0)
        return int(ok.all())
    box = _bounds(AK.astype(float), rhs.astype(float))
    if box is None:
        return 0
    sizes = [max(0, hi - lo + 1) for lo, hi in box]
    total = 1
    for s in sizes:
        total *= s
    if total > budget:
        raise ScanTooLarge(f"{total} candidate points exceed the budget {budget}")
    if total == 0:
        return 0
    los = np.array([lo for lo, _ in box], dtype=np.int64)
    dims = np.array(sizes, dtype=np.int64)
    strides = np.cumprod(np.concatenate(([1], dims[:-1])))
    count = 0
    chunk = 1 << 18
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        z = (idx[:, None] // strides[None, :]) % dims[None, :] + los[None, :]
        lhs = z @ AK.T
        ok = (lhs < rhs[None, :]) if interior else (lhs <= rhs[None, :])
        count += int(ok.all(axis=1).sum())
    return count


def polytope_dim(p: LatticePolytope) -> int:
    """Dimension of P, assumed full-dimensional inside {C x = e} (checked by LP)."""
    lat = affine_lattice(p)
    k = p.dim - lat.rank
    if k == 0:
        return 0
    # find a rational interior point: maximize t with A x + t <= b, C x = e
    d = p.dim
    c = np.zeros(d + 1)
    c[-1] = -1
    A = np.array(p.A, dtype=float).reshape(len(p.A), d)
    a_ub = np.hstack([A, np.ones((len(p.A), 1))])
    a_eq = np.hstack([np.array(p.C, dtype=float).reshape(len(p.C), d), np.zeros((len(p.C), 1))]) if p.C else None
    res = linprog(c, A_ub=a_ub, b_ub=np.array(p.b, dtype=float), A_eq=a_eq,
                  b_eq=np.array(p.e, dtype=float) if p.C else None,
                  bounds=[(None, None)] * d + [(None, 1)], method="highs")
    if res.status == 3:
        raise Unbounded("the inequality system does not bound the polytope")
    if res.status != 0 or -res.fun <= 1e-9:
        raise ValueError("polytope is empty or lower-dimensional than its equations say; add the implied equations")
    return k


# --- Ehrhart data --------------------------------------------------------------------


@dataclass
class EhrhartData:
    dim: int
    poly: Poly
    interior: Poly
    h_star: list[int]
    counts: list[int]

    @property
    def normalized_volume(self) -> Fraction:
        return self.poly.leading() * factorial(self.dim)

    @property
    def relative_volume(self) -> Fraction:
        return self.poly.leading()


def h_star_from_counts(counts: Sequence[int], dim: int) -> list[int]:
    """Coefficients of (1-z)^(dim+1) sum L(n) z^n up to z^dim."""
    out = []
    for k in range(dim + 1):
        v = sum((-1) ** i * comb(dim + 1, i) * counts[k - i] for i in range(k + 1))
        out.append(v)
    if any(Fraction(v).denominator != 1 for v in out):
        raise NonIntegralHStar(f"h* = {out} is not integral")
    if out[0] != 1:
        raise NonIntegralHStar(f"h*_0 = {out[0]}, expected 1")
    if any(v < 0 for v in out):
        raise ArithmeticError(f"h* = {out} has a negative entry")
    return [int(v) for v in out]


def ehrhart_polynomial(p: LatticePolytope, budget: int = DEFAULT_BUDGET) -> EhrhartData:
    d = polytope_dim(p)
    counts = [count_points(p, n, budget=budget) for n in range(d + 2)]
    poly = Poly.interpolate(list(range(d + 1)), counts[: d + 1])
    if poly(d + 1) != counts[d + 1]:
        raise ArithmeticError(f"count at n = {d + 1} is {counts[d + 1]}, polynomial predicts {poly(d + 1)}")
    inner = [count_points(p, n, interior=True, budget=budget) for n in range(1, d + 2)]
    interior = Poly.interpolate(list(range(1, d + 2)), inner)
    recip = poly(Poly([0, -1])) * (-1) ** d
    if recip != interior:
        raise ArithmeticError(f"reciprocity fails: (-1)^d L(-n) = {recip}, interior counts give {interior}")
    return EhrhartData(d, poly, interior, h_star_from_counts(counts, d), counts)


def h_star(p: LatticePolytope) -> list[int]:
    return ehrhart_polynomial(p).h_star


@dataclass
class ReciprocityReport:
    ok: bool
    rows: list[tuple[int, int, int]]


def reciprocity_check(p: LatticePolytope, upto: int = 4, data: EhrhartData | None = None) -> ReciprocityReport:
    """Compare (-1)^dim L(-n) with directly counted interior points for n = 1..upto."""
    data = data or ehrhart_polynomial(p)
    rows = []
    for n in range(1, upto + 1):
        pred = (-1) ** data.dim * data.poly(-n)
        rows.append((n, int(pred), count_points(p, n, interior=True)))
    return ReciprocityReport(all(a == b for _, a, b in rows), rows)


@dataclass
class PickReport:
    area: Fraction
    interior: int
    boundary: int
    coefficients: tuple
    ok: bool


def pick_check(p: LatticePolytope) -> PickReport:
    if polytope_dim(p) != 2:
        raise NotTwoDimensional("Pick's formula is for polygons")
    data = ehrhart_polynomial(p)
    inner = count_points(p, 1, interior=True)
    total = count_points(p, 1)
    bnd = total - inner
    area = data.poly[2]
    coeffs = (data.poly[2], data.poly[1], data.poly[0])
    ok = coeffs == (Fraction(inner) + Fraction(bnd, 2) - 1, Fraction(bnd, 2), Fraction(1)) and area == coeffs[0]
    return PickReport(area, inner, bnd, coeffs, ok)


@dataclass
class BridgeReport:
    order_poly: Poly
    chain_poly: Poly
    omega_shifted: Poly
    volume: Fraction
    expected_volume: Fraction
    ok: bool


def poset_polytope_bridge(p: Poset, budget: int = DEFAULT_BUDGET) -> BridgeReport:
    """L_O(P)(n) = L_C(P)(n) = Omega_P(n+1), volumes e(P)/|P|!."""
    lo = ehrhart_polynomial(order_polytope(p), budget).poly
    lc = ehrhart_polynomial(chain_polytope(p), budget).poly
    om = order_polynomial(p)(Poly([1, 1]))
    vol = lo.leading()
    expect = Fraction(linear_extensions(p), factorial(len(p)))
    ok = lo == lc == om and vol == expect and lc.leading() == expect
    return BridgeReport(lo, lc, om, vol, expect, ok)


__all__ = [
    "LatticePolytope",
    "parse_polytope",
    "simplex",
    "unit_cube",
    "crosspolytope",
    "hypersimplex",
    "order_polytope",
    "chain_polytope",
    "maximal_chains",
    "polygon",
    "random_polygon",
    "build_polytope",
    "AffineLattice",
    "affine_lattice",
    "count_points",
    "polytope_dim",
    "EhrhartData",
    "h_star_from_counts",
    "ehrhart_polynomial",
    "h_star",
    "ReciprocityReport",
    "reciprocity_check",
    "PickReport",
    "pick_check",
    "BridgeReport",
    "poset_polytope_bridge",
]
