"""Exact dense linear algebra over Q, Q[x] and prime fields.

Determinants use Bareiss fraction-free elimination on integer matrices
(rational rows are scaled to integers first). Matrices with polynomial
entries are handled by evaluating at the nodes 0..D, where D bounds the
degree of the determinant, and interpolating.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .poly import Poly, as_fraction


def _entry(value):
    if isinstance(value, Poly):
        return value
    return as_fraction(value)


class ExactMatrix:
    """Immutable rectangular matrix whose entries are all Fractions or all Polys."""

    __slots__ = ("rows", "nrows", "ncols", "is_polynomial")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_entry(v) for v in row) for row in rows)
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        kinds = {isinstance(v, Poly) for r in rows for v in r}
        if len(kinds) > 1:
            # promote scalars so the entry ring is homogeneous
            rows = tuple(tuple(v if isinstance(v, Poly) else Poly([v]) for v in r) for r in rows)
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols
        self.is_polynomial = kinds == {True} or len(kinds) > 1

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, m: int, n: int) -> "ExactMatrix":
        return cls([[0] * n for _ in range(m)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"ExactMatrix({[[str(v) for v in r] for r in self.rows]})"

    def tolist(self) -> list[list]:
        return [list(r) for r in self.rows]

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows)) if self.rows else self

    def __add__(self, other: "ExactMatrix"):
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix"):
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return ExactMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "ExactMatrix":
        return ExactMatrix([[a * c for a in r] for r in self.rows])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        zero = Poly() if (self.is_polynomial or other.is_polynomial) else Fraction(0)
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = zero
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(out)

    def __pow__(self, k: int) -> "ExactMatrix":
        if self.nrows != self.ncols:
            raise ValueError("matrix power needs a square matrix")
        result, base = ExactMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result

    def minor(self, drop_rows: Sequence[int], drop_cols: Sequence[int]) -> "ExactMatrix":
        dr, dc = set(drop_rows), set(drop_cols)
        return ExactMatrix(
            [[v for j, v in enumerate(r) if j not in dc] for i, r in enumerate(self.rows) if i not in dr]
        )

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def evaluate(self, x) -> "ExactMatrix":
        """Evaluate every polynomial entry at x."""
        if not self.is_polynomial:
            return self
        return ExactMatrix([[v(x) for v in r] for r in self.rows])

    def is_skew_symmetric(self) -> bool:
        n = self.nrows
        return self.ncols == n and all(
            self.rows[i][j] == -self.rows[j][i] for i in range(n) for j in range(i, n)
        )

    def det(self):
        return det_exact(self)


# --- determinants -----------------------------------------------------------


def bareiss_det_int(rows: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * a[n - 1][n - 1]


def _rational_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    scaled = []
    denom = 1
    for r in rows:
        m = lcm(*(v.denominator for v in r)) if r else 1
        denom *= m
        scaled.append([int(v * m) for v in r])
    return Fraction(bareiss_det_int(scaled), denom)


def det_degree_bound(m: ExactMatrix) -> int:
    """Sum over rows of the maximal entry degree; bounds deg det for Q[x] entries."""
    total = 0
    for r in m.rows:
        total += max((v.degree for v in r if not v.is_zero()), default=0)
    return total


def det_exact(m: ExactMatrix):
    """Exact determinant; returns a Fraction or, for polynomial entries, a Poly."""
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    if not m.is_polynomial:
        return _rational_det(m.rows)
    bound = det_degree_bound(m)
    nodes = list(range(bound + 1))
    values = [_rational_det(m.evaluate(t).rows) for t in nodes]
    return Poly.interpolate(nodes, values)


# --- elimination ------------------------------------------------------------


def rref(rows: Sequence[Sequence], ncols: int | None = None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; pivots chosen left to right.

    Returns (nonzero rows, pivot columns).
    """
    a = [[as_fraction(v) for v in r] for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        pv = a[r][c]
        if pv != 1:
            a[r] = [v / pv for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    """Rank over Q using integer Bareiss-style elimination."""
    a = []
    for r in rows:
        fr = [as_fraction(v) for v in r]
        m = lcm(*(v.denominator for v in fr)) if fr else 1
        a.append([int(v * m) for v in fr])
    return _int_rank(a)


def _int_rank(a: list[list[int]]) -> int:
    a = [list(r) for r in a if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rk = 0
    for c in range(ncols):
        p = next((i for i in range(rk, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[rk], a[p] = a[p], a[rk]
        pv = a[rk][c]
        for i in range(rk + 1, len(a)):
            f = a[i][c]
            if f:
                a[i] = [x * pv - f * y for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == len(a):
            break
    return rk


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank over the prime field F_p."""
    a = [[int(v) % p for v in r] for r in rows]
    a = [r for r in a if any(r)]
    if not a:
        return 0
    ncols = len(a[0])
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][c], -1, p)
        a[rk] = [(v * inv) % p for v in a[rk]]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rk])]
        rk += 1
        if rk == len(a):
            break
    return rk


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """One solution of A x = b over Q (free variables set to 0), or None."""
    ncols = len(matrix[0]) if matrix else 0
    aug = [list(r) + [b] for r, b in zip(matrix, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[ncols]
    return x


def nullspace(matrix: Sequence[Sequence], ncols: int | None = None) -> list[list[Fraction]]:
    """A basis of the right kernel over Q."""
    if ncols is None:
        ncols = len(matrix[0]) if matrix else 0
    red, pivots = rref(matrix, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[f]
        basis.append(v)
    return basis


def hadamard_bound(rows: Sequence[Sequence[int]], k: int) -> float:
    """Upper bound on |det| of any k x k minor, from the k largest row norms."""
    norms = sorted((sum(v * v for v in r) ** 0.5 for r in rows), reverse=True)[:k]
    out = 1.0
    for n in norms:
        out *= max(n, 1.0)
    return out


__all__ = [
    "ExactMatrix",
    "bareiss_det_int",
    "det_exact",
    "det_degree_bound",
    "rref",
    "rank",
    "rank_mod_p",
    "solve",
    "nullspace",
    "hadamard_bound",
]
