"""C-finite sequences: recurrences, rational generating functions, growth.

Recurrences are stored in the form

    a_n + c_1 a_{n-1} + ... + c_d a_{n-d} = 0,

so Fibonacci has c = (-1, -1) and generating function 1/(1 + c_1 x + ... + c_d x^d)
times a numerator polynomial of degree below d.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import ImproperRational, NoDominantRealRoot, WindowTooShort
from .linalg import solve
from .poly import Poly, as_fraction, binomial_poly_basis, fraction_str
from .powser import Series


@dataclass(frozen=True)
class LinearRecurrence:
    coeffs: tuple[Fraction, ...]
    initial: tuple[Fraction, ...]

    def __post_init__(self):
        cs = tuple(as_fraction(c) for c in self.coeffs)
        init = tuple(as_fraction(a) for a in self.initial)
        if not cs:
            raise ValueError("a recurrence needs at least one coefficient")
        if cs[-1] == 0:
            raise ValueError("last coefficient must be nonzero (true order)")
        if len(init) != len(cs):
            raise ValueError(f"order {len(cs)} recurrence needs {len(cs)} initial terms")
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "initial", init)

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def terms(self, count: int) -> list[Fraction]:
        a = list(self.initial[:count])
        d = self.order
        while len(a) < count:
            n = len(a)
            a.append(-sum(self.coeffs[i] * a[n - 1 - i] for i in range(d)))
        return a

    def to_json(self) -> dict:
        return {
            "coeffs": [fraction_str(c) for c in self.coeffs],
            "initial": [fraction_str(a) for a in self.initial],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearRecurrence":
        return cls(tuple(data["coeffs"]), tuple(data["initial"]))


class RationalGF:
    """p(x)/q(x) normalized so that q(0) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        num = num if isinstance(num, Poly) else Poly(num)
        den = den if isinstance(den, Poly) else Poly(den)
        if den[0] == 0:
            raise ValueError("denominator must have a nonzero constant term")
        scale = den[0]
        self.num = num * (1 / scale)
        self.den = den * (1 / scale)

    def __eq__(self, other):
        return isinstance(other, RationalGF) and self.num * other.den == other.num * self.den

    def __hash__(self):
        r = self.reduced()
        return hash((r.num, r.den))

    def __repr__(self):
        return f"RationalGF(({self.num}) / ({self.den}))"

    def is_proper(self) -> bool:
        return self.num.is_zero() or self.num.degree < self.den.degree

    def series(self, order: int) -> Series:
        return Series.rational(self.num, self.den, order)

    def reduced(self) -> "RationalGF":
        if self.num.is_zero():
            return RationalGF(Poly(), Poly([1]))
        g = self.num.gcd(self.den)
        if g.degree <= 0:
            return self
        return RationalGF(self.num.exact_div(g), self.den.exact_div(g))

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalGF":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))


def rec_to_gf(r: LinearRecurrence) -> RationalGF:
    d = r.order
    a, c = r.initial, r.coeffs
    q = Poly([1, *c])
    p = [a[k] + sum(c[i - 1] * a[k - i] for i in range(1, k + 1)) for k in range(d)]
    return RationalGF(Poly(p), q)


def gf_to_rec(g: RationalGF) -> LinearRecurrence:
    if not g.is_proper():
        raise ImproperRational("numerator degree must be below denominator degree; split off the polynomial part")
    d = g.den.degree
    if d < 1:
        raise ImproperRational("a constant denominator encodes a polynomial, not a recurrence")
    coeffs = tuple(g.den[i] for i in range(1, d + 1))
    initial = tuple(g.series(d - 1).coeffs)
    return LinearRecurrence(coeffs, initial)


def nth_term(r: LinearRecurrence, n: int) -> Fraction:
    """a_n by linear iteration with a sliding window."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = r.order
    if n < d:
        return r.initial[n]
    window = list(r.initial)
    c = r.coeffs
    for _ in range(n - d + 1):
        nxt = -sum(c[i] * window[d - 1 - i] for i in range(d))
        window = window[1:] + [nxt]
    return window[-1]


@dataclass(frozen=True)
class PolynomialFit:
    degree: int
    poly: Poly


def detect_polynomial(seq: Sequence) -> PolynomialFit | None:
    """Least d whose (d+1)-st difference vanishes on the whole window."""
    vals = [as_fraction(v) for v in seq]
    if len(vals) < 2:
        raise WindowTooShort("need at least two terms to test any degree")
    diffs = vals
    for d in range(len(vals) - 1):
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        if not diffs:
            break
        if all(v == 0 for v in diffs):
            return PolynomialFit(d, binomial_poly_basis(vals[: d + 1]))
    return None


def _sturm_chain(f: Poly) -> list[Poly]:
    chain = [f, f.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        _, rem = chain[-2].divmod(chain[-1])
        if rem.is_zero():
            break
        chain.append(-rem)
    return chain


def _sign_changes(chain: list[Poly], x: Fraction) -> int:
    signs = [v for v in (p(x) for p in chain) if v != 0]
    return sum(1 for u, v in zip(signs, signs[1:]) if (u > 0) != (v > 0))


def _squarefree(q: Poly) -> Poly:
    g = q.gcd(q.derivative())
    return q if g.degree <= 0 else q.exact_div(g)


def dominant_growth(g: RationalGF, tol: float = 1e-12) -> float:
    """Exponential growth rate alpha = 1/rho of the coefficients.

    rho is the smallest positive root of the reduced denominator. It is
    isolated exactly with a Sturm chain and rational bisection, and its
    dominance (strictly smaller modulus than every other root) is checked
    numerically. The result is a float estimate.
    """
    red = g.reduced()
    q = _squarefree(red.den)
    d = q.degree
    if d < 1:
        raise NoDominantRealRoot("denominator has no roots")
    qn = q * (1 / q[0])
    bound = abs(float(qn[d])) ** (-1.0 / d)
    hi = Fraction(bound) * Fraction(1000000001, 1000000000) + Fraction(1, 10 ** 12)
    chain = _sturm_chain(qn)
    lo = Fraction(0)
    v0 = _sign_changes(chain, lo)
    if v0 - _sign_changes(chain, hi) == 0:
        raise NoDominantRealRoot("no positive real root below the modulus bound")
    while hi - lo > Fraction(tol):
        mid = (lo + hi) / 2
        if v0 - _sign_changes(chain, mid) >= 1:
            hi = mid
        else:
            lo = mid
    rho = float((lo + hi) / 2)
    roots = np.roots([float(c) for c in reversed(qn.coeffs)])
    others = [r for r in roots if abs(r - rho) > 1e-7 * max(1.0, rho)]
    if any(abs(r) <= rho * (1 + 1e-9) for r in others):
        raise NoDominantRealRoot("another root has modulus no larger than the positive one")
    return 1.0 / rho


def guess_recurrence(seq: Sequence, max_order: int) -> LinearRecurrence | None:
    """Least-order recurrence fitting the data, validated on held-out terms."""
    a = [as_fraction(v) for v in seq]
    if len(a) < 2 * max_order + 2:
        raise WindowTooShort(f"need at least {2 * max_order + 2} terms for max_order {max_order}")
    if all(v == 0 for v in a):
        return LinearRecurrence((Fraction(-1),), (Fraction(0),))
    for d in range(1, max_order + 1):
        rows = [[a[n - i] for i in range(1, d + 1)] for n in range(d, 2 * d)]
        rhs = [-a[n] for n in range(d, 2 * d)]
        c = solve(rows, rhs)
        if c is None or c[-1] == 0:
            continue
        ok = all(a[n] + sum(c[i - 1] * a[n - i] for i in range(1, d + 1)) == 0 for n in range(d, len(a)))
        if ok:
            return LinearRecurrence(tuple(c), tuple(a[:d]))
    return None


NAMED_RECURRENCES = {
    "fib": LinearRecurrence((-1, -1), (1, 1)),
    "pow2": LinearRecurrence((-2,), (1,)),
    "monomer-dimer-2": LinearRecurrence((-3, -1, 1), (1, 2, 7)),
}


__all__ = [
    "LinearRecurrence",
    "RationalGF",
    "PolynomialFit",
    "rec_to_gf",
    "gf_to_rec",
    "nth_term",
    "detect_polynomial",
    "dominant_growth",
    "guess_recurrence",
    "NAMED_RECURRENCES",
]
