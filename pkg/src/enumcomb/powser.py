"""Truncated formal power series with exact rational coefficients.

A ``Series`` knows the coefficients of x^0 .. x^N and nothing beyond; N is
its ``order``. Binary operations truncate to the smaller order, so a result
never claims more precision than its inputs justify.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, Sequence

from .errors import (
    BadConstantTerm,
    CompositionDiverges,
    NotCompositionallyInvertible,
    NotInvertible,
)
from .poly import Poly, as_fraction, fraction_str


class Series:
    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Iterable = (), order: int | None = None):
        cs = [as_fraction(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        cs = cs[: order + 1]
        cs += [Fraction(0)] * (order + 1 - len(cs))
        self.coeffs = tuple(cs)
        self.order = order

    # constructors

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls([1], order)

    @classmethod
    def x(cls, order: int) -> "Series":
        return cls([0, 1], order)

    @classmethod
    def from_function(cls, f: Callable[[int], object], order: int) -> "Series":
        return cls([f(n) for n in range(order + 1)], order)

    @classmethod
    def geometric(cls, ratio, order: int) -> "Series":
        """1/(1 - ratio*x)."""
        r = as_fraction(ratio)
        return cls([r ** n for n in range(order + 1)], order)

    @classmethod
    def from_poly(cls, p: Poly, order: int) -> "Series":
        return cls(p.coeffs, order)

    @classmethod
    def rational(cls, num, den, order: int) -> "Series":
        """Expansion of num/den; both given as Polys or coefficient lists."""
        num = num if isinstance(num, Poly) else Poly(num)
        den = den if isinstance(den, Poly) else Poly(den)
        return cls(num.coeffs, order) * cls(den.coeffs, order).inverse()

    @classmethod
    def exp_series(cls, order: int) -> "Series":
        return cls([Fraction(1, factorial(n)) for n in range(order + 1)], order)

    # protocol

    def __len__(self):
        return self.order + 1

    def __getitem__(self, n: int) -> Fraction:
        if n < 0:
            return Fraction(0)
        if n > self.order:
            raise IndexError(f"coefficient {n} is beyond truncation order {self.order}")
        return self.coeffs[n]

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Series):
            return NotImplemented
        m = min(self.order, other.order)
        return self.coeffs[: m + 1] == other.coeffs[: m + 1]

    def __hash__(self):
        return hash((self.coeffs, self.order))

    def __repr__(self):
        return f"Series({self.to_string()})"

    def __str__(self):
        return self.to_string()

    def to_string(self, var: str = "x") -> str:
        body = Poly(self.coeffs).to_string(var)
        return f"{body} + O({var}^{self.order + 1})"

    def valuation(self) -> int | None:
        """Index of the first nonzero coefficient, or None if all known ones vanish."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise ValueError("cannot raise the truncation order")
        return Series(self.coeffs, order)

    def as_ints(self) -> list[int]:
        if any(c.denominator != 1 for c in self.coeffs):
            raise ValueError("series has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    def to_poly(self) -> Poly:
        return Poly(self.coeffs)

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [fraction_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Series":
        return cls([as_fraction(c) for c in data["coeffs"]], int(data["order"]))

    # arithmetic

    def _coerce(self, other) -> "Series":
        if isinstance(other, Series):
            return other
        return Series([as_fraction(other)], self.order)

    def __add__(self, other):
        other = self._coerce(other)
        m = min(self.order, other.order)
        return Series([a + b for a, b in zip(self.coeffs[: m + 1], other.coeffs)], m)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Series):
            c = as_fraction(other)
            return Series([a * c for a in self.coeffs], self.order)
        m = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            ai = a[i]
            if not ai:
                continue
            for j in range(m + 1 - i):
                if b[j]:
                    out[i + j] += ai * b[j]
        return Series(out, m)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Series":
        if k < 0:
            return self.inverse() ** (-k)
        result, base = Series.one(self.order), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def inverse(self) -> "Series":
        a = self.coeffs
        if a[0] == 0:
            raise NotInvertible("constant term is zero, so the series has no inverse")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, self.order + 1):
            s = sum((a[k] * b[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            b.append(-s * inv0)
        return Series(b, self.order)

    def __truediv__(self, other):
        if isinstance(other, Series):
            return self * other.inverse()
        return self * (1 / as_fraction(other))

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def shift_down(self, k: int) -> "Series":
        """Divide by x^k; the first k coefficients must vanish."""
        if k == 0:
            return self
        if any(self.coeffs[:k]):
            raise ValueError(f"series is not divisible by x^{k}")
        if k > self.order:
            raise ValueError("nothing left after the shift")
        return Series(self.coeffs[k:], self.order - k)

    def shift_up(self, k: int) -> "Series":
        """Multiply by x^k; the known range grows by k."""
        return Series([0] * k + list(self.coeffs), self.order + k)

    # calculus

    def derivative(self) -> "Series":
        if self.order == 0:
            raise ValueError("derivative of an order-0 series carries no information")
        return Series([n * self.coeffs[n] for n in range(1, self.order + 1)], self.order - 1)

    def integrate(self) -> "Series":
        return Series([0] + [c / (n + 1) for n, c in enumerate(self.coeffs)], self.order + 1)

    def hadamard(self, other: "Series") -> "Series":
        m = min(self.order, other.order)
        return Series([a * b for a, b in zip(self.coeffs[: m + 1], other.coeffs)], m)

    def compose(self, inner: "Series") -> "Series":
        """self(inner(x)) by Horner accumulation."""
        if inner.coeffs[0] != 0:
            raise CompositionDiverges("inner series must have zero constant term")
        m = min(self.order, inner.order)
        b = inner.truncate(m)
        acc = Series([self.coeffs[m]], m)
        for k in range(m - 1, -1, -1):
            acc = acc * b + self.coeffs[k]
        return acc

    # analytic kinds

    def exp(self) -> "Series":
        a = self.coeffs
        if a[0] != 0:
            raise BadConstantTerm("exp needs constant term 0")
        e = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum((k * a[k] * e[n - k] for k in range(1, n + 1) if a[k]), Fraction(0))
            e.append(s / n)
        return Series(e, self.order)

    def log(self) -> "Series":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("log needs constant term 1")
        if self.order == 0:
            return Series.zero(0)
        return (self.derivative() * self.truncate(self.order - 1).inverse()).integrate()

    def pow_r(self, r) -> "Series":
        """(1 + ...)^r for rational r via the generalized binomial recurrence."""
        r = as_fraction(r)
        a = self.coeffs
        if a[0] != 1:
            raise BadConstantTerm("rational powers need constant term 1")
        b = [Fraction(1)]
        for n in range(1, self.order + 1):
            s = sum(((r + 1) * k - n) * a[k] * b[n - k] for k in range(1, n + 1) if a[k])
            b.append(Fraction(s) / n)
        return Series(b, self.order)

    def sqrt(self) -> "Series":
        if self.coeffs[0] != 1:
            raise BadConstantTerm("sqrt needs constant term 1")
        return self.pow_r(Fraction(1, 2))

    def sin(self) -> "Series":
        if self.coeffs[0] != 0:
            raise BadConstantTerm("sin needs constant term 0")
        return _sin_series(self.order).compose(self)

    def cos(self) -> "Series":
        if self.coeffs[0] != 0:
            raise BadConstantTerm("cos needs constant term 0")
        return _cos_series(self.order).compose(self)


def _sin_series(order: int) -> Series:
    def c(n):
        if n % 2 == 0:
            return 0
        return Fraction((-1) ** (n // 2), factorial(n))

    return Series.from_function(c, order)


def _cos_series(order: int) -> Series:
    def c(n):
        if n % 2:
            return 0
        return Fraction((-1) ** (n // 2), factorial(n))

    return Series.from_function(c, order)


# --- operation entry points --------------------------------------------------


def ps_arith(kind: str, a: Series, b: Series) -> Series:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    raise ValueError(f"unknown arithmetic kind {kind!r}")


def ps_inverse(a: Series) -> Series:
    return a.inverse()


def ps_compose(a: Series, b: Series) -> Series:
    return a.compose(b)


def ps_analytic(kind: str, a: Series, r=None) -> Series:
    if kind == "exp":
        return a.exp()
    if kind == "log":
        return a.log()
    if kind == "sqrt":
        return a.sqrt()
    if kind == "pow_r":
        if r is None:
            raise ValueError("pow_r needs an exponent")
        return a.pow_r(r)
    if kind == "sin":
        return a.sin()
    if kind == "cos":
        return a.cos()
    raise ValueError(f"unknown analytic kind {kind!r}")


def ps_calculus(kind: str, a: Series) -> Series:
    if kind == "derivative":
        return a.derivative()
    if kind == "integrate":
        return a.integrate()
    raise ValueError(f"unknown calculus kind {kind!r}")


def ps_hadamard(a: Series, b: Series) -> Series:
    return a.hadamard(b)


def lagrange_inverse(a: Series) -> Series:
    """Compositional inverse from n [x^n] B = [x^{n-1}] (x/A)^n."""
    if a.coeffs[0] != 0 or a.order < 1 or a.coeffs[1] == 0:
        raise NotCompositionallyInvertible("need a_0 = 0 and a_1 != 0")
    n_max = a.order
    phi = a.shift_down(1).inverse()  # x/A(x), known to order N-1
    out = [Fraction(0)]
    power = Series.one(phi.order)
    for n in range(1, n_max + 1):
        power = power * phi
        out.append(power[n - 1] / n)
    return Series(out, n_max)


def weight_derivative(family: Callable[[Fraction], Series], at=1, degree: int | None = None) -> Series:
    """d/dv of a one-parameter family of series, evaluated at v = ``at``.

    ``family(v)`` must return a series whose coefficients are polynomials in v
    of degree at most ``degree`` (default: the truncation order). Each
    coefficient is recovered by interpolation over v = 0..degree, then
    differentiated. This is how weighted counts such as "total number of
    vertical tiles" are extracted without a bivariate ring.
    """
    at = as_fraction(at)
    probe = family(Fraction(0))
    if degree is None:
        degree = probe.order
    nodes = list(range(degree + 1))
    samples = [probe] + [family(Fraction(v)) for v in nodes[1:]]
    order = min(s.order for s in samples)
    out = []
    for n in range(order + 1):
        p = Poly.interpolate(nodes, [s[n] for s in samples])
        out.append(p.derivative()(at))
    return Series(out, order)


@dataclass(frozen=True)
class PartitionSpec:
    """Which partitions to count.

    ``parts`` is an explicit collection of allowed sizes or a predicate on
    sizes. ``part_weight`` is the value substituted for the second variable
    that marks each part (so -1 gives signed counts).
    """

    parts: object = None
    distinct: bool = False
    max_parts: int | None = None
    part_weight: Fraction = Fraction(1)

    def allowed(self, order: int) -> list[int]:
        if self.parts is None:
            sizes = list(range(1, order + 1))
        elif callable(self.parts):
            sizes = [k for k in range(1, order + 1) if self.parts(k)]
        else:
            sizes = sorted(k for k in set(self.parts) if 1 <= k <= order)
            if not set(self.parts):
                raise ValueError("at least one part size must be allowed")
        return sizes


def partition_gf(spec: PartitionSpec, order: int) -> Series:
    if order < 0:
        raise ValueError("order must be nonnegative")
    w = as_fraction(spec.part_weight)
    sizes = spec.allowed(order)
    if spec.max_parts is None:
        c = [Fraction(0)] * (order + 1)
        c[0] = Fraction(1)
        for k in sizes:
            if spec.distinct:
                for n in range(order, k - 1, -1):
                    c[n] += w * c[n - k]
            else:
                for n in range(k, order + 1):
                    c[n] += w * c[n - k]
        return Series(c, order)
    # table[j][n]: weight of partitions of n with exactly j parts
    m = spec.max_parts
    table = [[Fraction(0)] * (order + 1) for _ in range(m + 1)]
    table[0][0] = Fraction(1)
    for k in sizes:
        if spec.distinct:
            for j in range(m, 0, -1):
                for n in range(order, k - 1, -1):
                    table[j][n] += w * table[j - 1][n - k]
        else:
            for j in range(1, m + 1):
                for n in range(k, order + 1):
                    table[j][n] += w * table[j - 1][n - k]
    return Series([sum(table[j][n] for j in range(m + 1)) for n in range(order + 1)], order)


def egf_ogf_convert(direction: str, a: Series) -> Series:
    """``egf_to_ogf`` multiplies coefficient n by n!, ``ogf_to_egf`` divides."""
    if direction == "egf_to_ogf":
        return Series([c * factorial(n) for n, c in enumerate(a.coeffs)], a.order)
    if direction == "ogf_to_egf":
        return Series([c / factorial(n) for n, c in enumerate(a.coeffs)], a.order)
    raise ValueError(f"unknown direction {direction!r}")


def parse_series(text: str, order: int) -> Series:
    """Parse a comma-separated coefficient list such as ``1,-1,-1`` or ``1/2,0,3``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    return Series([as_fraction(p) for p in parts], order)


__all__ = [
    "Series",
    "PartitionSpec",
    "ps_arith",
    "ps_inverse",
    "ps_compose",
    "ps_analytic",
    "ps_calculus",
    "ps_hadamard",
    "lagrange_inverse",
    "weight_derivative",
    "partition_gf",
    "egf_ogf_convert",
    "parse_series",
]
