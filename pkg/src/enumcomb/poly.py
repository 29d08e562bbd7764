"""Univariate and bivariate polynomials with exact rational coefficients.

These are small value types used throughout the package: characteristic
polynomials, zeta and order polynomials, Ehrhart polynomials, numerators and
denominators of rational generating functions, and Tutte polynomials.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Sequence


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, float):
        raise TypeError("floats are not exact; pass a Fraction or a string")
    return Fraction(value)


def fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _trim(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim([as_fraction(c) for c in coeffs])

    @classmethod
    def const(cls, c) -> "Poly":
        return cls([c])

    @classmethod
    def x(cls) -> "Poly":
        return cls([0, 1])

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "Poly":
        p = cls([1])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @classmethod
    def interpolate(cls, xs: Sequence, ys: Sequence) -> "Poly":
        """Lagrange interpolation through the points (xs[i], ys[i])."""
        xs = [as_fraction(v) for v in xs]
        ys = [as_fraction(v) for v in ys]
        if len(set(xs)) != len(xs):
            raise ValueError("interpolation nodes must be distinct")
        total = cls()
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            if yi == 0:
                continue
            basis = cls([1])
            denom = Fraction(1)
            for j, xj in enumerate(xs):
                if j != i:
                    basis = basis * cls([-xj, 1])
                    denom *= xi - xj
            total = total + basis * (yi / denom)
        return total

    @classmethod
    def binomial(cls, shift: int, k: int) -> "Poly":
        """The polynomial C(x + shift, k) in x."""
        p = cls([1])
        for i in range(k):
            p = p * cls([shift - i, 1])
        return p * Fraction(1, factorial(k))

    # basic protocol

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other) -> "Poly":
        return other if isinstance(other, Poly) else Poly([other])

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = as_fraction(other)
            return Poly([a * c for a in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = Poly([1]), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, x):
        """Horner evaluation; works for numbers and for Poly arguments."""
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coeffs)][1:])

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(len(rem) - other.degree, 0)
        lead = other.leading()
        for k in range(len(rem) - len(other.coeffs), -1, -1):
            c = rem[k + other.degree] / lead
            q[k] = c
            if c:
                for i, b in enumerate(other.coeffs):
                    rem[k + i] -= c * b
        return Poly(q), Poly(rem)

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(self._coerce(other))
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        return self * (1 / self.leading()) if self.coeffs else self

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ArithmeticError(f"non-integral coefficients in {self}")
        return [int(c) for c in self.coeffs]

    def reflect(self, var_sign: int = -1) -> "Poly":
        """p(-x)."""
        return Poly([c * (var_sign ** i) for i, c in enumerate(self.coeffs)])

    def to_string(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({self.to_string()})"

    def __str__(self):
        return self.to_string()

    def to_json(self) -> list[str]:
        return [fraction_str(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Poly":
        return cls([as_fraction(c) for c in data])


class BiPoly:
    """Sparse bivariate polynomial in (x, y); terms map (i, j) -> coefficient."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for key, c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                clean[(int(key[0]), int(key[1]))] = c
        self.terms = clean

    @classmethod
    def x(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    def _coerce(self, other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BiPoly.const(other)
        if not isinstance(other, BiPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            c = as_fraction(other)
            return BiPoly({k: v * c for k, v in self.terms.items()})
        out: dict = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = BiPoly.const(1)
        for _ in range(k):
            result = result * self
        return result

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def __call__(self, x, y):
        total = 0
        for (i, j), c in self.terms.items():
            total = total + c * (x ** i) * (y ** j)
        return total

    def swap(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    def degree_x(self) -> int:
        return max((i for i, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((j for _, j in self.terms), default=-1)

    def substitute(self, x_val, y_val):
        """Substitute BiPoly (or scalar) values for x and y."""
        total = BiPoly()
        xp: dict[int, BiPoly] = {}
        yp: dict[int, BiPoly] = {}
        xv = x_val if isinstance(x_val, BiPoly) else BiPoly.const(x_val)
        yv = y_val if isinstance(y_val, BiPoly) else BiPoly.const(y_val)
        for (i, j), c in self.terms.items():
            if i not in xp:
                xp[i] = xv ** i
            if j not in yp:
                yp[j] = yv ** j
            total = total + xp[i] * yp[j] * c
        return total

    def divide_by_y_minus_one(self) -> "BiPoly":
        """Exact division by (y - 1); raises if the remainder is nonzero."""
        out = {}
        for i in {i for i, _ in self.terms}:
            col = [self.coeff(i, j) for j in range(self.degree_y() + 1)]
            # synthetic division of sum col[j] y^j by (y - 1)
            n = len(col) - 1
            q = [Fraction(0)] * max(n, 0)
            carry = Fraction(0)
            for j in range(n, 0, -1):
                carry = col[j] + carry
                q[j - 1] = carry
            if col[0] + carry != 0:
                raise ArithmeticError("not divisible by (y - 1)")
            for j, c in enumerate(q):
                if c:
                    out[(i, j)] = c
        return BiPoly(out)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def to_string(self, xv: str = "x", yv: str = "y") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[0])):
            c = self.terms[(i, j)]
            mono = []
            if i:
                mono.append(xv if i == 1 else f"{xv}^{i}")
            if j:
                mono.append(yv if j == 1 else f"{yv}^{j}")
            m = "*".join(mono)
            a = abs(c)
            body = (str(a) if not m else (m if a == 1 else f"{a}*{m}"))
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for s, b in parts[1:]:
            out += f" {s} {b}"
        return out

    def __repr__(self):
        return f"BiPoly({self.to_string()})"

    def __str__(self):
        return self.to_string()

    def to_json(self) -> list:
        return [[i, j, fraction_str(c)] for (i, j), c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, data) -> "BiPoly":
        return cls({(i, j): as_fraction(c) for i, j, c in data})


def binomial_poly_basis(values: Sequence) -> Poly:
    """Newton forward-difference interpolation at 0, 1, ..., len(values)-1.

    Returns the polynomial f with f(k) = values[k], built from
    f(k) = sum_i C(k, i) * Delta^i f(0).
    """
    diffs = [as_fraction(v) for v in values]
    lead = []
    while diffs:
        lead.append(diffs[0])
        diffs = [b - a for a, b in zip(diffs, diffs[1:])]
    total = Poly()
    for i, d in enumerate(lead):
        if d:
            total = total + Poly.binomial(0, i) * d
    return total


__all__ = ["Poly", "BiPoly", "as_fraction", "fraction_str", "binomial_poly_basis"]
