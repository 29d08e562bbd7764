from __future__ import annotations

import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from enumcomb.linalg import ExactMatrix, bareiss_det_int, det_exact, nullspace, rank, rank_mod_p, rref, solve
from enumcomb.poly import BiPoly, Poly, as_fraction, binomial_poly_basis


def test_poly_basics():
    x = Poly.x()
    p = (x + 1) ** 3
    assert p == Poly([1, 3, 3, 1])
    assert p.degree == 3 and p.leading() == 1
    assert p(2) == 27
    assert p.derivative() == Poly([3, 6, 3])
    q, r = p.divmod(x + 1)
    assert q == (x + 1) ** 2 and r.is_zero()
    assert p.exact_div(x + 1) == (x + 1) ** 2
    assert Poly([2, 4]).gcd(Poly([0, 2, 4])) == Poly([1, 2]).monic()
    assert Poly.binomial(-2, 2)(5) == 3  # C(3, 2)
    assert Poly.from_json(p.to_json()) == p
    assert 1 - x == Poly([1, -1])


def test_interpolation_and_binomial_basis():
    xs = [0, 1, 2, 3]
    ys = [1, 4, 9, 16]
    assert Poly.interpolate(xs, ys) == Poly([1, 2, 1])
    assert binomial_poly_basis(ys) == Poly([1, 2, 1])


def test_as_fraction():
    assert as_fraction("3/6") == Fraction(1, 2)
    with pytest.raises(TypeError):
        as_fraction(0.5)
    with pytest.raises(TypeError):
        as_fraction(True)


def test_bipoly():
    x, y = BiPoly.x(), BiPoly.y()
    t = x * x + 2 * x + 2 * y + y * y
    assert t(1, 1) == 6
    assert t.swap() == t
    assert (x * y).coeff(1, 1) == 1
    assert BiPoly.from_json(t.to_json()) == t
    assert ((y - 1) * (x + y)).divide_by_y_minus_one() == x + y


def test_det_examples():
    assert det_exact(ExactMatrix.identity(5)) == 1
    vander = ExactMatrix([[x ** j for j in range(4)] for x in range(4)])
    assert det_exact(vander) == 12
    assert det_exact(ExactMatrix([[2, 7, 5, 4], [1, 9, 7, 7], [2, 3, 2, 1], [5, 7, 6, 3]])) == -7


def test_det_against_sympy():
    rng = random.Random(9)
    for _ in range(30):
        n = rng.randint(1, 6)
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(n)]
        want = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows]).det()
        assert det_exact(ExactMatrix(rows)) == Fraction(int(want.p), int(want.q))
        ints = [[rng.randint(-20, 20) for _ in range(n)] for _ in range(n)]
        assert bareiss_det_int(ints) == int(sympy.Matrix(ints).det())


def test_polynomial_determinant():
    x = Poly.x()
    m = ExactMatrix([[1 - x, -x], [-x, 1 - x]])
    assert det_exact(m) == Poly([1, -2])
    sx = sympy.Symbol("x")
    sm = sympy.Matrix([[1 - sx, -sx, sx ** 2], [2, 1 + sx, -1], [sx, 0, 3 - sx]])
    ours = ExactMatrix([[1 - x, -x, x ** 2], [Poly([2]), 1 + x, Poly([-1])], [x, Poly(), 3 - x]])
    want = sympy.Poly(sm.det(), sx).all_coeffs()[::-1]
    assert det_exact(ours) == Poly([int(c) for c in want])


def test_rank_rref_solve():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert rank(rows) == 2
    red, piv = rref(rows)
    assert piv == [0, 1]
    assert solve([[2, 1], [1, 3]], [3, 5]) == [Fraction(4, 5), Fraction(7, 5)]
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    ns = nullspace(rows)
    assert len(ns) == 1 and all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert rank_mod_p([[1, 1], [1, -1]], 2) == 1
    assert rank_mod_p([[1, 1], [1, -1]], 3) == 2


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=3, max_size=3), min_size=1, max_size=4))
def test_rank_matches_sympy(rows):
    assert rank(rows) == sympy.Matrix(rows).rank()
