from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enumcomb.cfinite import (
    NAMED_RECURRENCES,
    LinearRecurrence,
    RationalGF,
    detect_polynomial,
    dominant_growth,
    gf_to_rec,
    guess_recurrence,
    nth_term,
    rec_to_gf,
)
from enumcomb.errors import ImproperRational, NoDominantRealRoot, WindowTooShort
from enumcomb.poly import Poly

FIB = LinearRecurrence((-1, -1), (1, 1))
MD2 = RationalGF(Poly([1, -1]), Poly([1, -3, -1, 1]))


def test_rec_to_gf_examples():
    assert rec_to_gf(FIB) == RationalGF(Poly([1]), Poly([1, -1, -1]))
    assert rec_to_gf(LinearRecurrence((-2,), (1,))) == RationalGF(Poly([1]), Poly([1, -2]))
    z = rec_to_gf(LinearRecurrence((-1,), (0,)))
    assert z.num.is_zero() and z.reduced().den == Poly([1])


def test_gf_to_rec_examples():
    r = gf_to_rec(MD2)
    assert r.order == 3 and [int(a) for a in r.initial] == [1, 2, 7]
    assert r.coeffs == (-3, -1, 1)
    assert gf_to_rec(RationalGF(Poly([1]), Poly([1, -1, -1]))) == FIB
    assert gf_to_rec(RationalGF(Poly([1]), Poly([1, -1]))) == LinearRecurrence((-1,), (1,))
    with pytest.raises(ImproperRational):
        gf_to_rec(RationalGF(Poly([1, 0, 1]), Poly([1, -1])))


def test_nth_term_examples():
    assert nth_term(FIB, 11) == 144
    assert nth_term(NAMED_RECURRENCES["fib"], 11) == 144
    assert nth_term(LinearRecurrence((-2,), (1,)), 30) == 1073741824
    from enumcomb.graphcount import monomer_dimer_transfer, walk_gf

    g = walk_gf(monomer_dimer_transfer(3), "111", "111")
    rec = gf_to_rec(g.reduced()) if g.reduced().is_proper() else None
    assert rec is not None
    assert nth_term(rec, 7) == 196785


def test_roundtrip_and_long_expansion():
    for r in (FIB, gf_to_rec(MD2), LinearRecurrence((Fraction(1, 2), 3, -1), (1, Fraction(-2, 3), 5))):
        assert gf_to_rec(rec_to_gf(r)) == r
        s = rec_to_gf(r).series(50)
        assert list(s.coeffs) == [nth_term(r, n) for n in range(51)]
        assert list(s.coeffs) == r.terms(51)


def test_binet_rounding():
    phi = dominant_growth(rec_to_gf(FIB))
    for n in range(41):
        assert nth_term(FIB, n) == round(phi ** (n + 1) / math.sqrt(5))


def test_detect_polynomial():
    fit = detect_polynomial([0, 1, 4, 9, 16, 25])
    assert fit.degree == 2 and fit.poly == Poly([0, 0, 1])
    assert detect_polynomial([1, 2, 4, 8, 16]) is None
    square = [(n + 1) ** 2 for n in range(5)]
    fit = detect_polynomial(square)
    assert fit.poly == Poly([1, 1]) ** 2
    with pytest.raises(WindowTooShort):
        detect_polynomial([3])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=1, max_size=4), st.integers(0, 4))
def test_detect_polynomial_matches_lagrange(coeffs, extra):
    p = Poly(coeffs)
    vals = [p(n) for n in range(len(coeffs) + 2 + extra)]
    fit = detect_polynomial(vals)
    assert fit is not None
    lag = Poly.interpolate(list(range(len(vals))), vals)
    assert fit.poly == lag == p


def test_dominant_growth():
    assert abs(dominant_growth(RationalGF(Poly([1]), Poly([1, -1, -1]))) - 1.6180) < 1e-4
    assert abs(dominant_growth(MD2) - 3.2143) < 1e-4
    from enumcomb.graphcount import monomer_dimer_transfer, walk_gf

    assert abs(dominant_growth(walk_gf(monomer_dimer_transfer(3), "111", "111")) - 6.21207) < 1e-5
    with pytest.raises(NoDominantRealRoot):
        dominant_growth(RationalGF(Poly([1]), Poly([1, 0, 1])))


def test_guess_recurrence():
    fib = FIB.terms(12)
    r = guess_recurrence(fib, 3)
    assert r.order == 2 and r.coeffs == (-1, -1)
    md = gf_to_rec(MD2).terms(12)
    assert guess_recurrence(md, 4).order == 3
    c = guess_recurrence([5] * 8, 3)
    assert c.order == 1 and c.coeffs == (-1,)
    assert guess_recurrence([1, 2, 3, 5, 7, 11, 13, 17, 19, 23], 2) is None
    with pytest.raises(WindowTooShort):
        guess_recurrence([1, 1, 2], 2)


def test_recurrence_validation_and_json():
    with pytest.raises(ValueError):
        LinearRecurrence((1, 0), (1, 1))
    with pytest.raises(ValueError):
        LinearRecurrence((1,), (1, 1))
    r = gf_to_rec(MD2)
    assert LinearRecurrence.from_json(r.to_json()) == r
    assert RationalGF.from_json(MD2.to_json()) == MD2
