from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from enumcomb.errors import BadConstantTerm, CompositionDiverges, NotCompositionallyInvertible, NotInvertible
from enumcomb.oracles import alternating_permutations, derangements, integer_partitions
from enumcomb.powser import (
    PartitionSpec,
    Series,
    egf_ogf_convert,
    lagrange_inverse,
    parse_series,
    partition_gf,
    ps_analytic,
    ps_arith,
    ps_calculus,
    ps_compose,
    ps_hadamard,
    ps_inverse,
    weight_derivative,
)

N = 12


def ints(s):
    assert all(c.denominator == 1 for c in s.coeffs)
    return [int(c) for c in s.coeffs]


def times_factorial(s):
    return [c * math.factorial(n) for n, c in enumerate(s.coeffs)]


def test_mul_examples():
    assert ps_arith("mul", Series([1, 1], 4), Series([1, -1], 4)) == Series([1, 0, -1], 4)
    fib = Series([1, 1, 2, 3, 5, 8], 5)
    assert ps_arith("mul", Series([1, -1, -1], 5), fib) == Series.one(5)


def test_pentagonal_series():
    signed = partition_gf(PartitionSpec(distinct=True, part_weight=Fraction(-1)), 12)
    want = [0] * 13
    for k, v in {0: 1, 1: -1, 2: -1, 5: 1, 7: 1, 12: -1}.items():
        want[k] = v
    assert ints(signed) == want


def test_add_sub_truncate_to_smaller_order():
    s = ps_arith("add", Series([1, 2, 3], 2), Series([1, 1, 1, 1, 1], 4))
    assert s.order == 2 and ints(s) == [2, 3, 4]
    assert ints(ps_arith("sub", Series([1, 2], 1), Series([1, 2], 1))) == [0, 0]
    with pytest.raises(ValueError):
        ps_arith("div", Series([1]), Series([1]))


def test_inverse():
    assert ints(ps_inverse(Series([1, -1], N))) == [1] * (N + 1)
    assert ints(ps_inverse(Series([1, -1, -1], 7))) == [1, 1, 2, 3, 5, 8, 13, 21]
    assert ps_inverse(Series([1], 0)) == Series([1], 0)
    with pytest.raises(NotInvertible):
        ps_inverse(Series([0, 1], 3))


def test_compose():
    geo = Series([1] * (N + 1), N)
    assert ints(ps_compose(geo, Series([0, 1, 1], N)))[:5] == [1, 1, 2, 3, 5]
    a = Series([3, 1, 4, 1, 5], 4)
    assert ps_compose(a, Series.x(4)) == a
    cyc = ps_analytic("log", ps_inverse(Series([1, -1], N)))
    assert ps_compose(Series.exp_series(N), cyc) == geo
    with pytest.raises(CompositionDiverges):
        ps_compose(a, Series([1, 1], 4))


def test_analytic_examples():
    inv = ps_analytic("exp", Series([0, 1, Fraction(1, 2)], 5))
    assert times_factorial(inv) == [1, 1, 2, 4, 10, 26]
    root = ps_analytic("sqrt", Series([1, -4], N))
    catalan = (Series.one(N) - root).shift_down(1) * Fraction(1, 2)
    assert ints(catalan)[:6] == [1, 1, 2, 5, 14, 42]
    cycles = ps_analytic("log", ps_inverse(Series([1, -1], 8)))
    assert times_factorial(cycles)[1:] == [math.factorial(n - 1) for n in range(1, 9)]


def test_analytic_preconditions():
    with pytest.raises(BadConstantTerm):
        ps_analytic("exp", Series([1, 1], 3))
    with pytest.raises(BadConstantTerm):
        ps_analytic("log", Series([2, 1], 3))
    with pytest.raises(BadConstantTerm):
        ps_analytic("sqrt", Series([0, 1], 3))
    with pytest.raises(BadConstantTerm):
        ps_analytic("sin", Series([1, 1], 3))
    with pytest.raises(ValueError):
        ps_analytic("pow_r", Series([1, 1], 3))


def test_pow_generalized_binomial():
    s = ps_analytic("pow_r", Series([1, 1], 5), Fraction(1, 2))
    want = [Fraction(1), Fraction(1, 2), Fraction(-1, 8), Fraction(1, 16), Fraction(-5, 128), Fraction(7, 256)]
    assert list(s.coeffs) == want


def test_calculus():
    d = ps_calculus("derivative", ps_inverse(Series([1, -1], N)))
    assert d.order == N - 1 and ints(d) == list(range(1, N + 1))
    lg = ps_calculus("integrate", ps_inverse(Series([1, 1], N)))
    assert lg.order == N + 1
    assert list(lg.coeffs) == [Fraction(0)] + [Fraction((-1) ** (n - 1), n) for n in range(1, N + 2)]


def test_vertical_tile_derivative():
    tile = weight_derivative(lambda v: Series.rational([1], [1, -v, -1], 9))
    direct = Series.rational([0, 1], [1, -2, -1, 2, 1], 9)
    assert tile.coeffs == direct.coeffs
    # brute force: total vertical dominoes over all tilings of 2 x n
    def vertical_total(n):
        # tilings are words in V (width 1) and H (width 2)
        def go(k):
            if k == 0:
                return [(0,)]
            out = [(t[0] + 1,) for t in go(k - 1)]
            if k >= 2:
                out += go(k - 2)
            return out

        return sum(t[0] for t in go(n))

    assert ints(tile) == [vertical_total(n) for n in range(10)]


def test_hadamard():
    central = Series([math.comb(2 * n, n) for n in range(4)], 3)
    assert ints(ps_hadamard(central, central)) == [1, 4, 36, 400]
    a = Series([3, 1, 4, 1, 5], 4)
    assert ps_hadamard(a, Series([1] * 5, 4)) == a
    assert ps_hadamard(Series.geometric(2, 6), Series.geometric(3, 6)) == Series.geometric(6, 6)


def test_lagrange_inverse():
    b = lagrange_inverse(Series([0, 1, -1], N))
    cat = [math.comb(2 * m, m) // (m + 1) for m in range(N)]
    assert ints(b) == [0] + cat
    xe = Series.exp_series(N).compose(Series([0, -1], N)) * Series.x(N)
    r = lagrange_inverse(xe)
    assert [r[n] * math.factorial(n) for n in range(1, N + 1)] == [n ** (n - 1) for n in range(1, N + 1)]
    assert lagrange_inverse(Series.x(5)) == Series.x(5)
    with pytest.raises(NotCompositionallyInvertible):
        lagrange_inverse(Series([1, 1], 4))
    with pytest.raises(NotCompositionallyInvertible):
        lagrange_inverse(Series([0, 0, 1], 4))


def test_partition_examples():
    assert ints(partition_gf(PartitionSpec(), 9)) == [sum(1 for _ in integer_partitions(n)) for n in range(10)]
    assert ints(partition_gf(PartitionSpec(), 9)) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]
    odd = partition_gf(PartitionSpec(parts=lambda k: k % 2 == 1), 12)
    distinct = partition_gf(PartitionSpec(distinct=True), 12)
    assert odd == distinct
    assert ints(partition_gf(PartitionSpec(parts={1, 2}), 10)) == [n // 2 + 1 for n in range(11)]
    with pytest.raises(ValueError):
        PartitionSpec(parts=set()).allowed(4)


def test_partition_max_parts_against_brute():
    got = ints(partition_gf(PartitionSpec(max_parts=3), 12))
    assert got == [sum(1 for p in integer_partitions(n) if len(p) <= 3) for n in range(13)]
    got = ints(partition_gf(PartitionSpec(parts={1, 3, 4}, distinct=True, max_parts=2), 10))
    want = [sum(1 for p in integer_partitions(n) if len(p) <= 2 and set(p) <= {1, 3, 4} and len(set(p)) == len(p))
            for n in range(11)]
    assert got == want


def test_egf_ogf():
    assert ints(egf_ogf_convert("egf_to_ogf", Series([1] * 5, 4))) == [1, 1, 2, 6, 24]
    e = egf_ogf_convert("ogf_to_egf", Series([1] * 6, 5))
    assert list(e.coeffs) == [Fraction(1, math.factorial(n)) for n in range(6)]
    a = Series([3, 1, 4, 1, 5], 4)
    assert egf_ogf_convert("egf_to_ogf", egf_ogf_convert("ogf_to_egf", a)) == a


def test_derangements():
    s = ps_arith("mul", Series.exp_series(10).compose(Series([0, -1], 10)), ps_inverse(Series([1, -1], 10)))
    closed = [sum(Fraction((-1) ** k, math.factorial(k)) for k in range(n + 1)) * math.factorial(n) for n in range(11)]
    got = times_factorial(s)
    assert got == closed
    assert got[:8] == [derangements(n) for n in range(8)]


def test_domino_towers():
    # H = x H^2 + x H + x  =>  H = (1 - x - sqrt((1-x)^2 - 4x^2)) / (2x)
    order = 12
    disc = Series([1, -2, -3], order)
    h = (Series([1, -1], order) - ps_analytic("sqrt", disc)).shift_down(1) * Fraction(1, 2)
    one_minus = Series.one(h.order) - h
    x_series = h * ps_inverse(one_minus) * ps_inverse(one_minus)
    assert ints(x_series)[1:11] == [3 ** (n - 1) for n in range(1, 11)]


def test_sec_plus_tan():
    x = Series.x(8)
    e = ps_inverse(ps_analytic("cos", x)) + ps_analytic("sin", x) * ps_inverse(ps_analytic("cos", x))
    got = times_factorial(e)
    assert got == [alternating_permutations(n) for n in range(9)][: len(got)]
    assert got[:8] == [1, 1, 1, 2, 5, 16, 61, 272]


def test_motzkin_recurrence():
    order = 24
    root = ps_analytic("sqrt", Series([1, -2, -3], order))
    m = (Series([1, -1], order) - root).shift_down(2) * Fraction(1, 2)
    mz = ints(m)
    assert mz[:7] == [1, 1, 2, 4, 9, 21, 51]
    for n in range(2, 21):
        assert (n + 2) * mz[n] == (2 * n + 1) * mz[n - 1] + (3 * n - 3) * mz[n - 2]


def test_parse_series():
    s = parse_series("1, -1/2 ,3", 4)
    assert list(s.coeffs) == [1, Fraction(-1, 2), 3, 0, 0]
    assert Series.from_json(s.to_json()) == s


coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)


def unit_series(lead=None):
    return st.lists(coef, min_size=1, max_size=8).map(lambda cs: Series([lead if lead is not None else 1] + cs, 8))


@settings(max_examples=60, deadline=None)
@given(unit_series(), st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(lambda c: c != 0))
def test_inverse_property(f, c):
    f = f * c
    assert ps_arith("mul", f, ps_inverse(f)) == Series.one(f.order)


@settings(max_examples=40, deadline=None)
@given(unit_series(1))
def test_exp_log_sqrt_roundtrip(f):
    assert ps_analytic("exp", ps_analytic("log", f)) == f
    r = ps_analytic("sqrt", f)
    assert r * r == f


@settings(max_examples=40, deadline=None)
@given(st.lists(coef, min_size=1, max_size=7), st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool))
def test_lagrange_both_orders(tail, a1):
    a = Series([0, a1] + tail, 8)
    b = lagrange_inverse(a)
    assert ps_compose(a, b) == Series.x(8)
    assert ps_compose(b, a) == Series.x(8)
