"""Five routes to the Fibonacci numbers, and why they agree.

Tilings of a 1 x n strip by squares and dominoes satisfy a_n = a_{n-1} + a_{n-2}.
Each step below reaches the same numbers from a different description.
"""

from __future__ import annotations

import math

from enumcomb.cfinite import NAMED_RECURRENCES, RationalGF, dominant_growth, gf_to_rec, nth_term
from enumcomb.detcount import GridRegion, kasteleyn_match_count
from enumcomb.poly import Poly
from enumcomb.powser import Series, weight_derivative

N = 12

# 1. the recurrence itself, jumped to term 11 by matrix powers
print("a_11 from the recurrence:", nth_term(NAMED_RECURRENCES["fib"], 11))

# 2. the generating function 1/(1 - x - x^2), inverted as a power series
gf = Series([1, -1, -1], N).inverse()
print("series inverse:          ", gf.as_ints())

# 3. sequences of tiles: 1/(1 - (x + x^2)) by composition
seq = Series.geometric(1, N).compose(Series([0, 1, 1], N))
print("sequence construction:   ", seq.as_ints())

# 4. choosing k dominoes among n - k tiles
print("binomial sums:           ", [sum(math.comb(n - k, k) for k in range(n // 2 + 1)) for n in range(N + 1)])

# 5. perfect matchings of a 2 x n grid, counted by a Pfaffian
print("2 x n domino tilings:    ", [kasteleyn_match_count(GridRegion.rectangle(2, n)) for n in range(1, N + 1)])

# growth rate: the smallest root of the denominator gives the golden ratio
fib = RationalGF(Poly([1]), Poly([1, -1, -1]))
print(f"growth rate {dominant_growth(fib):.10f}, golden ratio {(1 + math.sqrt(5)) / 2:.10f}")
rec = gf_to_rec(fib)
print("recurrence read off the GF: coefficients", [int(c) for c in rec.coeffs], "initial", [int(c) for c in rec.initial])

# total number of vertical tiles over all tilings: mark dominoes with a weight v
# and differentiate at v = 1; the answer is x/(1 - x - x^2)^2
marked = weight_derivative(lambda v: Series.rational([1], [1, -v, -1], 9))
print("dominoes summed over tilings:", marked.as_ints())
print("from x/(1-x-x^2)^2:          ", Series.rational([0, 1], Poly([1, -1, -1]) ** 2, 9).as_ints())
