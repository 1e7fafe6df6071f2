"""Published numerical constants consumed as inputs.

Names follow the quantities they denote; the values are the published ones,
kept verbatim so every report can compare against them.
"""

from fractions import Fraction

# blob-balance inequality: 2 sum x_i x_j - 2 f - a sum x_i^2 >= LHS_THRESHOLD
A = 4.99
LHS_THRESHOLD = 0.000149043538

# upper bound on the net density (flag-algebra input, not reproduced here)
NET_DENSITY_UPPER = 0.017202164

# outputs of the four symmetric quadratic programs
X_MIN = 0.165791592261
X_MAX = 0.167541741072
X0_MAX = 0.00165262197319
F_MAX = 0.0000027521
X_CAP = X_MAX + X0_MAX

# limit density of the iterated blow-up
LIMIT_DENSITY = Fraction(24, 1555)

# funky-degree thresholds per (x blob, w blob), in the published row order
DF_ROWS = ((1, 2), (1, 4), (1, 5), (4, 1), (4, 2), (4, 5))
DF_THRESHOLDS = (0.0433316, 0.0610118, 0.0433316, 0.0322447, 0.0349529, 0.0504913)
DF_OUTER = 0.0433316
DF_INNER = 0.0322447

# published bound polynomials, coefficients of
# x_0, x_max^4, d x_max^3, d^2 x_max^2, d^3 x_max
PUBLISHED_BOUNDS = {
    (1, 2): (Fraction(1, 6), Fraction(1, 12), Fraction(1), Fraction(1, 4), Fraction(0)),
    (1, 4): (Fraction(1, 6), Fraction(0), Fraction(1, 2), Fraction(1, 2), Fraction(1, 6)),
    (1, 5): (Fraction(1, 6), Fraction(1, 12), Fraction(1), Fraction(1, 4), Fraction(0)),
    (4, 1): (Fraction(1, 6), Fraction(0), Fraction(13, 6), Fraction(1, 8), Fraction(1, 6)),
    (4, 2): (Fraction(1, 6), Fraction(1, 12), Fraction(3, 2), Fraction(1, 4), Fraction(0)),
    (4, 5): (Fraction(1, 6), Fraction(0), Fraction(1), Fraction(1, 8), Fraction(1, 6)),
}

# funky-pair exclusion budgets: published totals per sub-case
PUBLISHED_BUDGETS = {
    "inner-inner": Fraction(3) + Fraction(16, 3),
    "outer-inner-non-edge": Fraction(13, 6) + Fraction(19, 6) + 2,
    "outer-inner-edge": Fraction(2) + Fraction(5, 2) + Fraction(3, 2),
    "outer-outer": Fraction(8),
}
BUDGET_LIMIT = 9.522
BUDGET_GAIN = 0.00069

# objective cap for the 12-variable neighbourhood program
NEIGHBOURHOOD_THRESHOLD = 0.0001275
