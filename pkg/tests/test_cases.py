import math
from fractions import Fraction

import pytest

from netinduce import cases, constants


ZERO_EXTRA = {(1, 2): 2, (1, 4): 0, (1, 5): 2, (4, 1): 0, (4, 2): 2, (4, 5): 0}


def test_pattern_and_types():
    assert cases.pattern(1, 4) and cases.pattern(4, 5) and not cases.pattern(1, 2)
    assert cases.funky_type(1, 2) == "edge"
    assert cases.funky_type(1, 4) == "non-edge"
    with pytest.raises(ValueError):
        cases.check_funky(1, 4, "edge")


def test_configuration_counts():
    for row, zero in ZERO_EXTRA.items():
        confs = cases.enumerate_configurations(*row, cases.funky_type(*row))
        assert sum(c.extra_funky == 0 for c in confs) == zero
        assert confs, row


def test_signature_coefficient():
    assert cases.signature_coefficient(((1, False), (1, False), (2, True))) == Fraction(1, 2)


@pytest.mark.parametrize("row", [(1, 2), (1, 5), (4, 2), (4, 5)])
def test_rows_matching_published(row):
    assert cases.bound_polynomial(*row).table_row() == constants.PUBLISHED_BOUNDS[row]


@pytest.mark.parametrize("row", [(1, 4), (4, 1)])
def test_rows_differing_from_published(row):
    # these two rows re-derive to different polynomials; the discrepancy is recorded
    assert cases.bound_polynomial(*row).table_row() != constants.PUBLISHED_BOUNDS[row]


def test_published_polynomials_reproduce_thresholds():
    for row, df in zip(constants.DF_ROWS, constants.DF_THRESHOLDS):
        poly = cases.polynomial_from_row(constants.PUBLISHED_BOUNDS[row])
        assert cases.solve_df_threshold(poly) == pytest.approx(df, abs=1e-6)


def test_threshold_monotone_in_polynomial():
    small = cases.polynomial_from_row((Fraction(1, 6), 0, Fraction(1, 2), 0, 0))
    big = cases.polynomial_from_row((Fraction(1, 6), 0, 1, 0, 0))
    assert cases.solve_df_threshold(big) < cases.solve_df_threshold(small)


def test_threshold_no_crossing():
    zero = cases.polynomial_from_row((0, 0, 0, 0, 0))
    assert cases.solve_df_threshold(zero) == pytest.approx(constants.X_MIN, abs=1e-11)
    with pytest.raises(ValueError):
        cases.solve_df_threshold(zero, x_min=2.0)


def test_quadratic_on_simplex():
    q = {(0, 0): Fraction(1), (1, 1): Fraction(1), (0, 1): Fraction(4)}
    # max of x^2 + y^2 + 4xy with x + y = 1 is 3/2 at x = y = 1/2
    assert cases.max_quadratic_on_simplex(q, [0, 1]) == Fraction(3, 2)


def test_budgets():
    assert cases.claim5_budget("inner-inner") == Fraction(25, 3)
    assert cases.claim5_budget("outer-inner-non-edge") == Fraction(22, 3)
    assert cases.claim5_budget("outer-inner-edge") == 6
    assert cases.claim5_budget("outer-outer") == 6  # printed value is 8
    with pytest.raises(ValueError):
        cases.claim5_budget("nope")


def test_admissible_c():
    c = cases.claim5_admissible_c(f_cap=constants.F_MAX)
    assert 9.2 < c < 9.3
    assert math.isinf(cases.claim5_admissible_c(d_f_cap=0.0))
    with pytest.raises(ValueError):
        cases.claim5_admissible_c(gain=0.0)
