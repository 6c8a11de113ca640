from fractions import Fraction

import pytest

from orthodl.chow import (C1_UD, C1_UD1, FormalDivisorClass, analog_closed, analog_recursive,
                          chern_relation_reduce, chow_table, degree_closed, degree_via_chern,
                          induct_coefficient, line_bundle_class, pairing_lemma_value,
                          weighted_case_identity)
from orthodl.errors import ParameterError


def test_small_values():
    assert pairing_lemma_value(3) == -2
    assert induct_coefficient(3, 2) == Fraction(-2, 28)
    assert analog_closed(3, 2) == analog_recursive(3, 2) == 16
    assert analog_recursive(5, 2) == 96
    assert degree_via_chern(5, 2) == degree_closed(5, 2) == 24
    assert degree_closed(3, 3) == 416


@pytest.mark.parametrize("p", [3, 5, 7, 11, 97])
def test_curve_degree_is_two(p):
    assert degree_closed(p, 1) == degree_via_chern(p, 1) == 2


def test_chern_relation():
    assert chern_relation_reduce(FormalDivisorClass(-1, 1), 3) == FormalDivisorClass(0, -1)
    assert chern_relation_reduce(FormalDivisorClass(2, -4), 3) == FormalDivisorClass(0, 0)
    assert line_bundle_class(5).beta == -2
    assert (C1_UD1 - C1_UD).alpha == -1 and (2 * C1_UD).alpha == 2


def test_weighted_identity():
    assert weighted_case_identity(3, 2, (1, 30, 81)) == -2
    assert weighted_case_identity(3, 3, (4, 90, 972)) == -2


def test_table_all_match():
    rows = chow_table(100, 40)
    assert len(rows) == 24 * 40 and all(r["match"] for r in rows)
    assert all(r["degree_closed"].denominator == 1 for r in rows)


@pytest.mark.parametrize("bad", [2, 4, 1])
def test_bad_p(bad):
    with pytest.raises(ParameterError):
        degree_closed(bad, 2)
    with pytest.raises(ParameterError):
        analog_recursive(3, 0)
