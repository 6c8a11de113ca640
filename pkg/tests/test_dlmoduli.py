from collections import Counter
from fractions import Fraction

import pytest

from orthodl.dlmoduli import (Case, NotYPointError, classify_pair, count_cases,
                              enumerate_Y_points, expected_case_counts, frobenius_intersection_dim,
                              is_Y_point, special_cycle_points, stratum_rank)
from orthodl.errors import ParameterError
from orthodl.flags import MINUS, PLUS, component_of, enumerate_ogr_max, reference_flag
from orthodl.quadspace import build_space, enumerate_isotropic, frob_subspace, span, sum_


@pytest.mark.parametrize("p,d,m,n", [(3, 1, 1, 10), (3, 1, 2, 82), (5, 1, 1, 26), (3, 0, 1, 1),
                                     (3, 2, 1, 280)])
def test_Y_point_counts(p, d, m, n):
    V = build_space(p, d)
    for comp in (PLUS, MINUS):
        pts = enumerate_Y_points(V, m, comp)
        assert len(pts) == len(set(pts)) == n
        assert all(component_of(V, pt.upper) is comp for pt in pts)


def test_Y_filter_agrees_with_definition():
    V = build_space(3, 1)
    Ls = list(enumerate_ogr_max(V, 2, component=PLUS))
    direct = {L for L in Ls if frobenius_intersection_dim(L) == V.d}
    assert direct == {pt.upper for pt in enumerate_Y_points(V, 2)}


def test_is_Y_point():
    V = build_space(3, 2)
    _, up = reference_flag(V, 1)
    pt = is_Y_point(V, up)
    assert pt.component is PLUS and stratum_rank(pt) == 0
    assert pt.lower.rank == 2
    bad = next(L for L in enumerate_ogr_max(V, 1) if frobenius_intersection_dim(L) != V.d)
    with pytest.raises(NotYPointError) as info:
        is_Y_point(V, bad)
    assert info.value.intersection_dim == frobenius_intersection_dim(bad)


def test_strata_over_quadratic_extension():
    V = build_space(3, 1)
    ranks = Counter(stratum_rank(pt) for pt in enumerate_Y_points(V, 2))
    assert ranks == {0: 10, 1: 72}
    # every F_9-point is special
    assert set(stratum_rank(pt) for pt in enumerate_Y_points(V, 1)) == {0}


def test_flag_point_json():
    V = build_space(3, 1)
    js = enumerate_Y_points(V, 1)[0].to_json()
    assert set(js) == {"L_d", "L_d+1", "component", "level", "stratum_rank"}


def test_special_cycle_points():
    V = build_space(3, 2)
    W = next(iter(enumerate_isotropic(V, 1, 0)))
    pts = special_cycle_points(V, W, 1)
    assert len(pts) == 20  # both families of the d = 1 quotient
    for pt in pts:
        assert is_Y_point(V, pt.upper) is not None
        assert pt.lower.contains(span(pt.lower.tower, W.rows, V.dim))
    assert len(special_cycle_points(V, W, 1, component=PLUS)) == 10


def test_classify_pair_cases():
    V = build_space(3, 2)
    lines = list(enumerate_isotropic(V, 1, 0))
    Wp = lines[0]
    seen = Counter()
    for W in lines:
        pc = classify_pair(V, W, Wp)
        seen[pc.case] += 1
        if pc.case is Case.ISOTROPIC_SUM:
            assert V.is_totally_isotropic(sum_(W, Wp))
    assert seen == {Case.CONTAINED: 1, Case.ISOTROPIC_SUM: 30, Case.NON_ISOTROPIC_SUM: 81}
    assert classify_pair(V, Wp, Wp).pairing_value == Fraction(-2)


@pytest.mark.parametrize("p,d,want", [(3, 2, (1, 30, 81)), (5, 2, (1, 130, 625)),
                                      (3, 1, (0, 10, 0))])
def test_count_cases(p, d, want):
    V = build_space(p, d)
    Wp = next(iter(enumerate_isotropic(V, d - 1, 0)))
    assert count_cases(V, Wp) == want
    assert want[:2] == expected_case_counts(p, d)


def test_labels_must_be_rational():
    V = build_space(3, 2)
    _, up = reference_flag(V, 1)
    e3 = span(up.tower, up.rows[2:3], V.dim)
    with pytest.raises(ParameterError):
        count_cases(V, e3)
