import numpy as np
import pytest

from orthodl.degree_lab import (HilbertProfile, PointCloud, build_cloud, conic_line_counts,
                                degree_from_hilbert, differences, hilbert_function,
                                hilbert_profile, verify_degree)
from orthodl.errors import (CloudTooSmallError, NotStabilizedError, ParameterError,
                            ResourceLimitError)


@pytest.fixture(scope="module")
def conic():
    return build_cloud(3, 1, 1)


def test_conic_values(conic):
    assert conic.size == 10 and conic.ambient_dim == 5 and conic.is_distinct()
    assert hilbert_function(conic, 0) == 1
    assert hilbert_function(conic, 1) == 3
    assert hilbert_function(conic, 2) == 5


def test_product_route_matches_monomials():
    cloud = build_cloud(3, 2, 1)
    assert hilbert_profile(cloud, 3).values == hilbert_profile(cloud, 3, method="monomial").values
    conic = build_cloud(5, 1, 1)
    assert hilbert_profile(conic, 4).values == hilbert_profile(conic, 4, method="monomial").values


def test_independent_of_order_and_representatives(conic):
    T = conic.tower
    rng = np.random.default_rng(5)
    perm = rng.permutation(conic.size)
    scale = rng.integers(1, T.order, size=conic.size)
    other = PointCloud(T, T.vmul(scale[:, None], conic.coords[perm]))
    assert hilbert_profile(other, 4).values == hilbert_profile(conic, 4).values


def test_subsample_consistency():
    cloud = build_cloud(7, 1, 1)
    full = hilbert_profile(cloud, 3).values
    for seed in range(3):
        assert hilbert_profile(cloud.subset(20, seed), 3).values == full


def test_degree_extraction():
    assert degree_from_hilbert(HilbertProfile((1, 1, 1)), 0) == 1
    assert degree_from_hilbert(HilbertProfile((1, 3, 5, 7)), 1) == 2
    assert degree_from_hilbert(HilbertProfile((1, 10, 34, 74, 130, 202, 290)), 2) == 16
    assert differences(HilbertProfile((1, 10, 34, 74, 130)), 2) == [15, 16, 16]
    with pytest.raises(NotStabilizedError):
        degree_from_hilbert(HilbertProfile((1, 3, 6, 10)), 1)
    with pytest.raises(NotStabilizedError):
        degree_from_hilbert(HilbertProfile((1, 3, 5, 7, 10)), 1)
    with pytest.raises(NotStabilizedError):
        degree_from_hilbert(HilbertProfile((1, 3)), 1)


def test_profile_invariants():
    with pytest.raises(ParameterError):
        HilbertProfile((2, 3))
    with pytest.raises(ParameterError):
        HilbertProfile((1, 3, 2))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_verify_degree_curve(p):
    rep = verify_degree(p, 1, 1, 4)
    assert rep["pass"] and rep["degree"] == 2
    assert rep["profile"] == [1, 3, 5, 7, 9]
    assert rep["elapsed_ms"] is None


def test_cloud_too_small():
    with pytest.raises(CloudTooSmallError):
        verify_degree(3, 1, 1, 5)


def test_budgets(conic):
    with pytest.raises(ResourceLimitError):
        hilbert_profile(conic, 3, method="monomial", max_columns=20)
    with pytest.raises(ResourceLimitError):
        hilbert_profile(build_cloud(3, 2, 1), 3, budget_ops=1000)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_conic_line_cross_oracle(p):
    res = conic_line_counts(build_cloud(p, 1, 1), samples=40, seed=1)
    assert res["max_roots"] == 2 and max(res["histogram"]) == 2
    assert res["roots_in_cloud"]


def test_conic_oracle_needs_a_plane():
    with pytest.raises(ParameterError):
        conic_line_counts(build_cloud(3, 2, 1))
