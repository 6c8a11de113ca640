import numpy as np
import pytest

from orthodl import linalg

from orthodl.errors import ParameterError, ResourceLimitError
from orthodl.quadspace import (Subspace, build_space, enumerate_isotropic, form_eval,
                               frob_subspace, intersect, isotropic_line_count_formula,
                               orth_complement, quotient, span, sum_, witt_frame)


@pytest.mark.parametrize("p,d", [(3, 1), (5, 1), (3, 2), (7, 2)])
def test_standard_basis_pairings(p, d):
    V = build_space(p, d)
    T = V.tower(1)
    B = np.asarray(V.basis_change)
    G = V.gram_matrix(T, B)
    n = V.n
    # [e_i, f_j] = delta_ij and e's, f's isotropic
    want = np.zeros((2 * n, 2 * n), dtype=np.int64)
    for i in range(n):
        want[i, n + i] = want[n + i, i] = 1
    assert np.array_equal(G, want)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_frobenius_of_last_pair(p):
    V = build_space(p, 1)
    T = V.tower(1)
    e, f = V.e(2), V.f(2)
    # Frob(e_{d+1}) = -2 f_{d+1} and Frob(f_{d+1}) = -e_{d+1}/2
    assert np.array_equal(T.vfrob(e), T.vmul(T.from_int(-2), f))
    assert np.array_equal(T.vfrob(f), T.vmul(T.inv(T.from_int(-2)), e))


def test_form_eval_example():
    V = build_space(3, 1)
    assert form_eval(V, V.e(1), V.f(1), 1) == 1
    assert form_eval(V, V.e(2), V.e(2), 1) == 0


@pytest.mark.parametrize("p,d,n", [(3, 1, 10), (5, 1, 26), (3, 2, 112), (3, 3, 1066)])
def test_isotropic_line_count(p, d, n):
    V = build_space(p, d)
    assert isotropic_line_count_formula(p, d) == n
    assert sum(1 for _ in enumerate_isotropic(V, 1, 0)) == n


def test_no_rational_maximal_isotropics():
    V = build_space(3, 1)
    assert list(enumerate_isotropic(V, 2, 0)) == []
    assert sum(1 for _ in enumerate_isotropic(V, 2, 1)) == 20


def test_enumeration_budget():
    with pytest.raises(ResourceLimitError):
        list(enumerate_isotropic(build_space(3, 3), 2, 0, budget=50))


def test_subspace_canonical_and_ops():
    V = build_space(5, 2)
    T = V.tower(1)
    rng = np.random.default_rng(0)
    A = rng.integers(0, T.order, size=(3, 6))
    B = rng.integers(0, T.order, size=(3, 6))
    U, W = span(T, A, 6), span(T, B, 6)
    assert span(T, A[::-1], 6) == U
    assert sum_(U, W).rank + intersect(U, W).rank == U.rank + W.rank
    assert U.contains(intersect(U, W))
    assert frob_subspace(frob_subspace(U)) == U


def test_orth_complement():
    V = build_space(3, 2)
    W = next(iter(enumerate_isotropic(V, 1, 0)))
    C = orth_complement(V, W)
    assert C.rank == V.dim - 1 and C.contains(W)


@pytest.mark.parametrize("p,d", [(3, 1), (5, 2), (7, 3)])
def test_witt_frame_for_disguised_form(p, d):
    V = build_space(p, d)
    F = V.tower(0)
    rng = np.random.default_rng(p)
    while True:
        P = rng.integers(0, p, size=(V.dim, V.dim))
        if linalg.det(F, P):
            break
    G = F.matmul(F.matmul(P, V.gram), P.T)
    frame = witt_frame(p, G)
    # frame identifies the disguised form with the standard model
    assert np.array_equal(F.matmul(F.matmul(frame, G), frame.T), V.gram)


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2), (3, 3)])
def test_quotient(p, d):
    V = build_space(p, d)
    W = next(iter(enumerate_isotropic(V, 1, 0)))
    Q = quotient(V, W)
    assert Q.space.d == d - 1
    for L in enumerate_isotropic(Q.space, 1, 0):
        lifted = Q.lift(L)
        assert lifted.rank == 2 and lifted.contains(W)
        assert V.is_totally_isotropic(lifted)
        break


def test_bad_dimensions():
    with pytest.raises(ParameterError):
        build_space(3, -1)
    with pytest.raises(ParameterError):
        list(enumerate_isotropic(build_space(3, 1), 5, 0))
