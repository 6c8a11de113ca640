from collections import Counter

import numpy as np
import pytest

from orthodl.errors import ParameterError
from orthodl.flags import (MINUS, PLUS, ComponentTag, cells, component_of, enumerate_ogr_max,
                           ogr_count, plucker_batch, plucker_coords, reference_flag, split_frame)
from orthodl.quadspace import build_space, frob_subspace


def test_cells_cover_both_families():
    for n in range(1, 5):
        cs = cells(n)
        assert len(cs) == 2**n
        assert Counter(c.component for c in cs) == {PLUS: 2 ** (n - 1), MINUS: 2 ** (n - 1)}
        # the cell sizes add up to the point count
        for q in (3, 9):
            assert sum(c.size(q) for c in cs) == ogr_count(q, n)


@pytest.mark.parametrize("p,d,m,n", [(3, 0, 1, 2), (3, 1, 1, 20), (5, 1, 1, 52), (3, 1, 2, 164),
                                     (3, 2, 1, 1640)])
def test_ogr_enumeration(p, d, m, n):
    V = build_space(p, d)
    Ls = list(enumerate_ogr_max(V, m))
    assert len(Ls) == len(set(Ls)) == n
    assert all(V.is_totally_isotropic(L) and L.rank == d + 1 for L in Ls)
    comps = Counter(component_of(V, L) for L in Ls)
    assert comps[PLUS] == comps[MINUS] == n // 2


def test_component_filter_matches_component_of():
    V = build_space(3, 1)
    for tag in (PLUS, MINUS):
        assert all(component_of(V, L) is tag for L in enumerate_ogr_max(V, 1, component=tag))


def test_reference_flag():
    V = build_space(3, 2)
    low, up = reference_flag(V, 1)
    assert up.contains(low) and component_of(V, up) is PLUS
    assert component_of(V, frob_subspace(up)) is MINUS


def test_component_tag():
    assert ComponentTag.parse("+") is PLUS and ComponentTag.parse("minus") is MINUS
    assert PLUS.flipped() is MINUS and str(MINUS) == "-"


def test_split_frame_roundtrip():
    V = build_space(5, 2)
    fr = split_frame(V, 1)
    T = fr.T
    rng = np.random.default_rng(0)
    M = rng.integers(0, T.order, size=(4, 3, V.dim))
    assert np.array_equal(fr.from_standard(fr.to_standard(M)), M)
    # frob in split coordinates matches entrywise frob in standard coordinates
    assert np.array_equal(fr.to_standard(fr.frob(M)), T.vfrob(fr.to_standard(M)))


def test_plucker_batch_matches_single():
    V = build_space(3, 1)
    Ls = list(enumerate_ogr_max(V, 1))[:12]
    T = Ls[0].tower
    P = plucker_batch(T, np.stack([L.rows for L in Ls]))
    for L, row in zip(Ls, P):
        assert plucker_coords(L).coords == tuple(int(x) for x in row)
    assert len({tuple(r) for r in P}) == len(Ls)


def test_component_of_rejects_non_maximal():
    V = build_space(3, 1)
    L = next(iter(enumerate_ogr_max(V, 1)))
    with pytest.raises(ParameterError):
        component_of(V, type(L)(L.tower, L.rows[:1]))
