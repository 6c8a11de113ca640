"""
Points of the Deligne-Lusztig variety Y_V, its strata and special cycles.

At a field-valued point the moduli conditions are rank conditions:
(L_d, L_{d+1}) lies on Y_V iff dim(L_{d+1} + Frob*L_{d+1}) = d + 2, and then
L_d = L_{d+1} cap Frob*L_{d+1}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .errors import ParameterError, ResourceLimitError
from .flags import (MINUS, PLUS, ComponentTag, cells, component_of, iter_cell_blocks,
                    partner, split_frame)
from .quadspace import (DEFAULT_BUDGET, Subspace, change_level, enumerate_isotropic,
                        frob_subspace, intersect, quotient, span, sum_)


@dataclass(frozen=True, eq=False)
class FlagPoint:
    """A geometric point (L_d, L_{d+1}) of Y_V; ``upper`` is L_{d+1}."""

    upper: Subspace
    component: ComponentTag
    level: int

    @cached_property
    def lower(self):
        return intersect(self.upper, frob_subspace(self.upper))

    def __eq__(self, other):
        return isinstance(other, FlagPoint) and self.upper == other.upper

    def __hash__(self):
        return hash(self.upper)

    def to_json(self, with_stratum=True):
        out = {
            "L_d": self.lower.to_json(),
            "L_d+1": self.upper.to_json(),
            "component": str(self.component),
            "level": self.level,
        }
        if with_stratum:
            out["stratum_rank"] = stratum_rank(self)
        return out


class NotYPointError(ParameterError):
    def __init__(self, intersection_dim, expected):
        super().__init__("dim(L cap Frob*L) = %d, expected %d" % (intersection_dim, expected))
        self.intersection_dim = intersection_dim


def frobenius_intersection_dim(L):
    return intersect(L, frob_subspace(L)).rank


def is_Y_point(space, L, m=None):
    """The FlagPoint over L, or NotYPointError carrying dim(L cap Frob*L)."""
    if m is not None and L.tower.m != m:
        raise ParameterError("subspace lives at level %d, not %d" % (L.tower.m, m))
    comp = component_of(space, L)
    k = frobenius_intersection_dim(L)
    if k != space.d:
        raise NotYPointError(k, space.d)
    return FlagPoint(L, comp, L.tower.m)


def _rank_one_mask(T, R):
    """Which matrices of a stack (S, n, n) have rank exactly one."""
    S, n, _ = R.shape
    ok = np.any(R.reshape(S, -1) != 0, axis=1)
    for i in range(n):
        for k in range(i + 1, n):
            for j in range(n):
                for l in range(j + 1, n):
                    minor = T.vsub(T.vmul(R[:, i, j], R[:, k, l]), T.vmul(R[:, i, l], R[:, k, j]))
                    ok &= minor == 0
    return ok


def y_mask(frame, cell, Ms):
    """
    Vectorised Y_V test for split-frame bases of one cell: with L the graph
    of A, Frob*L meets L in dimension d iff the residual W - U A of the
    Frobenius basis has rank one.
    """
    T = frame.T
    n = Ms.shape[1]
    piv = list(cell.pivots)
    partners = [partner(n, c) for c in piv]
    B = frame.frob(Ms)
    A = Ms[:, :, partners]
    U = B[:, :, piv]
    R = B[:, :, partners].copy()
    for i in range(n):
        for j in range(n):
            acc = R[:, i, j]
            for k in range(n):
                acc = T.vsub(acc, T.vmul(U[:, i, k], A[:, k, j]))
            R[:, i, j] = acc
    return _rank_one_mask(T, R)


def iter_Y_bases(space, m, component, budget=DEFAULT_BUDGET):
    """Yield (cell, split-frame bases) of Y-points, block by block."""
    if m < 1:
        raise ParameterError("Y_V points need m >= 1")
    comp = ComponentTag.parse(component)
    frame = split_frame(space, m)
    spent = 0
    for cell in cells(space.n):
        if cell.component is not comp:
            continue
        for _, Ms in iter_cell_blocks(frame.T, space.n, cell):
            spent += len(Ms) * space.n**3
            if budget is not None and spent > budget:
                raise ResourceLimitError("Y enumeration budget exceeded", spent=spent, budget=budget)
            keep = y_mask(frame, cell, Ms)
            if keep.any():
                yield cell, Ms[keep]


def enumerate_Y_points(space, m, component=PLUS, budget=DEFAULT_BUDGET):
    comp = ComponentTag.parse(component)
    frame = split_frame(space, m)
    T = frame.T
    out = []
    for _, Ms in iter_Y_bases(space, m, comp, budget):
        for M in frame.to_standard(Ms):
            out.append(FlagPoint(Subspace(T, M), comp, m))
    return out


def stratum_rank(point):
    """Smallest r with L^(r+1) = L^(r+2) where L^(i+1) = L^(i) cap Frob*L^(i)."""
    chain = [point.upper]
    while True:
        cur = chain[-1]
        nxt = intersect(cur, frob_subspace(cur))
        if len(chain) >= 2 and nxt == cur:
            return len(chain) - 2
        chain.append(nxt)


def special_cycle_points(space, W, m, component=None):
    """
    Points of j_{W,V}(Y_{W^perp/W}): Y-points of the quotient lifted through
    W^perp -> W^perp/W.  ``component`` filters by the family in V.
    """
    Q = quotient(space, W)
    want = None if component is None else ComponentTag.parse(component)
    T = space.tower(m)
    out = []
    for comp in (PLUS, MINUS):
        for pt in enumerate_Y_points(Q.space, m, comp):
            L = Q.lift(pt.upper)
            c = component_of(space, L)
            if want is None or c is want:
                out.append(FlagPoint(L, c, m))
    return out


# -- pair classification (cycle intersections on the lines/(d-1)-spaces) ------

class Case(enum.Enum):
    CONTAINED = "Contained"
    ISOTROPIC_SUM = "IsotropicSum"
    NON_ISOTROPIC_SUM = "NonIsotropicSum"


@dataclass(frozen=True)
class PairCase:
    case: Case
    pairing_value: Fraction


def pair_values(p):
    return {
        Case.CONTAINED: Fraction(-p + 1),
        Case.ISOTROPIC_SUM: Fraction(1),
        Case.NON_ISOTROPIC_SUM: Fraction(0),
    }


def _rational(space, W):
    F = space.tower(0)
    try:
        W = change_level(W, F)
    except ParameterError:
        raise ParameterError("cycle labels must be F_p-rational")
    if not space.is_totally_isotropic(W):
        raise ParameterError("cycle label is not totally isotropic")
    return W


def classify_pair(space, W, Wp):
    W, Wp = _rational(space, W), _rational(space, Wp)
    if W.rank != 1 or Wp.rank != space.d - 1:
        raise ParameterError("need dim W = 1 and dim W' = d - 1")
    vals = pair_values(space.p)
    if Wp.contains(W):
        case = Case.CONTAINED
    elif space.is_totally_isotropic(sum_(W, Wp)):
        case = Case.ISOTROPIC_SUM
    else:
        case = Case.NON_ISOTROPIC_SUM
    return PairCase(case, vals[case])


def isotropic_line_matrix(space):
    """All F_p-rational isotropic lines as rows of one normalised matrix."""
    lines = list(enumerate_isotropic(space, 1, 0))
    return np.vstack([L.rows for L in lines])


def count_cases(space, Wp, lines=None):
    """(n1, n2, n3): lines inside W', lines orthogonal to but outside W', the rest."""
    Wp = _rational(space, Wp)
    if Wp.rank != space.d - 1:
        raise ParameterError("W' must have dimension d - 1")
    F = space.tower(0)
    if lines is None:
        lines = isotropic_line_matrix(space)
    if Wp.rank:
        residual = F.vsub(lines, F.matmul(lines[:, list(Wp.pivots)], Wp.rows))
        contained = ~np.any(residual != 0, axis=1)
        orth = ~np.any(F.matmul(F.matmul(lines, space.gram), Wp.rows.T) != 0, axis=1)
    else:
        contained = np.zeros(len(lines), dtype=bool)
        orth = np.ones(len(lines), dtype=bool)
    n1 = int(contained.sum())
    n2 = int((orth & ~contained).sum())
    return n1, n2, len(lines) - n1 - n2


def expected_case_counts(p, d):
    return (p ** (d - 1) - 1) // (p - 1), (p * p + 1) * p ** (d - 1)
