"""
Maximal isotropic subspaces (OGr(d+1)), their two families, and Plücker
coordinates.

Enumeration works in the split frame e_1, ..., e_n, f_n, ..., f_1 (n = d+1),
where the Gram matrix is the antidiagonal J.  A maximal isotropic L has an
echelon pivot set P containing exactly one of c, 2n-1-c for every column c,
and L is the graph of a skew-symmetric matrix from the pivot columns to
their partners.  The entry for a pair of pivots (p_i, p_j) is free exactly
when p_i + p_j < 2n - 1; otherwise echelon form forces it to vanish.  So
each Schubert cell is an affine space and is listed without any search.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import linalg
from .errors import ParameterError, ResourceLimitError
from .quadspace import DEFAULT_BUDGET, Subspace, _free_vectors, intersect, span


class ComponentTag(enum.Enum):
    PLUS = "+"
    MINUS = "-"

    def __str__(self):
        return self.value

    @classmethod
    def parse(cls, s):
        if isinstance(s, cls):
            return s
        return {"+": cls.PLUS, "plus": cls.PLUS, "-": cls.MINUS, "minus": cls.MINUS}[str(s).lower()]

    def flipped(self):
        return ComponentTag.MINUS if self is ComponentTag.PLUS else ComponentTag.PLUS


PLUS, MINUS = ComponentTag.PLUS, ComponentTag.MINUS


@dataclass(frozen=True)
class Cell:
    pivots: tuple  # sorted split-frame columns
    free_pairs: tuple  # (i, j) row pairs carrying a free entry
    component: ComponentTag

    def size(self, q):
        return q ** len(self.free_pairs)


def partner(n, c):
    return 2 * n - 1 - c


@lru_cache(maxsize=None)
def cells(n):
    """Schubert cells of OGr(n) in the split frame, in lex order of pivots."""
    out = []
    for choice in itertools.product(*[(c, partner(n, c)) for c in range(n)]):
        piv = tuple(sorted(choice))
        pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n)
                      if piv[i] + piv[j] < 2 * n - 1)
        high = sum(1 for c in piv if c >= n)
        out.append(Cell(piv, pairs, PLUS if high % 2 == 0 else MINUS))
    out.sort(key=lambda c: c.pivots)
    return tuple(out)


def cell_matrices(T, n, cell, params):
    """Split-frame basis matrices (S, n, 2n) for a block of cell parameters."""
    S = len(params)
    M = np.zeros((S, n, 2 * n), dtype=np.int64)
    for i, c in enumerate(cell.pivots):
        M[:, i, c] = 1
    for k, (i, j) in enumerate(cell.free_pairs):
        x = params[:, k]
        M[:, i, partner(n, cell.pivots[j])] = x
        M[:, j, partner(n, cell.pivots[i])] = T.vneg(x)
    return M


def iter_cell_blocks(T, n, cell, chunk=1 << 17):
    k = len(cell.free_pairs)
    total = T.order**k
    q = T.order
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        params = (idx[:, None] // powers) % q if k else np.zeros((len(idx), 0), np.int64)
        yield params, cell_matrices(T, n, cell, params)


class SplitFrame:
    """Change of coordinates between the split frame and standard coordinates."""

    def __init__(self, space, T):
        if T.m < 1:
            raise ParameterError("the split frame needs a tower with m >= 1")
        n = space.n
        self.space = space
        self.T = T
        order = list(range(n)) + [2 * n - 1 - k for k in range(n)]
        self.basis = np.asarray(space.basis_change)[order]  # rows e_1..e_n, f_n..f_1
        self.basis_inv = linalg.inverse(T, self.basis)
        # frob(x B) = frob(x) frob(B) = frob(x) Phi B
        self.phi = T.matmul(T.vfrob(self.basis), self.basis_inv)

    def to_standard(self, M):
        return self.T.matmul(M, self.basis)

    def from_standard(self, M):
        return self.T.matmul(M, self.basis_inv)

    def frob(self, M):
        """Frobenius in split coordinates for stacks (..., rows, 2n)."""
        T = self.T
        F = T.vfrob(M)
        N = self.phi.shape[0]
        out = np.zeros_like(F)
        for c in range(N):
            col = np.zeros(F.shape[:-1], dtype=np.int64)
            for k in np.flatnonzero(self.phi[:, c]):
                col = T.vadd(col, T.vmul(F[..., k], int(self.phi[k, c])))
            out[..., c] = col
        return out


@lru_cache(maxsize=None)
def split_frame(space, m):
    return SplitFrame(space, space.tower(m))


def reference_flag(space, m):
    """(<e_1..e_d>, <e_1..e_{d+1}>) as standard-coordinate subspaces."""
    T = space.tower(m)
    B = np.asarray(space.basis_change)
    return span(T, B[: space.d], space.dim), span(T, B[: space.n], space.dim)


def enumerate_ogr_max(space, m, budget=DEFAULT_BUDGET, component=None):
    """
    Every maximal isotropic subspace over F_{p^{2m}} once, cell by cell.
    With ``component`` given only cells of that family are visited.
    """
    if m < 1:
        raise ParameterError("maximal isotropics need m >= 1")
    frame = split_frame(space, m)
    T = frame.T
    n = space.n
    work = sum(c.size(T.order) for c in cells(n)) * n
    if budget is not None and work > budget:
        raise ResourceLimitError("OGr enumeration needs %d work units" % work, spent=work, budget=budget)
    for cell in cells(n):
        if component is not None and cell.component is not ComponentTag.parse(component):
            continue
        for _, Ms in iter_cell_blocks(T, n, cell):
            std = frame.to_standard(Ms)
            for M in std:
                yield Subspace(T, M)


def ogr_count(q, n):
    """Number of maximal isotropics of a split 2n-dimensional space over F_q."""
    out = 2
    for i in range(1, n):
        out *= q**i + 1
    return out


def component_of(space, L):
    T = L.tower
    if L.rank != space.n or not space.is_totally_isotropic(L):
        raise ParameterError("input is not a maximal isotropic subspace")
    ref = span(T, np.asarray(space.basis_change)[: space.n], space.dim)
    k = intersect(L, ref).rank
    return PLUS if (space.n - k) % 2 == 0 else MINUS


# -- Plücker coordinates ---------------------------------------------------------

@dataclass(frozen=True)
class PluckerPoint:
    tower: object
    coords: tuple

    def to_json(self):
        return list(self.coords)


@lru_cache(maxsize=None)
def plucker_index(n, N):
    """Column sets of the minors, in lexicographic order."""
    return tuple(itertools.combinations(range(N), n))


def normalize_projective(T, v):
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if len(nz) == 0:
        raise ParameterError("zero vector has no projective point")
    return T.vmul(T.inv(int(v[nz[0]])), v)


def plucker_coords(L):
    T = L.tower
    n, N = L.rows.shape
    if n == 0 or linalg.rank(T, L.rows) != n:
        raise ParameterError("rank deficient basis")
    v = [linalg.det(T, L.rows[:, list(cols)]) for cols in plucker_index(n, N)]
    return PluckerPoint(T, tuple(int(x) for x in normalize_projective(T, v)))


@lru_cache(maxsize=None)
def _perms(n):
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        out.append((perm, inversions % 2))
    return tuple(out)


def batch_det(T, M):
    """Determinants of a stack (S, n, n) by the Leibniz expansion."""
    S, n, _ = M.shape
    out = np.zeros(S, dtype=np.int64)
    for perm, odd in _perms(n):
        term = M[:, 0, perm[0]]
        for i in range(1, n):
            term = T.vmul(term, M[:, i, perm[i]])
        out = T.vsub(out, term) if odd else T.vadd(out, term)
    return out


def plucker_batch(T, Ms):
    """Normalised Plücker vectors (S, C(N, n)) for a stack of full-rank bases."""
    S, n, N = Ms.shape
    cols = plucker_index(n, N)
    P = np.stack([batch_det(T, Ms[:, :, list(c)]) for c in cols], axis=1)
    first = np.argmax(P != 0, axis=1)
    lead = P[np.arange(S), first]
    if np.any(lead == 0):
        raise ParameterError("rank deficient basis in batch")
    return T.vmul(T.vinv(lead)[:, None], P)
