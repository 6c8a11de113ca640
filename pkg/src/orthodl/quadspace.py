"""
The nonsplit quadratic space V of dimension 2(d+1) over F_p.

Standard coordinates are taken in the F_p-basis

    g_1, h_1, ..., g_d, h_d, X, Y

with [g_i, h_j] = delta_ij, g and h isotropic, and the anisotropic plane
[X, X] = a, [Y, Y] = -1.  Over F_{p^2} the distinguished basis is

    e_i = g_i, f_i = h_i  (i <= d),
    e_{d+1} = b^-1 X + Y, f_{d+1} = (b^-1 X - Y) / 2.

Every subspace of V (at any field level) is stored in standard coordinates,
so the Frobenius twist of a subspace is the entrywise p-th power of its
echelon basis.
"""

from __future__ import annotations

import itertools
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import NotIsotropicError, ParameterError, ResourceLimitError
from .gf import FieldElem, make_tower

DEFAULT_BUDGET = 10**9


class Subspace:
    """A subspace given by its reduced row echelon basis (pivots leftmost)."""

    __slots__ = ("tower", "rows", "pivots", "_key")

    def __init__(self, tower, rows, pivots=None, canonical=False):
        rows = np.asarray(rows, dtype=np.int64)
        if rows.ndim == 1:
            rows = rows[None, :]
        if not canonical:
            rows, pivots = linalg.rref(tower, rows)
        elif pivots is None:
            pivots = [int(np.flatnonzero(r)[0]) for r in rows]
        rows.setflags(write=False)
        self.tower = tower
        self.rows = rows
        self.pivots = tuple(pivots)
        self._key = (rows.shape[1], rows.tobytes())

    @classmethod
    def zero(cls, tower, dim):
        return cls(tower, np.zeros((0, dim), dtype=np.int64), (), canonical=True)

    @property
    def rank(self):
        return self.rows.shape[0]

    @property
    def ambient_dim(self):
        return self.rows.shape[1]

    @property
    def level(self):
        return self.tower.m

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.tower is other.tower and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return "Subspace(rank=%d, level=%d, rows=%s)" % (self.rank, self.level, self.rows.tolist())

    def contains(self, other):
        return sum_(self, other).rank == self.rank

    def to_json(self):
        return self.rows.tolist()


def span(tower, rows, dim=None):
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return Subspace.zero(tower, dim if dim is not None else rows.shape[-1])
    return Subspace(tower, rows)


def sum_(U, W):
    if U.rank == 0:
        return W
    if W.rank == 0:
        return U
    return Subspace(U.tower, np.vstack([U.rows, W.rows]))


def intersect(U, W):
    T = U.tower
    if U.rank == 0 or W.rank == 0:
        return Subspace.zero(T, U.ambient_dim)
    K = linalg.left_nullspace(T, np.vstack([U.rows, W.rows]))
    if len(K) == 0:
        return Subspace.zero(T, U.ambient_dim)
    return span(T, T.matmul(K[:, : U.rank], U.rows), U.ambient_dim)


def frob_subspace(L):
    """Frob*L: entrywise p-th power of the basis, re-canonicalised."""
    if L.rank == 0:
        return L
    return Subspace(L.tower, L.tower.vfrob(L.rows))


def change_level(L, tower):
    """View a subspace over a tower containing its field (codes below p^2 embed)."""
    if L.tower is tower:
        return L
    if L.tower.p != tower.p:
        raise ParameterError("cannot move subspace between these towers")
    # F_p and F_{p^2} are the codes below p and p^2 at every level
    if tower.m == 0:
        if np.any(L.rows >= tower.p):
            raise ParameterError("subspace is not defined over F_p")
    elif L.tower.m > 1 and L.tower.m != tower.m:
        if np.any(L.rows >= tower.p**2):
            raise ParameterError("subspace is not defined over F_{p^2}")
    return Subspace(tower, L.rows, L.pivots, canonical=True)


@dataclass(frozen=True)
class QuadraticSpace:
    p: int
    d: int
    a: int
    gram: np.ndarray = field(repr=False, compare=False)  # over F_p, standard coords
    basis_change: np.ndarray = field(repr=False, compare=False)  # rows e_1..e_n, f_1..f_n over F_{p^2}

    @property
    def n(self):
        return self.d + 1

    @property
    def dim(self):
        return 2 * (self.d + 1)

    def tower(self, m):
        return make_tower(self.p, m)

    def e(self, i):
        """e_i (1-based) in standard coordinates over F_{p^2}."""
        return self.basis_change[i - 1]

    def f(self, i):
        return self.basis_change[self.n + i - 1]

    def gram_matrix(self, T, U, W=None):
        """The matrix of pairings [u_i, w_j] over the tower T."""
        U = np.atleast_2d(np.asarray(U, dtype=np.int64))
        W = U if W is None else np.atleast_2d(np.asarray(W, dtype=np.int64))
        return T.matmul(T.matmul(U, self.gram), W.T)

    def is_totally_isotropic(self, L):
        if L.rank == 0:
            return True
        return not np.any(self.gram_matrix(L.tower, L.rows))

    def describe(self):
        return {"p": self.p, "d": self.d, "a": self.a, "dim": self.dim}


def build_space(p, d):
    if d < 0:
        raise ParameterError("d must be nonnegative")
    F2 = make_tower(p, 1)
    a = F2.a
    n = d + 1
    dim = 2 * n
    G = np.zeros((dim, dim), dtype=np.int64)
    for i in range(d):
        G[2 * i, 2 * i + 1] = G[2 * i + 1, 2 * i] = 1
    G[dim - 2, dim - 2] = a
    G[dim - 1, dim - 1] = p - 1
    B = np.zeros((dim, dim), dtype=np.int64)
    for i in range(d):
        B[i, 2 * i] = 1
        B[n + i, 2 * i + 1] = 1
    binv = F2.inv(F2.b)
    half = F2.inv(2)
    B[n - 1, dim - 2] = binv
    B[n - 1, dim - 1] = 1
    B[dim - 1, dim - 2] = F2.mul(half, binv)
    B[dim - 1, dim - 1] = F2.neg(half)
    G.setflags(write=False)
    B.setflags(write=False)
    return QuadraticSpace(p, d, a, G, B)


def form_eval(space, u, v, m):
    """[u, v] for coordinate vectors over F_{p^{2m}} (m = 0: over F_p)."""
    T = space.tower(m)
    u = np.asarray([x.code if isinstance(x, FieldElem) else x for x in u], dtype=np.int64)
    v = np.asarray([x.code if isinstance(x, FieldElem) else x for x in v], dtype=np.int64)
    if u.shape != (space.dim,) or v.shape != (space.dim,):
        raise ParameterError("vectors must have length %d" % space.dim)
    return T.elem(int(space.gram_matrix(T, u, v)[0, 0]))


def orth_complement(space, W):
    T = W.tower
    if W.rank == 0:
        return Subspace(T, np.eye(space.dim, dtype=np.int64))
    K = linalg.nullspace(T, T.matmul(W.rows, space.gram))
    return span(T, K, space.dim)


def isotropic_line_count_formula(p, d):
    return (p ** (d + 1) + 1) * (p**d - 1) // (p - 1)


def _free_vectors(q, k):
    """All vectors of F_q^k as codes, first coordinate most significant."""
    if k == 0:
        return np.zeros((1, 0), dtype=np.int64)
    idx = np.arange(q**k, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers) % q


def row_dots(T, A, B):
    """sum_k A[..., k] * B[..., k] over the field."""
    out = np.zeros(A.shape[:-1], dtype=np.int64)
    for k in range(A.shape[-1]):
        out = T.vadd(out, T.vmul(A[..., k], B[..., k]))
    return out


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.spent = 0
        self._lock = threading.Lock()

    def charge(self, n):
        with self._lock:
            self.spent += n
            if self.limit is not None and self.spent > self.limit:
                raise ResourceLimitError(
                    "work budget of %d form evaluations exceeded" % self.limit,
                    spent=self.spent, budget=self.limit)


def _isotropic_with_pivots(space, T, r, piv, budget):
    N = space.dim
    G = space.gram
    pset = set(piv)
    frees = [[c for c in range(pi + 1, N) if c not in pset] for pi in piv]
    found = []

    def extend(chosen, chosenG):
        i = len(chosen)
        if i == r:
            found.append(np.array(chosen))
            return
        fv = _free_vectors(T.order, len(frees[i]))
        C = np.zeros((len(fv), N), dtype=np.int64)
        C[:, piv[i]] = 1
        if frees[i]:
            C[:, frees[i]] = fv
        budget.charge(len(C) * (i + 1))
        CG = T.matmul(C, G)
        ok = row_dots(T, CG, C) == 0
        for prev in chosenG:
            ok &= row_dots(T, C, np.broadcast_to(prev, C.shape)) == 0
        for row, rowG in zip(C[ok], CG[ok]):
            extend(chosen + [row], chosenG + [rowG])

    extend([], [])
    return [Subspace(T, M, piv, canonical=True) for M in found]


def enumerate_isotropic(space, r, m, budget=DEFAULT_BUDGET, workers=1):
    """
    Every totally isotropic r-subspace over F_{p^{2m}} (m = 0: over F_p)
    exactly once, ordered by echelon pivot set and then by free entries.
    """
    if not 0 <= r <= space.n:
        raise ParameterError("rank must lie in [0, d+1]")
    T = space.tower(m)
    if r == 0:
        yield Subspace.zero(T, space.dim)
        return
    tracker = _Budget(budget)
    pivsets = list(itertools.combinations(range(space.dim), r))
    job = lambda piv: _isotropic_with_pivots(space, T, r, piv, tracker)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            for chunk in pool.map(job, pivsets):
                yield from chunk
    else:
        for piv in pivsets:
            yield from job(piv)


# -- Witt decomposition and quotients ------------------------------------------

def _first_isotropic(F, G, rows):
    """A nonzero isotropic vector in the span of the first three rows."""
    R = rows[:3]
    coeffs = _free_vectors(F.p, len(R))[1:]
    V = F.matmul(coeffs, R)
    vals = row_dots(F, F.matmul(V, G), V)
    hits = np.flatnonzero(vals == 0)
    if len(hits) == 0:
        raise ParameterError("no isotropic vector found; form is anisotropic")
    return V[hits[0]]


def witt_frame(p, G):
    """
    Rows g_1, h_1, ..., g_k, h_k, X, Y (in the coordinates of G) realising
    the standard nonsplit form: an isometry from the standard space onto
    (F_p^N, G).  G must be nondegenerate and nonsplit.
    """
    F = make_tower(p, 0)
    G = np.asarray(G, dtype=np.int64) % p
    N = G.shape[0]
    if N % 2:
        raise ParameterError("odd-dimensional form")
    a = F.a
    rows = np.eye(N, dtype=np.int64)
    out = []
    pair = lambda u, v: int(F.matmul(F.matmul(u[None, :], G), v[:, None])[0, 0])
    while len(rows) > 2:
        g = _first_isotropic(F, G, rows)
        gG = F.matmul(g[None, :], G)[0]
        vals = F.matmul(rows, gG[:, None])[:, 0]
        v = rows[np.flatnonzero(vals)[0]]
        v = F.vmul(F.inv(pair(g, v)), v)
        h = F.vsub(v, F.vmul(F.mul(pair(v, v), F.inv(2)), g))
        out += [g, h]
        both = F.matmul(np.vstack([g, h]), G)
        K = linalg.nullspace(F, F.matmul(both, rows.T))
        rows = F.matmul(K, rows)
    coeffs = _free_vectors(p, 2)[1:]
    V = F.matmul(coeffs, rows)
    vals = row_dots(F, F.matmul(V, G), V)
    if np.any(vals == 0):
        raise ParameterError("form is split")
    u = V[np.flatnonzero(vals == a)[0]]
    uG = F.matmul(u[None, :], G)
    w = F.matmul(linalg.nullspace(F, F.matmul(uG, rows.T)), rows)[0]
    beta = pair(w, w)
    root = next(s for s in range(1, p) if s * s % p == (-beta) % p)
    Y = F.vmul(F.inv(root), w)
    out += [u, Y]
    return np.array(out, dtype=np.int64)


@dataclass(frozen=True)
class Quotient:
    """W^perp / W realised as a standard space with an F_p-linear section."""

    space: QuadraticSpace
    W: Subspace
    embedding: np.ndarray  # rows: images of the quotient's standard basis in V

    def lift(self, L):
        T = L.tower
        rows = T.matmul(L.rows, self.embedding) if L.rank else np.zeros((0, self.embedding.shape[1]), np.int64)
        if self.W.rank:
            rows = np.vstack([rows, self.W.rows])
        return span(T, rows, self.embedding.shape[1])


def complement_in(T, W, U):
    """Rows of U's echelon basis extending W to a basis of U (W inside U)."""
    chosen = []
    current = W.rows
    r = W.rank
    for row in U.rows:
        trial = np.vstack([current, row[None, :]]) if len(current) else row[None, :]
        if linalg.rank(T, trial) > r:
            chosen.append(row)
            current, r = trial, r + 1
    return np.array(chosen, dtype=np.int64).reshape(len(chosen), U.ambient_dim)


def quotient(space, W):
    """The quotient W^perp/W for an F_p-rational isotropic W."""
    F = make_tower(space.p, 0)
    W = change_level(W, F)
    if not space.is_totally_isotropic(W):
        raise NotIsotropicError("W is not totally isotropic")
    if W.rank > space.d:
        raise ParameterError("W has dimension above d")
    perp = orth_complement(space, W)
    C = complement_in(F, W, perp)
    Gq = F.matmul(F.matmul(C, space.gram), C.T)
    frame = witt_frame(space.p, Gq)
    small = build_space(space.p, space.d - W.rank)
    emb = F.matmul(frame, C)
    return Quotient(small, W, emb)
