"""
Degree of the Plücker image of Y_V from point clouds.

HF(k) is the rank of the degree-k evaluation map on the cloud.  The main
route builds the degree-k evaluation space as the span of products
(linear form) x (degree k-1 basis vector), which spans exactly the same
space as all monomials but only touches HF(1) * HF(k-1) candidates.  The
literal monomial evaluation is kept as ``method="monomial"`` for
cross-checking at small scale.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import comb

import numpy as np

from . import linalg
from .chow import degree_closed
from .dlmoduli import iter_Y_bases
from .errors import CloudTooSmallError, NotStabilizedError, ParameterError, ResourceLimitError
from .flags import PLUS, ComponentTag, plucker_batch, split_frame
from .quadspace import DEFAULT_BUDGET, build_space

MAX_POINTS = 10**7
MAX_COLUMNS = 10**6
MAX_OPS = 10**12
MAX_KMAX = 8


@dataclass(frozen=True, eq=False)
class PointCloud:
    """Normalised projective points, one per row of ``coords``."""

    tower: object
    coords: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coords, dtype=np.int64)
        if c.ndim != 2 or len(c) == 0:
            raise ParameterError("a cloud needs at least one point")
        object.__setattr__(self, "coords", c)

    @classmethod
    def from_points(cls, tower, points):
        return cls(tower, np.array([pt.coords for pt in points], dtype=np.int64))

    @property
    def size(self):
        return len(self.coords)

    @property
    def ambient_dim(self):
        return self.coords.shape[1] - 1

    def is_distinct(self):
        return len(np.unique(self.coords, axis=0)) == self.size

    def subset(self, size, seed):
        if size is None or size >= self.size:
            return self
        idx = np.sort(np.random.default_rng(seed).choice(self.size, size, replace=False))
        return PointCloud(self.tower, self.coords[idx])


@dataclass(frozen=True)
class HilbertProfile:
    values: tuple  # HF(0), HF(1), ..., HF(k_max)
    d: int = None

    def __post_init__(self):
        v = tuple(int(x) for x in self.values)
        if not v or v[0] != 1:
            raise ParameterError("a Hilbert profile starts with HF(0) = 1")
        if any(b < a for a, b in zip(v, v[1:])):
            raise ParameterError("Hilbert profile must be nondecreasing")
        object.__setattr__(self, "values", v)

    @property
    def k_max(self):
        return len(self.values) - 1

    def __getitem__(self, k):
        return self.values[k]


def _monomial_exponents(nvars, k):
    """Exponent tuples of degree k in graded-lex order."""
    for combo in itertools.combinations_with_replacement(range(nvars), k):
        yield combo


def _monomial_blocks(T, X, k, block=256):
    """Evaluation vectors (one row per monomial) of all degree-k monomials."""
    rows = []
    for combo in _monomial_exponents(X.shape[0], k):
        v = np.ones(X.shape[1], dtype=np.int64)
        for i in combo:
            v = T.vmul(v, X[i])
        rows.append(v)
        if len(rows) == block:
            yield np.array(rows)
            rows = []
    if rows:
        yield np.array(rows)


def hilbert_profile(cloud, k_max, method="product", max_columns=MAX_COLUMNS,
                    budget_ops=MAX_OPS):
    """HF(0..k_max) of a cloud."""
    if k_max < 0:
        raise ParameterError("k must be nonnegative")
    T = cloud.tower
    X = cloud.coords.T  # one row per coordinate function
    values = [1]
    ops = 0
    if method == "monomial":
        for k in range(1, k_max + 1):
            ncols = comb(X.shape[0] + k - 1, k)
            if ncols > max_columns:
                raise ResourceLimitError("%d monomials of degree %d" % (ncols, k),
                                         spent=ncols, budget=max_columns)
            _, piv, spent = linalg.span_basis(T, _monomial_blocks(T, X, k),
                                              limit_ops=budget_ops - ops)
            ops += spent
            values.append(len(piv))
        return HilbertProfile(tuple(values))
    if method != "product":
        raise ParameterError("unknown method %r" % method)
    basis = np.ones((1, cloud.size), dtype=np.int64)
    linear = None
    for k in range(1, k_max + 1):
        gens = X if linear is None else linear
        ncand = len(gens) * len(basis)
        if ncand > max_columns:
            raise ResourceLimitError("%d candidate products in degree %d" % (ncand, k),
                                     spent=ncand, budget=max_columns)
        blocks = (T.vmul(g[None, :], basis) for g in gens)
        basis, piv, spent = linalg.span_basis(T, blocks, limit_ops=budget_ops - ops)
        ops += spent
        if linear is None:
            linear = basis.copy()
        values.append(len(piv))
    return HilbertProfile(tuple(values))


def hilbert_function(cloud, k, method="product", max_columns=MAX_COLUMNS, budget_ops=MAX_OPS):
    return hilbert_profile(cloud, k, method, max_columns, budget_ops)[k]


def differences(profile, d):
    """Delta^d HF(k) for k = d, ..., k_max."""
    D = np.array(profile.values, dtype=np.int64)
    return [int(x) for x in np.diff(D, n=d)] if d else [int(x) for x in D]


def degree_from_hilbert(profile, d):
    """
    The constant value of Delta^d HF over the trailing stable window.  The
    window must cover at least two consecutive k, and a difference that was
    already constant at two consecutive k must never move again.
    """
    if d < 0:
        raise ParameterError("d must be nonnegative")
    D = differences(profile, d)
    if len(D) < 2:
        raise NotStabilizedError("need HF up to k = d + 1 at least")
    if D[-1] != D[-2]:
        raise NotStabilizedError("Delta^%d HF still moving: %s" % (d, D))
    for i in range(len(D) - 2):
        if D[i] == D[i + 1] and D[i + 2] != D[i + 1]:
            raise NotStabilizedError("Delta^%d HF left a plateau: %s" % (d, D))
    return D[-1]


def build_cloud(p, d, m, component=PLUS, budget=DEFAULT_BUDGET, max_points=MAX_POINTS):
    """Plücker images of all F_{p^{2m}}-points of one component of Y_V."""
    space = build_space(p, d)
    frame = split_frame(space, m)
    T = frame.T
    parts = []
    total = 0
    for _, Ms in iter_Y_bases(space, m, ComponentTag.parse(component), budget):
        total += len(Ms)
        if total > max_points:
            raise ResourceLimitError("cloud exceeds %d points" % max_points,
                                     spent=total, budget=max_points)
        parts.append(plucker_batch(T, frame.to_standard(Ms)))
    return PointCloud(T, np.concatenate(parts))


def verify_degree(p, d, m, k_max, budget_ops=MAX_OPS, subset=None, seed=0,
                  component=PLUS, max_columns=MAX_COLUMNS, timings=False):
    """Degree of Y_V from its F_{p^{2m}} cloud against the closed formula."""
    if not 0 <= k_max <= MAX_KMAX:
        raise ParameterError("k_max must lie in [0, %d]" % MAX_KMAX)
    if k_max < d + 1:
        raise ParameterError("k_max must be at least d + 1")
    t0 = time.perf_counter()
    cloud = build_cloud(p, d, m, component)
    full_size = cloud.size
    cloud = cloud.subset(subset, seed)
    if not cloud.is_distinct():
        raise RuntimeError("cloud contains repeated points")
    profile = hilbert_profile(cloud, k_max, max_columns=max_columns, budget_ops=budget_ops)
    if cloud.size <= profile[k_max]:
        raise CloudTooSmallError(
            "cloud of %d points cannot certify HF(%d) = %d; increase m"
            % (cloud.size, k_max, profile[k_max]))
    D = differences(profile, d)
    degree = degree_from_hilbert(profile, d)
    expected = int(degree_closed(p, d)) if d >= 1 else 1
    report = {
        "p": p, "d": d, "m": m,
        "component": str(ComponentTag.parse(component)),
        "cloud_size": cloud.size,
        "full_cloud_size": full_size,
        "subset": subset, "seed": seed,
        "profile": list(profile.values),
        "differences": D,
        "degree": degree,
        "expected": expected,
        "pass": degree == expected,
        "margin_4x": cloud.size > 4 * profile[k_max],
        "elapsed_ms": round(1000 * (time.perf_counter() - t0)) if timings else None,
    }
    return report


# -- d = 1 cross-oracle: conic against random lines -----------------------------

def conic_line_counts(cloud, samples=50, seed=0):
    """
    For a plane conic cloud: find the plane and the conic's equation, then
    count the roots of the conic on random lines of the plane by running
    through all q + 1 points of each line.
    """
    T = cloud.tower
    q = T.order
    plane, piv = linalg.rref(T, cloud.coords)
    if len(piv) != 3:
        raise ParameterError("cloud does not span a plane (rank %d)" % len(piv))
    P = cloud.coords[:, piv]  # plane coordinates (reduced basis is identity on piv)
    quad = list(itertools.combinations_with_replacement(range(3), 2))
    E = np.stack([T.vmul(P[:, i], P[:, j]) for i, j in quad], axis=1)
    ker = linalg.nullspace(T, E)
    if len(ker) != 1:
        raise ParameterError("cloud is not cut out by a single conic")
    eq = ker[0]
    pts = np.concatenate([np.array([[1, 0]]),
                          np.stack([np.arange(q), np.ones(q, dtype=np.int64)], axis=1)])
    rng = np.random.default_rng(seed)
    cloud_keys = {bytes(r.tobytes()) for r in cloud.coords}
    hist = {}
    all_in_cloud = True
    for _ in range(samples):
        while True:
            UV = rng.integers(0, q, size=(2, 3))
            if linalg.rank(T, UV) == 2:
                break
        L = T.matmul(pts, UV)  # plane coordinates of the q + 1 line points
        val = np.zeros(len(L), dtype=np.int64)
        for c, (i, j) in zip(eq, quad):
            val = T.vadd(val, T.vmul(int(c), T.vmul(L[:, i], L[:, j])))
        roots = L[val == 0]
        hist[len(roots)] = hist.get(len(roots), 0) + 1
        if len(roots):
            amb = T.matmul(roots, plane)
            first = np.argmax(amb != 0, axis=1)
            amb = T.vmul(T.vinv(amb[np.arange(len(amb)), first])[:, None], amb)
            all_in_cloud &= all(bytes(r.tobytes()) in cloud_keys for r in amb)
    return {"max_roots": max(hist), "histogram": {k: hist[k] for k in sorted(hist)},
            "roots_in_cloud": bool(all_in_cloud), "samples": samples, "seed": seed}
