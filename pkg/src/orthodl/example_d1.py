"""
The d = 1 worked example: even Clifford algebra as M2(F_{p^2}), V inside
M2(F_{p^2}), the spin action, and the weight of the tautological bundle on
the Borel quotient.

Matrices are int64 arrays of shape (..., 2, 2) holding tower codes, so every
identity is checked on whole batches at once.  Two unrelated copies of M2
appear: ``table.even`` is the image of Cl^0(V), ``table.embed`` is V itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import linalg
from .chow import degree_closed
from .errors import ParameterError
from .gf import make_tower

Q_SIGNS = (1, -1, None, -1)  # Q = x1^2 - x2^2 + a x3^2 - x4^2; None marks a


# -- batched 2x2 arithmetic --------------------------------------------------------

def mmul(T, A, B):
    A, B = np.broadcast_arrays(A, B)
    out = np.empty(A.shape, dtype=np.int64)
    for i in range(2):
        for j in range(2):
            out[..., i, j] = T.vadd(T.vmul(A[..., i, 0], B[..., 0, j]),
                                    T.vmul(A[..., i, 1], B[..., 1, j]))
    return out


def mdet(T, A):
    return T.vsub(T.vmul(A[..., 0, 0], A[..., 1, 1]), T.vmul(A[..., 0, 1], A[..., 1, 0]))


def mtrans(A):
    return np.swapaxes(A, -1, -2)


def minv(T, A):
    dinv = T.vinv(mdet(T, A))
    out = np.empty(A.shape, dtype=np.int64)
    out[..., 0, 0] = A[..., 1, 1]
    out[..., 1, 1] = A[..., 0, 0]
    out[..., 0, 1] = T.vneg(A[..., 0, 1])
    out[..., 1, 0] = T.vneg(A[..., 1, 0])
    return T.vmul(dinv[..., None, None], out)


def mscale(T, c, A):
    return T.vmul(np.asarray(c, dtype=np.int64)[..., None, None], A)


def identity(T):
    return np.array([[1, 0], [0, 1]], dtype=np.int64)


def mat(T, rows):
    """Matrix from entries given as ints or ('b', k) meaning k*b."""
    def conv(x):
        if isinstance(x, tuple):
            return T.mul(T.from_int(x[1]), T.b)
        return T.from_int(x)
    return np.array([[conv(x) for x in r] for r in rows], dtype=np.int64)


# -- the two displayed tables ----------------------------------------------------

@dataclass(frozen=True, eq=False)
class CliffordGenTable:
    tower: object
    even: dict  # (i, j) -> image of X_i X_j in M2 (Cl^0 model), i < j
    embed: dict  # i -> image of X_i in M2 (V model)

    def q_value(self, i):
        T = self.tower
        s = Q_SIGNS[i - 1]
        return T.a if s is None else T.from_int(s)

    def even_image(self, i, j):
        """X_i X_j for any i != j, using X_j X_i = -X_i X_j."""
        if i < j:
            return self.even[(i, j)]
        return self.tower.vneg(self.even[(j, i)])

    def embed_vectors(self, x):
        """Images of vectors with coordinates x (..., 4) in the V model."""
        T = self.tower
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape[:-1] + (2, 2), dtype=np.int64)
        for i in range(4):
            out = T.vadd(out, mscale(T, x[..., i], self.embed[i + 1]))
        return out

    def q_form(self, x):
        T = self.tower
        x = np.asarray(x, dtype=np.int64)
        out = np.zeros(x.shape[:-1], dtype=np.int64)
        for i in range(4):
            out = T.vadd(out, T.vmul(self.q_value(i + 1), T.vmul(x[..., i], x[..., i])))
        return out

    def coordinates(self, M):
        """Coefficients c (..., 4) with M = sum c_i image(X_i) over the tower."""
        T = self.tower
        B = np.stack([self.embed[i].reshape(4) for i in range(1, 5)])
        Binv = linalg.inverse(T, B)
        flat = M.reshape(M.shape[:-2] + (4,))
        return T.matmul(flat.reshape(-1, 4), Binv).reshape(flat.shape)


def generator_table(p, m=1):
    T = make_tower(p, m)
    even = {
        (1, 2): mat(T, [[1, 0], [0, -1]]),
        (1, 3): mat(T, [[0, ("b", -1)], [("b", 1), 0]]),
        (1, 4): mat(T, [[0, 1], [1, 0]]),
        (2, 3): mat(T, [[0, ("b", 1)], [("b", 1), 0]]),
        (2, 4): mat(T, [[0, -1], [1, 0]]),
        (3, 4): mat(T, [[("b", 1), 0], [0, ("b", -1)]]),
    }
    embed = {
        1: mat(T, [[0, -1], [1, 0]]),
        2: mat(T, [[0, -1], [-1, 0]]),
        3: mat(T, [[("b", -1), 0], [0, ("b", -1)]]),
        4: mat(T, [[1, 0], [0, -1]]),
    }
    return CliffordGenTable(T, even, embed)


def _check(name, failures, checked, extra=None):
    out = {"name": name, "pass": not failures, "checked": checked,
           "first_failure": failures[0] if failures else None}
    if extra:
        out.update(extra)
    return out


def _report(name, p, checks):
    return {"check": name, "p": p, "pass": all(c["pass"] for c in checks), "items": checks}


# -- checks ----------------------------------------------------------------------

def clifford_relations_check(p):
    tab = generator_table(p)
    T = tab.tower
    I = identity(T)
    items = []

    fails, n = [], 0
    for i, j, k in itertools.permutations(range(1, 5), 3):
        lhs = mmul(T, tab.even_image(i, j), tab.even_image(j, k))
        rhs = mscale(T, tab.q_value(j), tab.even_image(i, k))
        n += 1
        if not np.array_equal(lhs, rhs):
            fails.append({"relation": "X%dX%d*X%dX%d = Q(X%d) X%dX%d" % (i, j, j, k, j, i, k),
                          "lhs": lhs.tolist(), "rhs": rhs.tolist()})
    items.append(_check("product_chain", fails, n))

    fails, n = [], 0
    for (i, j), M in tab.even.items():
        lhs = mmul(T, M, M)
        rhs = mscale(T, T.neg(T.mul(tab.q_value(i), tab.q_value(j))), I)
        n += 1
        if not np.array_equal(lhs, rhs):
            fails.append({"relation": "(X%dX%d)^2 = -Q(X%d)Q(X%d)" % (i, j, i, j),
                          "lhs": lhs.tolist(), "rhs": rhs.tolist()})
    items.append(_check("square", fails, n))

    lhs = mmul(T, tab.even[(1, 2)], tab.even[(3, 4)])
    rhs = mscale(T, T.b, I)
    fails = [] if np.array_equal(lhs, rhs) else [
        {"relation": "X1X2*X3X4 = b", "lhs": lhs.tolist(), "rhs": rhs.tolist()}]
    items.append(_check("center", fails, 1))
    return _report("clifford_relations", p, items)


def _fp_vectors(p):
    return np.array(list(itertools.product(range(p), repeat=4)), dtype=np.int64)


def _sample_vectors(tab, p, samples, rng):
    if p <= 7:
        return _fp_vectors(p), "exhaustive"
    T = tab.tower
    x = rng.integers(0, p, size=(samples, 4))
    return np.vectorize(T.from_int)(x).astype(np.int64), "random"


def embedding_det_check(p, samples=200, seed=0):
    if samples < 1:
        raise ParameterError("samples must be positive")
    tab = generator_table(p)
    T = tab.tower
    x, mode = _sample_vectors(tab, p, samples, np.random.default_rng(seed))
    dets = mdet(T, tab.embed_vectors(x))
    q = tab.q_form(x)
    bad = np.flatnonzero(dets != q)
    fails = [{"v": x[i].tolist(), "det": int(dets[i]), "Q": int(q[i])} for i in bad[:1]]
    return _report("embedding_det", p, [_check("det_equals_Q", fails, len(x),
                                               {"mode": mode, "seed": seed})])


def _random_sl2(T, S, rng):
    """S random determinant-one matrices over the tower."""
    q = T.order
    a = rng.integers(1, q, size=S)
    b = rng.integers(0, q, size=S)
    c = rng.integers(0, q, size=S)
    d = T.vmul(T.vadd(np.ones(S, dtype=np.int64), T.vmul(b, c)), T.vinv(a))
    return np.stack([np.stack([a, b], -1), np.stack([c, d], -1)], -2)


def spin_act(T, g, v):
    """gamma . v = Frob(^t gamma)^{-1} v ^t gamma."""
    gt = mtrans(g)
    return mmul(T, mmul(T, minv(T, T.vfrob(gt)), v), gt)


def pair_act(T, alpha, beta, v):
    """(alpha, beta) . v = ^t beta^{-1} v alpha."""
    return mmul(T, mmul(T, minv(T, mtrans(beta)), v), alpha)


def generator_products(tab, length=3):
    gens = [tab.even[k] for k in sorted(tab.even)]
    out = []
    for L in range(1, length + 1):
        for word in itertools.product(range(len(gens)), repeat=L):
            M = gens[word[0]]
            for w in word[1:]:
                M = mmul(tab.tower, M, gens[w])
            out.append(M)
    return np.array(out)


def spin_action_check(p, samples=500, seed=0, length=None):
    if samples < 1:
        raise ParameterError("samples must be positive")
    tab = generator_table(p)
    T = tab.tower
    rng = np.random.default_rng(seed)
    items = []

    # identity acts trivially
    x = _fp_vectors(p) if p <= 7 else _sample_vectors(tab, p, samples, rng)[0]
    V = tab.embed_vectors(x)
    I = np.broadcast_to(identity(T), V.shape)
    same = np.array_equal(spin_act(T, I, V), V)
    items.append(_check("identity", [] if same else [{"gamma": "I"}], len(V)))

    # (i) determinant is preserved by SL2 and by SL2 x SL2
    g = _random_sl2(T, samples, rng)
    al, be = _random_sl2(T, samples, rng), _random_sl2(T, samples, rng)
    v = rng.integers(0, T.order, size=(samples, 2, 2))
    d0 = mdet(T, v)
    bad = np.flatnonzero(mdet(T, spin_act(T, g, v)) != d0)
    bad2 = np.flatnonzero(mdet(T, pair_act(T, al, be, v)) != d0)
    items.append(_check("det_preserved_sl2", [{"gamma": g[i].tolist(), "v": v[i].tolist()}
                                              for i in bad[:1]], samples))
    items.append(_check("det_preserved_pairs", [{"alpha": al[i].tolist(), "beta": be[i].tolist(),
                                                 "v": v[i].tolist()} for i in bad2[:1]], samples))

    # (ii) generator words map V(F_p) into itself and preserve Q
    if length is None:
        length = 3 if p <= 3 else 2
    words = generator_products(tab, length)
    fails_rat, fails_q = [], []
    for w in words:
        out = spin_act(T, w[None], V)
        c = tab.coordinates(out)
        rational = np.all(T.vfrob(c) == c, axis=-1)
        if not rational.all() and not fails_rat:
            i = int(np.flatnonzero(~rational)[0])
            fails_rat.append({"gamma": w.tolist(), "v": x[i].tolist()})
        qbad = np.flatnonzero(mdet(T, out) != mdet(T, V))
        if len(qbad) and not fails_q:
            fails_q.append({"gamma": w.tolist(), "v": x[int(qbad[0])].tolist()})
    n = len(words) * len(V)
    items.append(_check("rational_image", fails_rat, n, {"word_length": length}))
    items.append(_check("Q_preserved", fails_q, n, {"word_length": length}))

    # X_i X_j acts on the X-basis by signs: -1 on X_i, X_j and +1 elsewhere
    fails = []
    basis = tab.embed_vectors(np.eye(4, dtype=np.int64))
    for (i, j), M in sorted(tab.even.items()):
        c = tab.coordinates(spin_act(T, M[None], basis))
        want = np.diag([T.from_int(-1 if k in (i, j) else 1) for k in range(1, 5)])
        if not np.array_equal(c, want):
            fails.append({"gamma": "X%dX%d" % (i, j), "coords": c.tolist()})
    items.append(_check("generator_signs", fails[:1], 6))
    return _report("spin_action", p, items)


def _lower_unimodular(T, S, rng):
    x = rng.integers(1, T.order, size=S)
    y = rng.integers(0, T.order, size=S)
    M = np.zeros((S, 2, 2), dtype=np.int64)
    M[:, 0, 0] = x
    M[:, 1, 0] = y
    M[:, 1, 1] = T.vinv(x)
    return M


def borel_weight_check(p, samples=50, seed=0, levels=(1, 2)):
    """
    Weight of the fibre <e1, e2>/<e1> under lower-triangular pairs: the image
    of e2 is x_alpha^u x_beta^v e2 mod e1 with (u, v) = (-1, 1), which pulls
    back along the graph of Frobenius to degree u + p v = p - 1.
    """
    if samples < 1:
        raise ParameterError("samples must be positive")
    rng = np.random.default_rng(seed)
    items = []
    fits_all = None
    for m in levels:
        tab = generator_table(p, m)
        T = tab.tower
        binv = T.inv(T.b)
        half = T.inv(T.from_int(2))
        X1, X2, X3, X4 = (tab.embed[i] for i in range(1, 5))
        e1 = T.vadd(X1, X2)
        f1 = mscale(T, half, T.vsub(X1, X2))
        e2 = T.vadd(mscale(T, binv, X3), X4)
        f2 = mscale(T, half, T.vsub(mscale(T, binv, X3), X4))
        frame = np.stack([e1.reshape(4), e2.reshape(4), f1.reshape(4), f2.reshape(4)])
        frame_inv = linalg.inverse(T, frame)

        al = _lower_unimodular(T, samples, rng)
        be = _lower_unimodular(T, samples, rng)
        al[0], be[0] = identity(T), identity(T)  # the identity pair
        img = mmul(T, mmul(T, minv(T, mtrans(be)), e2[None]), mtrans(al))
        c = T.matmul(img.reshape(-1, 4), frame_inv)  # coordinates in (e1, e2, f1, f2)
        xa, xb, qb = al[:, 0, 0], be[:, 0, 0], be[:, 1, 0]
        pred = T.vmul(T.vinv(xa), xb)
        fails = []
        bad = np.flatnonzero((c[:, 1] != pred) | (c[:, 2] != 0) | (c[:, 3] != 0))
        for i in bad[:1]:
            fails.append({"level": m, "p": int(xa[i]), "q": int(al[i, 1, 0]),
                          "p'": int(xb[i]), "q'": int(qb[i]), "coords": c[i].tolist()})
        e1_coef = T.vneg(T.vmul(T.vinv(xa), qb))
        items.append(_check("e2_coefficient_level_%d" % m, fails, samples,
                            {"identity_gives_e2": bool(c[0].tolist() == [0, 1, 0, 0]),
                             "e1_coefficient_matches": bool(np.array_equal(c[:, 0], e1_coef))}))
        fits = set()
        for u in range(-3, 4):
            for v in range(-3, 4):
                val = T.vmul(_vpow(T, xa, u), _vpow(T, xb, v))
                if np.array_equal(val, c[:, 1]):
                    fits.add((u, v))
        fits_all = fits if fits_all is None else fits_all & fits
    bideg = sorted(fits_all)
    ok = bideg == [(-1, 1)]
    u, v = bideg[0] if ok else (None, None)
    pull = u + p * v if ok else None
    chern = Fraction(2, p - 1) * pull if ok else None
    items.append(_check("bidegree", [] if ok else [{"fits": bideg}], len(levels),
                        {"bidegree": list(bideg[0]) if ok else None}))
    items.append(_check("pullback_degree", [] if pull == p - 1 else [{"got": pull}], 1,
                        {"value": pull, "expected": p - 1}))
    items.append(_check("conic_degree", [] if chern == degree_closed(p, 1) else [{"got": str(chern)}],
                        1, {"value": None if chern is None else int(chern), "expected": 2}))
    return _report("borel_weight", p, items)


def _vpow(T, x, n):
    if n < 0:
        x, n = T.vinv(x), -n
    out = np.ones_like(x)
    for _ in range(n):
        out = T.vmul(out, x)
    return out


def run_all(p, samples=200, seed=0):
    return [clifford_relations_check(p), embedding_det_check(p, samples, seed),
            spin_action_check(p, samples, seed), borel_weight_check(p, min(samples, 50), seed)]
