"""Dense linear algebra over a FieldTower on numpy arrays of codes."""

import numpy as np

from .errors import ResourceLimitError


def rref(T, M):
    """Reduced row echelon form, zero rows dropped. Returns (R, pivots)."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = M.shape
    piv = []
    i = 0
    for j in range(cols):
        if i == rows:
            break
        nz = np.flatnonzero(M[i:, j])
        if len(nz) == 0:
            continue
        k = i + nz[0]
        if k != i:
            M[[i, k]] = M[[k, i]]
        if M[i, j] != 1:
            M[i] = T.vmul(T.inv(int(M[i, j])), M[i])
        others = np.flatnonzero(M[:, j])
        others = others[others != i]
        if len(others):
            M[others] = T.vsub(M[others], T.vmul(M[others, j][:, None], M[i][None, :]))
        piv.append(j)
        i += 1
    return M[:i], piv


def rank(T, M):
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(T, M)[1])


def nullspace(T, M):
    """Basis (as rows) of {x : M x = 0}."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1]
    if M.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(T, M)
    free = [j for j in range(n) if j not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for r, f in enumerate(free):
        out[r, f] = 1
        for i, pj in enumerate(piv):
            out[r, pj] = T.neg(int(R[i, f]))
    return out


def left_nullspace(T, M):
    return nullspace(T, np.asarray(M).T)


def inverse(T, M):
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[0]
    R, piv = rref(T, np.hstack([M, np.eye(n, dtype=np.int64)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return R[:, n:]


def det(T, M):
    M = np.array(M, dtype=np.int64, copy=True)
    n = M.shape[0]
    result = 1
    for j in range(n):
        nz = np.flatnonzero(M[j:, j])
        if len(nz) == 0:
            return 0
        k = j + nz[0]
        if k != j:
            M[[j, k]] = M[[k, j]]
            result = T.neg(result)
        pivot = int(M[j, j])
        result = T.mul(result, pivot)
        below = np.arange(j + 1, n)
        if len(below):
            f = T.vmul(M[below, j], T.inv(pivot))
            M[below] = T.vsub(M[below], T.vmul(f[:, None], M[j][None, :]))
    return result


def span_basis(T, blocks, limit_ops=None, block_rows=256):
    """
    Incremental row-space basis of a stream of row blocks.

    Each incoming block is first reduced against the current basis with one
    field matmul; only the rows that survive are eliminated row by row.  The
    basis is kept in reduced form (identity on its pivot columns).
    Returns (basis, pivots, ops) where ops counts field multiply-adds.
    """
    basis = None
    piv = []
    ops = 0
    for block in blocks:
        block = np.asarray(block, dtype=np.int64)
        for start in range(0, len(block), block_rows):
            C = block[start:start + block_rows]
            ncols = C.shape[1]
            if basis is not None and len(piv):
                C = T.vsub(C, T.matmul(C[:, piv], basis))
                ops += C.shape[0] * len(piv) * ncols
            C = C[np.any(C != 0, axis=1)]
            while len(C):
                row = C[0]
                j = int(np.flatnonzero(row)[0])
                row = T.vmul(T.inv(int(row[j])), row)
                C = C[1:]
                if len(C):
                    col = C[:, j]
                    hit = np.flatnonzero(col)
                    if len(hit):
                        C[hit] = T.vsub(C[hit], T.vmul(col[hit][:, None], row[None, :]))
                        ops += len(hit) * ncols
                    C = C[np.any(C != 0, axis=1)]
                if basis is None:
                    basis = row[None, :]
                else:
                    col = basis[:, j]
                    hit = np.flatnonzero(col)
                    if len(hit):
                        basis[hit] = T.vsub(basis[hit], T.vmul(col[hit][:, None], row[None, :]))
                        ops += len(hit) * ncols
                    basis = np.vstack([basis, row[None, :]])
                piv.append(j)
            if limit_ops is not None and ops > limit_ops:
                raise ResourceLimitError("field-op budget exceeded", spent=ops, budget=limit_ops)
    if basis is None:
        basis = np.zeros((0, 0), dtype=np.int64)
    return basis, piv, ops
