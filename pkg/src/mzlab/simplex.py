"""Dense two-phase primal simplex for small linear programs.

Solves  min c.x  subject to  A x <= b,  x >= 0  (callers split free
variables into positive/negative parts).  Bland's rule keeps the iteration
cycle-free; problems here are small (a few thousand constraints at most).
"""

from __future__ import annotations

import numpy as np


class LPError(RuntimeError):
    pass


def solve_lp(c, A, b, max_iter: int = 50_000):
    """Return (x, value) minimizing c.x with A x <= b, x >= 0."""
    c = np.asarray(c, dtype=float)
    A = np.asarray(A, dtype=float)
    b = np.asarray(b, dtype=float).copy()
    m, n = A.shape
    # slack form: A x + s = b; flip rows with negative b for phase 1
    T = np.hstack([A, np.eye(m), b[:, None]])
    neg = b < 0
    T[neg] *= -1.0
    basis = np.arange(n, n + m)
    if np.any(neg):
        # artificial variables on the flipped rows
        art_cols = []
        for i in np.where(neg)[0]:
            col = np.zeros((m, 1))
            col[i, 0] = 1.0
            art_cols.append(col)
        T = np.hstack([T[:, :-1], np.hstack(art_cols), T[:, -1:]])
        art = np.arange(n + m, n + m + len(art_cols))
        for k, i in enumerate(np.where(neg)[0]):
            basis[i] = art[k]
        obj = np.zeros(T.shape[1])
        obj[art] = 1.0
        T, basis = _iterate(T, basis, obj, max_iter)
        val = _objective(T, basis, obj)
        if val > 1e-7:
            raise LPError("phase 1 failed: infeasible program")
        # drive leftover artificials out of the basis where possible
        keep = np.ones(T.shape[1], dtype=bool)
        keep[art] = False
        for i in range(m):
            if basis[i] in art:
                row = T[i, :n + m]
                j = np.flatnonzero(np.abs(row) > 1e-9)
                if len(j):
                    _pivot(T, i, j[0])
                    basis[i] = j[0]
        keep[-1] = True
        col_map = np.flatnonzero(keep)
        T = T[:, keep]
        basis = np.searchsorted(col_map, basis)
    obj = np.zeros(T.shape[1])
    obj[:n] = c
    T, basis = _iterate(T, basis, obj, max_iter)
    x = np.zeros(T.shape[1] - 1)
    x[basis] = T[:, -1]
    return x[:n], float(c @ x[:n])


def _objective(T, basis, obj):
    x = np.zeros(T.shape[1] - 1)
    x[basis] = T[:, -1]
    return float(obj[:len(x)] @ x)


def _pivot(T, row, col):
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]


def _iterate(T, basis, obj, max_iter):
    """Dantzig pivoting with a Bland fallback after degenerate stalls."""
    m = T.shape[0]
    stall = 0
    for _ in range(max_iter):
        y = obj[basis]
        red = obj[:-1] - y @ T[:, :-1]
        red[basis] = 0.0
        scale = max(1.0, np.abs(obj).max())
        enter_candidates = np.flatnonzero(red < -1e-10 * scale)
        if len(enter_candidates) == 0:
            return T, basis
        if stall > 12:                        # anti-cycling: Bland
            enter = enter_candidates[0]
        else:
            enter = enter_candidates[np.argmin(red[enter_candidates])]
        col = T[:, enter]
        pos = col > 1e-12
        if not np.any(pos):
            raise LPError("unbounded program")
        ratios = np.full(m, np.inf)
        ratios[pos] = T[pos, -1] / col[pos]
        best = ratios.min()
        leave_candidates = np.flatnonzero(ratios <= best + 1e-12)
        leave = leave_candidates[np.argmin(basis[leave_candidates])]
        stall = stall + 1 if best <= 1e-12 else 0
        _pivot(T, leave, enter)
        basis[leave] = enter
    raise LPError("simplex iteration limit reached")
