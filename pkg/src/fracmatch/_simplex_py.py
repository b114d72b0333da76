"""Pure-NumPy pivot kernel for the float simplex.

Mirrors fracmatch._simplex (the compiled kernel) operation for operation:
same entering rule (cyclic block pricing, Bland fallback), same ratio test
and tie-breaks, and floating-point expressions arranged so both backends
produce bitwise-identical pivot sequences.
"""

from __future__ import annotations

import numpy as np

_BLOCK = 128


def pivot_once(T: np.ndarray, rhs: np.ndarray, basis: np.ndarray, i: int, j: int) -> None:
    """Pivot on (row i, column j) across all rows including the cost row."""
    piv = T[i, j]
    inv = 1.0 / piv
    T[i, :] *= inv
    rhs[i] *= inv
    col = T[:, j].copy()
    col[i] = 0.0
    T -= np.outer(col, T[i, :])
    rhs -= col * rhs[i]
    T[:, j] = 0.0
    T[i, j] = 1.0
    basis[i] = j


def _enter_pricing(d, ok, cursor: int, nblocks: int, N: int):
    for scan in range(nblocks):
        blk = (cursor + scan) % nblocks
        lo = blk * _BLOCK
        hi = min(N, lo + _BLOCK)
        mask = ok[lo:hi]
        if mask.any():
            vals = np.where(mask, d[lo:hi], -np.inf)
            return lo + int(np.argmax(vals)), blk
    return -1, cursor


def _enter_bland(ok):
    idx = np.nonzero(ok)[0]
    return int(idx[0]) if idx.size else -1


def run_phase(T, rhs, basis, flipped, upper, tol, pivtol, max_iter, bland_from):
    """Run one simplex phase to optimality on the prepared tableau.

    Returns (status, iterations): status 0 = optimal, 1 = unbounded,
    2 = iteration cap hit.  All arrays are updated in place.
    """
    m = basis.shape[0]
    N = T.shape[1]
    in_basis = np.zeros(N, dtype=bool)
    in_basis[basis] = True
    nblocks = max(1, (N + _BLOCK - 1) // _BLOCK)
    cursor = 0
    iters = 0
    while True:
        d = T[m]
        ok = (d > tol) & (upper > 0.0) & ~in_basis
        if iters < bland_from:
            j, cursor = _enter_pricing(d, ok, cursor, nblocks, N)
            if j < 0:
                j = _enter_bland(ok)  # cursor scan and full scan agree; belt and braces
        else:
            j = _enter_bland(ok)
        if j < 0:
            return 0, iters
        if iters >= max_iter:
            return 2, iters
        iters += 1

        # ratio test: smallest step, ties broken by smallest variable index
        best_t = upper[j]
        best_var = j
        best_row = -1
        best_kind = 2
        col = T[:m, j]
        for i in np.nonzero(np.abs(col) > pivtol)[0]:
            a = col[i]
            g = basis[i]
            if a > 0.0:
                t = rhs[i] / a
                kind = 0
            else:
                ug = upper[g]
                if ug == np.inf:
                    continue
                t = (ug - rhs[i]) / (-a)
                kind = 1
            if t < 0.0:
                t = 0.0
            if t < best_t or (t == best_t and g < best_var):
                best_t, best_var, best_row, best_kind = t, g, int(i), kind

        if best_t == np.inf:
            return 1, iters
        if best_kind == 2:
            u = upper[j]
            colf = T[:, j].copy()
            rhs -= colf * u
            T[:, j] = -colf
            flipped[j] ^= 1
        else:
            if best_kind == 1:
                # flip negates column g (= e_i); rescaling the row by -1
                # restores column g to +e_i and negates everything else
                g = basis[best_row]
                rhs[best_row] = upper[g] - rhs[best_row]
                T[best_row, :] = -T[best_row, :]
                T[best_row, g] = 1.0
                flipped[g] ^= 1
            old = basis[best_row]
            pivot_once(T, rhs, basis, best_row, j)
            in_basis[old] = False
            in_basis[j] = True
