# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled pivot kernel for the float simplex.

Must stay in lockstep with fracmatch._simplex_py: same entering rule, ratio
test, tie-breaks, and floating-point expression order (the build disables
FMA contraction so elementwise updates round exactly like NumPy's).
"""

import numpy as np

from libc.math cimport fabs, INFINITY

cdef Py_ssize_t BLOCK = 128


def run_phase(double[:, ::1] T, double[::1] rhs, long long[::1] basis,
              unsigned char[::1] flipped, double[::1] upper,
              double tol, double pivtol, long long max_iter, long long bland_from):
    """Run one simplex phase in place; returns (status, iterations).

    status 0 = optimal, 1 = unbounded, 2 = iteration cap hit.
    """
    cdef Py_ssize_t m = basis.shape[0]
    cdef Py_ssize_t N = T.shape[1]
    cdef Py_ssize_t nblocks = (N + BLOCK - 1) // BLOCK
    if nblocks < 1:
        nblocks = 1
    in_b = np.zeros(N, dtype=np.uint8)
    cdef unsigned char[::1] in_basis = in_b
    cdef Py_ssize_t i, k, l, scan, blk, lo, hi, bj, j, best_row, best_kind, kind
    cdef long long iters = 0
    cdef Py_ssize_t cursor = 0
    cdef long long g, best_var, old
    cdef double best, t, best_t, a, ug, u, tmp, piv, inv, f

    for i in range(m):
        in_basis[basis[i]] = 1

    while True:
        # entering column
        j = -1
        if iters < bland_from:
            for scan in range(nblocks):
                blk = (cursor + scan) % nblocks
                lo = blk * BLOCK
                hi = lo + BLOCK
                if hi > N:
                    hi = N
                best = -INFINITY
                bj = -1
                for l in range(lo, hi):
                    if T[m, l] > tol and upper[l] > 0.0 and not in_basis[l]:
                        if T[m, l] > best:
                            best = T[m, l]
                            bj = l
                if bj >= 0:
                    j = bj
                    cursor = blk
                    break
        if j < 0:
            for l in range(N):
                if T[m, l] > tol and upper[l] > 0.0 and not in_basis[l]:
                    j = l
                    break
        if j < 0:
            return (0, iters)
        if iters >= max_iter:
            return (2, iters)
        iters += 1

        # ratio test: smallest step, ties broken by smallest variable index
        best_t = upper[j]
        best_var = j
        best_row = -1
        best_kind = 2
        for i in range(m):
            a = T[i, j]
            if fabs(a) <= pivtol:
                continue
            g = basis[i]
            if a > 0.0:
                t = rhs[i] / a
                kind = 0
            else:
                ug = upper[g]
                if ug == INFINITY:
                    continue
                t = (ug - rhs[i]) / (-a)
                kind = 1
            if t < 0.0:
                t = 0.0
            if t < best_t or (t == best_t and g < best_var):
                best_t = t
                best_var = g
                best_row = i
                best_kind = kind

        if best_t == INFINITY:
            return (1, iters)
        if best_kind == 2:
            u = upper[j]
            for k in range(m + 1):
                tmp = T[k, j]
                rhs[k] = rhs[k] - tmp * u
                T[k, j] = -tmp
            flipped[j] = flipped[j] ^ 1
        else:
            if best_kind == 1:
                # flip negates column g (= e_i); rescaling the row by -1
                # restores column g to +e_i and negates everything else
                g = basis[best_row]
                rhs[best_row] = upper[g] - rhs[best_row]
                for l in range(N):
                    T[best_row, l] = -T[best_row, l]
                T[best_row, g] = 1.0
                flipped[g] = flipped[g] ^ 1
            piv = T[best_row, j]
            inv = 1.0 / piv
            for l in range(N):
                T[best_row, l] = T[best_row, l] * inv
            rhs[best_row] = rhs[best_row] * inv
            for k in range(m + 1):
                if k == best_row:
                    continue
                f = T[k, j]
                if f != 0.0:
                    for l in range(N):
                        T[k, l] = T[k, l] - f * T[best_row, l]
                    rhs[k] = rhs[k] - f * rhs[best_row]
            for k in range(m + 1):
                T[k, j] = 0.0
            T[best_row, j] = 1.0
            old = basis[best_row]
            basis[best_row] = j
            in_basis[old] = 0
            in_basis[j] = 1
