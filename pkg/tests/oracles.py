"""Independent brute-force oracles the tests compare the library against.

Nothing here uses the package's simplex solver or hitting-set search;
matching/cover numbers come from rational polytope-vertex enumeration,
expansion verdicts from direct enumeration of all blocking sets Y, and
independence numbers from bitmask subset enumeration.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

MAX_VERTEX_SYSTEMS = 300_000


def solve_square(a, b):
    """Fraction Gaussian elimination; None if the system is singular."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        inv = Fraction(1) / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _polytope_optimum(nvars, rows, rhs, maximize):
    """Optimize sum(x) over {Ax <= b or Ax >= b, x >= 0} by enumerating
    basic solutions: every vertex has nvars active constraints."""
    nrows = len(rows)
    total = nrows + nvars
    count = 1
    for i in range(nvars):
        count = count * (total - i) // (i + 1)
    if count > MAX_VERTEX_SYSTEMS:
        raise ValueError("instance too large for vertex enumeration")
    best = None
    for active in itertools.combinations(range(total), nvars):
        a, b = [], []
        for idx in active:
            if idx < nrows:
                a.append([Fraction(v) for v in rows[idx]])
                b.append(Fraction(rhs[idx]))
            else:
                var = idx - nrows
                a.append([Fraction(1 if j == var else 0) for j in range(nvars)])
                b.append(Fraction(0))
        x = solve_square(a, b)
        if x is None or any(v < 0 for v in x):
            continue
        ok = True
        for row, target in zip(rows, rhs):
            lhs = sum(Fraction(c) * v for c, v in zip(row, x))
            if maximize and lhs > target:
                ok = False
                break
            if not maximize and lhs < target:
                ok = False
                break
        if not ok:
            continue
        value = sum(x)
        if best is None or (value > best if maximize else value < best):
            best = value
    return best


def oracle_nu_star(h) -> Fraction:
    """Exact matching number via vertex enumeration (small instances)."""
    if not h.edges:
        return Fraction(0)
    rows = [[1 if v in e else 0 for e in h.edges] for v in range(h.n)]
    return _polytope_optimum(len(h.edges), rows, [1] * h.n, maximize=True)


def oracle_tau_star(h) -> Fraction:
    """Exact cover number via vertex enumeration (small instances)."""
    if not h.edges:
        return Fraction(0)
    rows = [[1 if v in e else 0 for v in range(h.n)] for e in h.edges]
    return _polytope_optimum(h.n, rows, [1] * len(h.edges), maximize=False)


def verify_pinch(h, matching_weights, cover_weights, value) -> bool:
    """Check a primal/dual certificate pair proving nu* = tau* = value."""
    value = Fraction(value)
    load = [Fraction(0)] * h.n
    total = Fraction(0)
    for i, e in enumerate(h.edges):
        w = Fraction(matching_weights[i])
        if w < 0:
            return False
        total += w
        for v in e:
            load[v] += w
    if total != value or any(l > 1 for l in load):
        return False
    ctotal = Fraction(0)
    for v in range(h.n):
        w = Fraction(cover_weights[v])
        if w < 0:
            return False
        ctotal += w
    if ctotal != value:
        return False
    for e in h.edges:
        if sum(Fraction(cover_weights[v]) for v in e) < 1:
            return False
    return True


def oracle_expansive(h, x, lam) -> bool:
    """No Y with |Y| <= lam*|x| meets every edge at x: direct enumeration."""
    x = frozenset(x)
    budget = int(lam * len(x))
    edges = [frozenset(e) for e in h.edges if x & set(e)]
    if not edges:
        return False
    others = sorted(set(range(h.n)) - x)
    for size in range(0, min(budget, len(others)) + 1):
        for y in itertools.combinations(others, size):
            ys = set(y)
            if all(e & ys for e in edges):
                return False
    return True


def oracle_alpha(h) -> int:
    """Independence number by bitmask enumeration (n <= ~20)."""
    masks = [sum(1 << v for v in e) for e in h.edges]
    best = 0
    for s in range(1 << h.n):
        if any((s & m) == m for m in masks):
            continue
        best = max(best, bin(s).count("1"))
    return best


def scipy_nu_star(h):
    """Float matching number via scipy's LP solver; None when unavailable."""
    try:
        from scipy.optimize import linprog
    except ImportError:
        return None
    if not h.edges:
        return 0.0
    m = len(h.edges)
    a = np.zeros((h.n, m))
    for j, e in enumerate(h.edges):
        for v in e:
            a[v, j] = 1.0
    res = linprog(-np.ones(m), A_ub=a, b_ub=np.ones(h.n),
                  bounds=[(0, None)] * m, method="highs")
    if res.status != 0:
        return None
    return -res.fun
