"""Linear programming core: exact rational simplex plus a float variant.

Both solvers run the same bounded-variable two-phase simplex.  Variable
bounds are handled implicitly (nonbasic variables may sit at either bound,
tracked by a flip substitution x' = u - x), so the basis never grows beyond
the number of structural constraints.

Exact mode works in rational arithmetic (gmpy2.mpq when available, else
fractions.Fraction) with Bland's anti-cycling rule; results are returned as
``fractions.Fraction`` and satisfy primal/dual feasibility and complementary
slackness exactly.  Float mode runs the pivot loop in a compiled kernel
(fracmatch._simplex) when the extension built, falling back to a pure-NumPy
implementation with identical pivoting semantics.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .errors import InputError, SolverError

try:
    from gmpy2 import mpq as _Q  # type: ignore
except ImportError:  # pragma: no cover - gmpy2 is an optional speedup
    _Q = Fraction

try:
    from . import _simplex as _kernel
    KERNEL_BACKEND = "cython"
except ImportError:  # extension not built
    from . import _simplex_py as _kernel
    KERNEL_BACKEND = "numpy"

from . import _simplex_py as _pykernel  # always available, used for cleanup pivots

__all__ = [
    "LinearProgram", "LPSolution", "solve_exact", "solve_float",
    "probe_optimal_face", "optimize_over_face", "KERNEL_BACKEND",
]

Rational = Fraction

_MAX = "max"
_MIN = "min"
_SENSES = ("<=", ">=", "=")


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        # Fractions built from gmpy2 values can carry mpz internals, which
        # gmpy2.mpq() then refuses to convert back; force plain ints
        if type(x.numerator) is int and type(x.denominator) is int:
            return x
        return Fraction(int(x.numerator), int(x.denominator))
    if isinstance(x, float):
        return Fraction(x)  # exact binary value
    return Fraction(x)


def _clean(q) -> Fraction:
    """Exact value of an mpq (or any rational) as an int-backed Fraction."""
    return Fraction(int(q.numerator), int(q.denominator))


class LinearProgram:
    """A small LP: sense, objective, sparse rows, box bounds.

    Bounds default to [0, 1] per variable; ``(lo, None)`` means unbounded
    above.  Treat instances as frozen once handed to a solver.
    """

    def __init__(self, sense: str, objective: Sequence, bounds=None):
        if sense not in (_MAX, _MIN):
            raise InputError(f"sense must be 'max' or 'min', got {sense!r}")
        self.sense = sense
        self.objective = [_frac(c) for c in objective]
        self.ncols = len(self.objective)
        if bounds is None:
            self.bounds = [(Fraction(0), Fraction(1))] * self.ncols
        else:
            if len(bounds) != self.ncols:
                raise InputError("bounds length must match objective length")
            self.bounds = []
            for lo, hi in bounds:
                lo = _frac(lo)
                hi = None if hi is None else _frac(hi)
                if hi is not None and hi < lo:
                    raise InputError(f"empty bound interval [{lo}, {hi}]")
                self.bounds.append((lo, hi))
        self.rows: list[tuple[dict, str, Fraction]] = []

    def add_constraint(self, coeffs: dict, sense: str, rhs) -> None:
        if sense not in _SENSES:
            raise InputError(f"constraint sense must be one of {_SENSES}, got {sense!r}")
        clean = {}
        for j, a in coeffs.items():
            if not 0 <= j < self.ncols:
                raise InputError(f"coefficient index {j} out of range")
            a = _frac(a)
            if a != 0:
                clean[j] = a
        self.rows.append((clean, sense, _frac(rhs)))

    @property
    def nrows(self) -> int:
        return len(self.rows)


@dataclass
class LPSolution:
    """Solver output; values are Fractions (exact mode) or floats."""

    status: str                      # "optimal" | "infeasible" | "unbounded"
    objective: Optional[object] = None
    primal: Optional[tuple] = None   # per structural variable
    duals: Optional[tuple] = None    # per constraint row
    reduced_costs: Optional[tuple] = None
    iterations: int = 0
    mode: str = "exact"


# ---------------------------------------------------------------------------
# standard form
# ---------------------------------------------------------------------------

@dataclass
class _StdForm:
    """max c.x over A x (normalized senses) with slack/artificial columns.

    Column layout: [structural | slacks | artificials]; one artificial per
    row so the final tableau carries B^-1 (duals are read off its columns).
    """

    nstruct: int
    ntotal: int
    c: list                      # internal objective (max orientation), len ntotal
    rows: list                   # list of dict col -> coeff (normalized, incl. slack/art)
    b: list                      # normalized rhs, >= 0
    upper: list                  # per column: Fraction or None (= +inf)
    basis: list                  # initial basis column per row
    art_of_row: list
    row_sign: list               # +1 / -1 applied during normalization
    needs_phase1: bool
    lo_shift: list               # original lower bounds of structural vars
    obj_const: Fraction          # objective constant from the lo shift (original sense)
    minimize: bool


def _standardize(lp: LinearProgram) -> _StdForm:
    ns = lp.ncols
    minimize = lp.sense == _MIN
    lo_shift = [lo for lo, _ in lp.bounds]
    obj_const = sum((c * lo for c, lo in zip(lp.objective, lo_shift)), Fraction(0))

    c_int = [(-c if minimize else c) for c in lp.objective]
    upper: list = []
    for lo, hi in lp.bounds:
        upper.append(None if hi is None else hi - lo)

    # shift: x = lo + x'  =>  row rhs -= a . lo
    rows = []
    b = []
    senses = []
    row_sign = []
    for coeffs, sense, rhs in lp.rows:
        shift = sum((a * lo_shift[j] for j, a in coeffs.items()), Fraction(0))
        rhs = rhs - shift
        if rhs < 0:
            coeffs = {j: -a for j, a in coeffs.items()}
            rhs = -rhs
            sense = {"<=": ">=", ">=": "<=", "=": "="}[sense]
            row_sign.append(-1)
        else:
            row_sign.append(1)
        rows.append(dict(coeffs))
        b.append(rhs)
        senses.append(sense)

    m = len(rows)
    nslack = sum(1 for s in senses if s in ("<=", ">="))
    ntotal = ns + nslack + m
    c = list(c_int) + [Fraction(0)] * (nslack + m)

    basis = [None] * m
    art_of_row = []
    needs_phase1 = False
    slack_idx = ns
    for i, sense in enumerate(senses):
        art = ns + nslack + i
        art_of_row.append(art)
        if sense == "<=":
            rows[i][slack_idx] = Fraction(1)
            upper.append(None)
            basis[i] = slack_idx
            slack_idx += 1
        elif sense == ">=":
            rows[i][slack_idx] = Fraction(-1)
            upper.append(None)
            slack_idx += 1
            basis[i] = art
            needs_phase1 = True
        else:
            basis[i] = art
            needs_phase1 = True
        rows[i][art] = Fraction(1)
    # artificials kept out of the phase-1 basis are pinned at zero
    for i in range(m):
        upper.append(None if basis[i] == art_of_row[i] else Fraction(0))
    assert len(upper) == ntotal

    return _StdForm(ns, ntotal, c, rows, b, upper, basis, art_of_row,
                    row_sign, needs_phase1, lo_shift, obj_const, minimize)


# ---------------------------------------------------------------------------
# exact rational simplex
# ---------------------------------------------------------------------------

def _exact_iter_cap(m: int, n: int) -> int:
    return 20000 + 200 * (m + n)


class _RationalSimplex:
    """Dense-tableau bounded simplex over exact rationals, Bland's rule."""

    def __init__(self, std: _StdForm):
        self.std = std
        self.m = len(std.rows)
        self.N = std.ntotal
        zero = _Q(0)
        self.T = []
        for row in std.rows:
            dense = [zero] * self.N
            for j, a in row.items():
                dense[j] = _Q(a)
            self.T.append(dense)
        self.rhs = [_Q(x) for x in std.b]
        self.d = [zero] * self.N      # reduced-cost row
        self.negz = zero              # stores -objective
        self.basis = list(std.basis)
        self.in_basis = [-1] * self.N
        for i, j in enumerate(self.basis):
            self.in_basis[j] = i
        self.flipped = [False] * self.N
        self.upper = [None if u is None else _Q(u) for u in std.upper]
        self.active = [True] * self.m
        self.iterations = 0

    # -- pivoting ------------------------------------------------------

    def _set_objective(self, c: list) -> None:
        zero = _Q(0)
        d = [_Q(x) for x in c]
        # flipped columns are negated in the tableau; mirror that in c
        for j in range(self.N):
            if self.flipped[j] and d[j] != zero:
                d[j] = -d[j]
        negz = zero
        # x = u - x' for every flipped column contributes the constant c*u
        for j in range(self.N):
            if self.flipped[j] and c[j] != 0:
                negz -= _Q(c[j]) * self.upper[j]
        for i in range(self.m):
            cb = d[self.basis[i]]
            if cb != zero:
                row = self.T[i]
                d = [a - cb * t for a, t in zip(d, row)]
                negz -= cb * self.rhs[i]
        self.d = d
        self.negz = negz

    def _flip(self, j: int) -> None:
        u = self.upper[j]
        for i in range(self.m):
            t = self.T[i][j]
            if t != 0:
                self.rhs[i] -= t * u
                self.T[i][j] = -t
        if self.d[j] != 0:
            self.negz -= self.d[j] * u
            self.d[j] = -self.d[j]
        self.flipped[j] = not self.flipped[j]

    def _flip_basic_for_upper_leave(self, i: int) -> None:
        # flip negates column g (= e_i), then the row is rescaled by -1,
        # which restores column g to +e_i and negates everything else
        g = self.basis[i]
        u = self.upper[g]
        self.rhs[i] = u - self.rhs[i]
        self.T[i] = [-a for a in self.T[i]]
        self.T[i][g] = _Q(1)
        self.flipped[g] = not self.flipped[g]

    def _pivot(self, i: int, j: int) -> None:
        T, rhs = self.T, self.rhs
        piv = T[i][j]
        if piv != 1:
            inv = 1 / piv
            T[i] = [a * inv for a in T[i]]
            rhs[i] = rhs[i] * inv
        rowi = T[i]
        bi = rhs[i]
        for k in range(self.m):
            if k == i:
                continue
            f = T[k][j]
            if f != 0:
                T[k] = [a - f * t for a, t in zip(T[k], rowi)]
                rhs[k] -= f * bi
        f = self.d[j]
        if f != 0:
            self.d = [a - f * t for a, t in zip(self.d, rowi)]
            self.negz -= f * bi
        old = self.basis[i]
        self.in_basis[old] = -1
        self.basis[i] = j
        self.in_basis[j] = i

    # -- phase loop ----------------------------------------------------

    def run(self) -> str:
        """Bland simplex to optimality; returns 'optimal' or 'unbounded'."""
        cap = _exact_iter_cap(self.m, self.N)
        zero = _Q(0)
        while True:
            enter = -1
            for j in range(self.N):
                u = self.upper[j]
                if u is not None and u == 0:
                    continue
                if self.in_basis[j] >= 0:
                    continue
                if self.d[j] > zero:
                    enter = j
                    break
            if enter < 0:
                return "optimal"

            self.iterations += 1
            if self.iterations > cap:
                raise SolverError(f"exact simplex exceeded {cap} iterations (bug guard)")

            # ratio test: smallest step, ties by smallest variable index
            best_t = self.upper[enter]            # own-bound flip candidate
            best_var = enter
            best_row = -1
            best_kind = 2
            for i in range(self.m):
                a = self.T[i][enter]
                if a == 0:
                    continue
                g = self.basis[i]
                if a > 0:
                    t = self.rhs[i] / a
                    kind = 0
                else:
                    ug = self.upper[g]
                    if ug is None:
                        continue
                    t = (ug - self.rhs[i]) / (-a)
                    kind = 1
                if best_t is None or t < best_t or (t == best_t and g < best_var):
                    best_t, best_var, best_row, best_kind = t, g, i, kind

            if best_t is None:
                return "unbounded"
            if best_kind == 2:
                self._flip(enter)
            elif best_kind == 1:
                self._flip_basic_for_upper_leave(best_row)
                self._pivot(best_row, enter)
            else:
                self._pivot(best_row, enter)

    def drive_out_artificials(self) -> None:
        art = set(self.std.art_of_row)
        for i in range(self.m):
            if self.basis[i] not in art:
                continue
            done = False
            for j in range(self.N):
                if j in art or self.in_basis[j] >= 0:
                    continue
                if self.T[i][j] != 0:
                    self._pivot(i, j)
                    done = True
                    break
            if not done:
                # row is redundant: deactivate it
                zero = _Q(0)
                self.T[i] = [zero] * self.N
                self.rhs[i] = zero
                self.active[i] = False

    # -- extraction ----------------------------------------------------

    def solve(self) -> tuple:
        std = self.std
        if std.needs_phase1:
            c1 = [Fraction(0)] * self.N
            for i, j in enumerate(std.basis):
                if j == std.art_of_row[i]:
                    c1[j] = Fraction(-1)
            self._set_objective(c1)
            status = self.run()
            assert status == "optimal"  # phase-1 objective is bounded
            if -self.negz != 0:
                return ("infeasible", None, None, None)
            self.drive_out_artificials()
            for i in range(self.m):
                self.upper[std.art_of_row[i]] = _Q(0)
        self._set_objective(std.c)
        status = self.run()
        if status == "unbounded":
            return ("unbounded", None, None, None)

        x = []
        for j in range(std.nstruct):
            i = self.in_basis[j]
            raw = self.rhs[i] if i >= 0 else _Q(0)
            if self.flipped[j]:
                raw = self.upper[j] - raw
            x.append(_clean(raw) + std.lo_shift[j])

        sgn = -1 if std.minimize else 1
        duals = []
        for i in range(self.m):
            if not self.active[i]:
                duals.append(Fraction(0))
                continue
            y = -_clean(self.d[std.art_of_row[i]])
            duals.append(sgn * std.row_sign[i] * y)
        rcs = []
        for j in range(std.nstruct):
            d = _clean(self.d[j])
            if self.flipped[j]:
                d = -d
            rcs.append(sgn * d)

        z = -_clean(self.negz)
        obj = sgn * z + std.obj_const
        return ("optimal", obj, tuple(x), (tuple(duals), tuple(rcs)))


def solve_exact(lp: LinearProgram) -> LPSolution:
    """Optimal basic solution with exact rational primal/dual certificates."""
    std = _standardize(lp)
    solver = _RationalSimplex(std)
    status, obj, x, dual_pack = solver.solve()
    if status != "optimal":
        return LPSolution(status=status, iterations=solver.iterations, mode="exact")
    duals, rcs = dual_pack
    return LPSolution(status="optimal", objective=obj, primal=x, duals=duals,
                      reduced_costs=rcs, iterations=solver.iterations, mode="exact")


# ---------------------------------------------------------------------------
# float simplex (kernel-backed)
# ---------------------------------------------------------------------------

def _float_cap(m: int, n: int) -> int:
    return 50 * (m + n)


class _FloatSimplex:
    """Same algorithm as _RationalSimplex over float64 numpy arrays.

    The pivot loop runs in the compiled kernel when available; entering uses
    cyclic partial pricing with a Bland fallback late in the iteration budget.
    """

    def __init__(self, std: _StdForm, tol: float):
        self.std = std
        self.tol = tol
        self.pivtol = 1e-10
        m = len(std.rows)
        N = std.ntotal
        self.m, self.N = m, N
        T = np.zeros((m + 1, N), dtype=np.float64)
        for i, row in enumerate(std.rows):
            for j, a in row.items():
                T[i, j] = float(a)
        self.T = T
        self.rhs = np.zeros(m + 1, dtype=np.float64)
        self.rhs[:m] = [float(x) for x in std.b]
        self.basis = np.array(std.basis, dtype=np.int64)
        self.flipped = np.zeros(N, dtype=np.uint8)
        self.upper = np.array(
            [np.inf if u is None else float(u) for u in std.upper], dtype=np.float64)
        self.active = np.ones(m, dtype=bool)
        self.iterations = 0

    def _set_objective(self, c: np.ndarray) -> None:
        d = c.copy()
        flip = self.flipped.astype(bool)
        d[flip] = -d[flip]
        m = self.m
        negz = 0.0
        at_up = flip & (c != 0.0)
        if at_up.any():
            negz -= float(np.dot(c[at_up], self.upper[at_up]))
        for i in range(m):
            cb = d[self.basis[i]]
            if cb != 0.0:
                d -= cb * self.T[i]
                negz -= cb * self.rhs[i]
        d[self.basis] = 0.0
        self.T[m] = d
        self.rhs[m] = negz

    def _run_phase(self, bland_from: int) -> tuple:
        cap = _float_cap(self.m, self.N)
        status, iters = _kernel.run_phase(
            self.T, self.rhs, self.basis, self.flipped, self.upper,
            self.tol, self.pivtol, cap - self.iterations, bland_from)
        self.iterations += iters
        return status

    def solve(self) -> tuple:
        std = self.std
        m, N = self.m, self.N
        bland_from = max(200, 10 * (m + 1))
        if std.needs_phase1:
            c1 = np.zeros(N)
            for i, j in enumerate(std.basis):
                if j == std.art_of_row[i]:
                    c1[j] = -1.0
            self._set_objective(c1)
            status = self._run_phase(bland_from)
            if status == 2:
                raise SolverError(
                    f"float simplex hit the iteration cap {_float_cap(m, N)} in phase 1")
            if -self.rhs[m] < -1e-7:
                return ("infeasible", None, None, None)
            self._cleanup_artificials()
            for i in range(m):
                self.upper[std.art_of_row[i]] = 0.0
        c2 = np.array([float(c) for c in std.c])
        self._set_objective(c2)
        status = self._run_phase(bland_from)
        if status == 2:
            raise SolverError(
                f"float simplex hit the iteration cap {_float_cap(m, N)} in phase 2")
        if status == 1:
            return ("unbounded", None, None, None)

        in_basis = np.full(N, -1, dtype=np.int64)
        for i in range(m):
            in_basis[self.basis[i]] = i
        x = []
        for j in range(std.nstruct):
            i = in_basis[j]
            raw = float(self.rhs[i]) if i >= 0 else 0.0
            if self.flipped[j]:
                raw = float(self.upper[j]) - raw
            lo = float(std.lo_shift[j])
            hi = np.inf if std.upper[j] is None else float(std.upper[j])
            x.append(min(max(raw, 0.0), hi) + lo)

        sgn = -1.0 if std.minimize else 1.0
        duals = []
        for i in range(m):
            if not self.active[i]:
                duals.append(0.0)
                continue
            y = -float(self.T[m, std.art_of_row[i]])
            duals.append(sgn * std.row_sign[i] * y)
        rcs = []
        for j in range(std.nstruct):
            d = float(self.T[m, j])
            if self.flipped[j]:
                d = -d
            rcs.append(sgn * d)
        obj = sgn * (-float(self.rhs[m])) + float(std.obj_const)
        return ("optimal", obj, tuple(x), (tuple(duals), tuple(rcs)))

    def _cleanup_artificials(self) -> None:
        art = set(self.std.art_of_row)
        in_basis = np.full(self.N, -1, dtype=np.int64)
        for i in range(self.m):
            in_basis[self.basis[i]] = i
        for i in range(self.m):
            if self.basis[i] not in art:
                continue
            row = self.T[i]
            done = False
            for j in range(self.N):
                if j in art or in_basis[j] >= 0:
                    continue
                if abs(row[j]) > 1e-8:
                    _pykernel.pivot_once(self.T, self.rhs, self.basis, i, j)
                    in_basis[self.basis[i]] = -1  # old artificial
                    in_basis[j] = i
                    done = True
                    break
            if not done:
                self.T[i, :] = 0.0
                self.rhs[i] = 0.0
                self.active[i] = False


def solve_float(lp: LinearProgram, tol: float = 1e-9) -> LPSolution:
    """Float-mode solve; objective within ~tol of the exact optimum.

    Raises SolverError when the 50*(rows+cols) iteration cap is exceeded.
    """
    if tol <= 0:
        raise InputError(f"tol must be positive, got {tol}")
    std = _standardize(lp)
    solver = _FloatSimplex(std, tol)
    status, obj, x, dual_pack = solver.solve()
    if status != "optimal":
        return LPSolution(status=status, iterations=solver.iterations, mode="float")
    duals, rcs = dual_pack
    return LPSolution(status="optimal", objective=obj, primal=x, duals=duals,
                      reduced_costs=rcs, iterations=solver.iterations, mode="float")


# ---------------------------------------------------------------------------
# optimal-face probing
# ---------------------------------------------------------------------------

def optimize_over_face(lp: LinearProgram, opt, objective: dict, sense: str) -> Fraction:
    """Extremize a linear function over lp's optimal face (exact mode).

    The face is lp's feasible region with the original objective pinned to
    ``opt``.  ``objective`` is a sparse {column: coeff} map.
    """
    if sense not in (_MIN, _MAX):
        raise InputError(f"sense must be 'min' or 'max', got {sense!r}")
    obj = [Fraction(0)] * lp.ncols
    for j, a in objective.items():
        if not 0 <= j < lp.ncols:
            raise InputError(f"objective index {j} out of range")
        obj[j] = _frac(a)
    probe = LinearProgram(sense, obj, bounds=lp.bounds)
    probe.rows = list(lp.rows)
    pin = {j: c for j, c in enumerate(lp.objective) if c != 0}
    probe.add_constraint(pin, "=", _frac(opt))
    sol = solve_exact(probe)
    if sol.status == "infeasible":
        raise InputError(f"optimal face is empty: objective value {opt} is not attained")
    if sol.status != "optimal":
        raise SolverError(f"face probe ended with status {sol.status}")
    return sol.objective


def probe_optimal_face(lp: LinearProgram, opt, coordinate: int, sense: str) -> Fraction:
    """Extreme value of one coordinate over the optimal face of lp."""
    return optimize_over_face(lp, opt, {coordinate: 1}, sense)
