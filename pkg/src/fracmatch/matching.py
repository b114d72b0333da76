"""Fractional matching and cover numbers of a hypergraph.

nu_star and tau_star solve two separate LPs (the matching LP and the
covering LP); in exact mode their values must coincide by duality, and the
test suite asserts exactly that rather than deriving one from the other.

Perfection means nu_star == n/r.  Uniqueness and block-constancy of minimum
covers are decided by probing coordinates (and coordinate differences) over
the optimal face of the covering LP, which is exact and certificate-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError, SolverError
from .hypergraph import Hypergraph
from .lpcore import LinearProgram, optimize_over_face, probe_optimal_face, solve_exact, solve_float

__all__ = [
    "FractionalMatching", "FractionalCover", "CoverShapeReport",
    "matching_lp", "cover_lp", "nu_star", "tau_star",
    "has_perfect_fractional_matching", "cover_shape",
    "matching_to_text", "cover_to_text",
]

FLOAT_PFM_TOL = 1e-7  # looser than solver tol to absorb accumulation


@dataclass(frozen=True)
class FractionalMatching:
    """Edge weights phi with load at most 1 at every vertex."""

    weights: dict  # edge index -> weight
    total: object

    def vertex_load(self, h: Hypergraph, v: int):
        return sum((self.weights.get(i, 0) for i in h.incident_edge_indices(v)), 0)

    def is_feasible(self, h: Hypergraph, tol=0) -> bool:
        if any(w < -tol or w > 1 + tol for w in self.weights.values()):
            return False
        return all(self.vertex_load(h, v) <= 1 + tol for v in range(h.n))


@dataclass(frozen=True)
class FractionalCover:
    """Vertex weights w with total at least 1 on every edge."""

    weights: dict  # vertex index -> weight
    total: object

    def edge_load(self, h: Hypergraph, edge_index: int):
        return sum((self.weights.get(v, 0) for v in h.edges[edge_index]), 0)

    def is_feasible(self, h: Hypergraph, tol=0) -> bool:
        if any(w < -tol or w > 1 + tol for w in self.weights.values()):
            return False
        return all(self.edge_load(h, i) >= 1 - tol for i in range(len(h.edges)))


@dataclass(frozen=True)
class CoverShapeReport:
    """Shape of the set of minimum fractional covers."""

    tau: Fraction
    is_unique_uniform: bool
    is_block_constant: Optional[bool]   # None when h carries no partition
    ranges: tuple                       # per vertex, (min, max) over the optimal face


def matching_lp(h: Hypergraph) -> LinearProgram:
    """max sum phi_e subject to load <= 1 at each vertex, phi >= 0.

    Edge weights need no explicit upper bound: any vertex row already caps
    phi_e at 1, and unbounded boxes keep the row duals equal to an optimal
    fractional cover.
    """
    m = len(h.edges)
    lp = LinearProgram("max", [1] * m, bounds=[(0, None)] * m)
    for v in range(h.n):
        lp.add_constraint({i: 1 for i in h.incident_edge_indices(v)}, "<=", 1)
    return lp


def cover_lp(h: Hypergraph) -> LinearProgram:
    """min sum w_v subject to sum over each edge >= 1, w >= 0.

    No explicit w <= 1: a minimum cover never exceeds 1 anywhere (clipping
    would stay feasible and be cheaper), and open boxes keep the row duals
    equal to an optimal fractional matching.
    """
    lp = LinearProgram("min", [1] * h.n, bounds=[(0, None)] * h.n)
    for e in h.edges:
        lp.add_constraint({v: 1 for v in e}, ">=", 1)
    return lp


def _solve(lp: LinearProgram, mode: str):
    if mode == "exact":
        sol = solve_exact(lp)
    elif mode == "float":
        sol = solve_float(lp)
    else:
        raise InputError(f"mode must be 'exact' or 'float', got {mode!r}")
    if sol.status != "optimal":
        raise SolverError(f"LP ended with status {sol.status}")
    return sol


def nu_star(h: Hypergraph, mode: str = "exact"):
    """Fractional matching number with an optimal matching attaining it."""
    if not h.edges:
        zero = Fraction(0) if mode == "exact" else 0.0
        return zero, FractionalMatching({}, zero)
    sol = _solve(matching_lp(h), mode)
    weights = dict(enumerate(sol.primal))
    return sol.objective, FractionalMatching(weights, sol.objective)


def tau_star(h: Hypergraph, mode: str = "exact"):
    """Fractional cover number with a minimum cover attaining it."""
    if not h.edges:
        zero = Fraction(0) if mode == "exact" else 0.0
        return zero, FractionalCover({v: zero for v in range(h.n)}, zero)
    sol = _solve(cover_lp(h), mode)
    weights = dict(enumerate(sol.primal))
    return sol.objective, FractionalCover(weights, sol.objective)


def has_perfect_fractional_matching(h: Hypergraph, mode: str = "exact") -> bool:
    """True iff nu_star(h) equals n/r (within FLOAT_PFM_TOL in float mode)."""
    value, _ = nu_star(h, mode)
    if mode == "exact":
        return value == Fraction(h.n, h.r)
    return abs(value - h.n / h.r) <= FLOAT_PFM_TOL


def cover_shape(h: Hypergraph, mode: str = "exact") -> CoverShapeReport:
    """Probe the optimal face of the covering LP for uniqueness and shape.

    Exact mode only: uniqueness of the minimum cover is a knife-edge
    question that float arithmetic cannot decide.
    """
    if mode != "exact":
        raise InputError("cover_shape requires exact mode")
    lp = cover_lp(h)
    sol = solve_exact(lp)
    if sol.status != "optimal":
        raise SolverError(f"covering LP ended with status {sol.status}")
    tau = sol.objective

    ranges = []
    for v in range(h.n):
        lo = probe_optimal_face(lp, tau, v, "min")
        hi = probe_optimal_face(lp, tau, v, "max")
        ranges.append((lo, hi))
    ranges = tuple(ranges)

    third = Fraction(1, h.r)
    unique_uniform = tau == Fraction(h.n, h.r) and all(
        lo == hi == third for lo, hi in ranges)

    block_constant: Optional[bool] = None
    if h.partition is not None:
        block_constant = True
        for block in h.partition:
            # per-vertex ranges agreeing is necessary but not sufficient:
            # probe max of w(u) - w(u') for every ordered pair in the block
            for u in block:
                for u2 in block:
                    if u == u2:
                        continue
                    gap = optimize_over_face(lp, tau, {u: 1, u2: -1}, "max")
                    if gap != 0:
                        block_constant = False
                        break
                if block_constant is False:
                    break
            if block_constant is False:
                break

    return CoverShapeReport(tau, unique_uniform, block_constant, ranges)


def _fmt(value) -> str:
    if isinstance(value, Fraction):
        return str(value)
    return repr(float(value))


def matching_to_text(value, fm: FractionalMatching) -> str:
    lines = [f"nu_star {_fmt(value)}"]
    for i in sorted(fm.weights):
        lines.append(f"{i} {_fmt(fm.weights[i])}")
    return "\n".join(lines) + "\n"


def cover_to_text(value, fc: FractionalCover) -> str:
    lines = [f"tau_star {_fmt(value)}"]
    for v in sorted(fc.weights):
        lines.append(f"{v} {_fmt(fc.weights[v])}")
    return "\n".join(lines) + "\n"
