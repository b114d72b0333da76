"""Neighborhood-expansion checks, brute force at desk scale.

Every "for all Y" quantifier is decided as a minimum hitting set over the
trace family {e - X : e meets X}: a Y killing all edges meeting X is
exactly a hitting set of the traces, so X is expansive at budget b iff no
hitting set of size <= b exists.  This collapses an exponential quantifier
into one small covering search and yields a concrete witness Y on failure.

Enumeration of candidate X runs in canonical order (increasing size, then
lexicographic), so the first witness found is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from .errors import InputError
from .hypergraph import Hypergraph

__all__ = [
    "ExpansionReport", "PartiteExpansionParams", "IndependenceResult",
    "is_lambda_expansive", "check_prop3_hypothesis", "check_graph_corollary",
    "check_prop6_hypothesis", "independence_number",
]

EXHAUSTIVE_N_LIMIT = 16     # full enumeration through this many vertices
SAMPLE_CAP_PER_SIZE = 10_000


def _rational(x) -> Fraction:
    if isinstance(x, str):
        return Fraction(x)
    return Fraction(x)


@dataclass(frozen=True)
class ExpansionReport:
    """Outcome of an expansion check.

    On failure the witness (X, Y) re-verifies directly: X satisfies the
    side conditions and no edge meets X while avoiding Y.
    """

    verdict: bool
    witness: Optional[tuple]    # (X, Y) as sorted vertex tuples
    pairs_checked: int          # number of (X, forall-Y) decisions made
    exhaustive: bool


@dataclass(frozen=True)
class PartiteExpansionParams:
    """epsilon in (0, 1/2) and lambda > 0, exact rationals.

    The headline partite result needs lambda > 2r^2; smaller values are
    accepted here so weaker regimes can be probed, and implication tests
    restrict themselves to valid parameters.
    """

    epsilon: Fraction
    lam: Fraction

    def __post_init__(self):
        eps = _rational(self.epsilon)
        lam = _rational(self.lam)
        if not 0 < eps < Fraction(1, 2):
            raise InputError(f"epsilon must lie in (0, 1/2), got {eps}")
        if lam <= 0:
            raise InputError(f"lambda must be positive, got {lam}")
        object.__setattr__(self, "epsilon", eps)
        object.__setattr__(self, "lam", lam)

    @classmethod
    def defaults(cls, r: int) -> "PartiteExpansionParams":
        lam = Fraction(4 * r ** 3)
        return cls(epsilon=Fraction(1, 2 * r * lam), lam=lam)

    def is_strong(self, r: int) -> bool:
        """Whether lambda is above 2r^2, enough for the stronger cover conclusion."""
        return self.lam > 2 * r * r


# ---------------------------------------------------------------------------
# hitting sets
# ---------------------------------------------------------------------------

def _min_hitting_set(traces: Sequence[frozenset], budget: int) -> Optional[tuple]:
    """A hitting set of size <= budget, or None if none exists.

    Searched by iterative deepening with ascending-vertex branching, so the
    returned set is deterministic.  An empty trace is unhittable: None.
    A trace that is a superset of another is redundant and dropped.
    """
    family = set(map(frozenset, traces))
    if not family:
        return ()
    if frozenset() in family:
        return None
    family = [t for t in family if not any(o < t for o in family)]
    family.sort(key=lambda t: (len(t), sorted(t)))
    if budget <= 0:
        return None
    universe = sorted(set().union(*family))
    if budget >= len(universe):
        return tuple(universe)

    def dfs(chosen: list, depth: int) -> Optional[tuple]:
        hit = set(chosen)
        target = None
        for t in family:
            if not (t & hit):
                target = t
                break
        if target is None:
            return tuple(sorted(chosen))
        if depth == 0:
            return None
        for v in sorted(target):
            chosen.append(v)
            found = dfs(chosen, depth - 1)
            chosen.pop()
            if found is not None:
                return found
        return None

    for size in range(1, budget + 1):
        found = dfs([], size)
        if found is not None:
            return found
    return None


def _blocked_hitting_set(traces: Sequence[frozenset], budgets: dict,
                         block_of) -> Optional[tuple]:
    """A hitting set with at most budgets[b] vertices per block, or None.

    Existence only (no minimality); deterministic by ascending branching.
    """
    family = set(map(frozenset, traces))
    if not family:
        return ()
    if frozenset() in family:
        return None
    family = [t for t in family if not any(o < t for o in family)]
    family.sort(key=lambda t: (len(t), sorted(t)))
    used = {b: 0 for b in budgets}

    def dfs(chosen: list) -> Optional[tuple]:
        hit = set(chosen)
        target = None
        for t in family:
            if not (t & hit):
                target = t
                break
        if target is None:
            return tuple(sorted(chosen))
        for v in sorted(target):
            b = block_of(v)
            if used[b] >= budgets[b]:
                continue
            used[b] += 1
            chosen.append(v)
            found = dfs(chosen)
            chosen.pop()
            used[b] -= 1
            if found is not None:
                return found
        return None

    return dfs([])


def _traces_of(h: Hypergraph, x: frozenset) -> list:
    seen: set = set()
    for v in x:
        seen.update(h.incident_edge_indices(v))
    return [frozenset(h.edges[i]) - x for i in sorted(seen)]


# ---------------------------------------------------------------------------
# expansiveness and the main hypotheses
# ---------------------------------------------------------------------------

def is_lambda_expansive(h: Hypergraph, x, lam) -> bool:
    """True iff no Y outside x with |Y| <= floor(lam*|x|) kills every edge meeting x.

    An edge lying entirely inside x has an empty trace which no Y can hit,
    so such x are expansive for every lambda.
    """
    xs = h.vertex_set(x)
    if not xs:
        raise InputError("x must be nonempty")
    lam = _rational(lam)
    if lam < 0:
        raise InputError(f"lambda must be nonnegative, got {lam}")
    budget = math.floor(lam * len(xs))
    return _min_hitting_set(_traces_of(h, xs), budget) is None


def _independent_sets_of_size(h: Hypergraph, size: int):
    """Independent size-subsets in lexicographic order, by pruned DFS.

    Prunes any prefix that already contains an edge; subsets of independent
    sets are independent, so the tree below a dead prefix is dead too.
    """
    n = h.n

    def extend(prefix: list, start: int):
        if len(prefix) == size:
            yield tuple(prefix)
            return
        for v in range(start, n - (size - len(prefix)) + 1):
            prefix.append(v)
            if h.is_independent(prefix):
                yield from extend(prefix, v + 1)
            prefix.pop()

    yield from extend([], 0)


def _sampled_sets_of_size(h: Hypergraph, size: int, cap: int, seed_tag: int):
    """Up to cap distinct random size-subsets, independence-filtered."""
    rng = np.random.Generator(np.random.Philox(
        np.random.SeedSequence((0x5EED, seed_tag, h.n, size))))
    seen = set()
    for _ in range(cap * 2):
        if len(seen) >= cap:
            break
        cand = tuple(sorted(rng.choice(h.n, size=size, replace=False).tolist()))
        if cand in seen:
            continue
        seen.add(cand)
        if h.is_independent(cand):
            yield cand


def check_prop3_hypothesis(h: Hypergraph, strict: bool = True,
                           budget: Optional[int] = None) -> ExpansionReport:
    """Every independent X expansive against all Y with |Y| < (r-1)|X| (strict)
    or |Y| <= (r-1)|X| (non-strict)?

    Full enumeration when n <= 16 (or within an explicit budget of X
    decisions); larger instances sample X per size and report
    exhaustive=False.
    """
    n, r = h.n, h.r
    full = n <= EXHAUSTIVE_N_LIMIT if budget is None else True
    checked = 0
    exhaustive = full

    for size in range(1, n + 1):
        if full:
            gen = _independent_sets_of_size(h, size)
        else:
            gen = _sampled_sets_of_size(h, size, SAMPLE_CAP_PER_SIZE, seed_tag=3)
        for xs in gen:
            if budget is not None and checked >= budget:
                return ExpansionReport(True, None, checked, False)
            checked += 1
            bound = (r - 1) * size - 1 if strict else (r - 1) * size
            y = _min_hitting_set(_traces_of(h, frozenset(xs)), bound)
            if y is not None:
                return ExpansionReport(False, (tuple(xs), y), checked, exhaustive)
    return ExpansionReport(True, None, checked, exhaustive)


def check_graph_corollary(g: Hypergraph):
    """For graphs: |N(I)| >= |I| for every independent I?

    Returns (verdict, witness I or None); equivalent to a perfect
    fractional matching existing.
    """
    if g.r != 2:
        raise InputError(f"corollary check requires r=2, got r={g.r}")
    for size in range(1, g.n + 1):
        for xs in _independent_sets_of_size(g, size):
            nbhd = set()
            for v in xs:
                for i in g.incident_edge_indices(v):
                    nbhd.update(g.edges[i])
            nbhd -= set(xs)
            if len(nbhd) < size:
                return False, tuple(xs)
    return True, None


def check_prop6_hypothesis(h: Hypergraph, params: Optional[PartiteExpansionParams] = None,
                           budget: Optional[int] = None) -> ExpansionReport:
    """Partite expansion: for every block i and T inside block i,
    (i)  |T| <= eps*b with per-block kill budgets floor(lam*|T|), and
    (ii) |T| >= eps*b with per-block kill budgets floor((1-eps)*b),
    some edge must meet T and avoid the killed vertices.

    b is the block size.  Condition (ii) is checked only at |T| =
    ceil(eps*b): killing all edges meeting T also kills all edges meeting
    any subset, so larger T only make the condition easier.
    """
    if h.partition is None:
        raise InputError("partite expansion check requires a partitioned hypergraph")
    if params is None:
        params = PartiteExpansionParams.defaults(h.r)
    b = h.block_size
    eps, lam = params.epsilon, params.lam

    size_i_max = min(b, math.floor(eps * b))
    size_ii = math.ceil(eps * b)
    budget_ii = math.floor((1 - eps) * b)
    checked = 0
    exhaustive = True

    def regimes():
        for s in range(1, size_i_max + 1):
            yield s, lambda t_size: math.floor(lam * t_size)
        if size_ii <= b:
            yield size_ii, lambda t_size: budget_ii

    for block_idx, block in enumerate(h.partition):
        others = [j for j in range(h.r) if j != block_idx]
        for size, budget_fn in regimes():
            for t in combinations(block, size):
                if budget is not None and checked >= budget:
                    return ExpansionReport(True, None, checked, False)
                checked += 1
                per_block = budget_fn(size)
                budgets = {j: per_block for j in others}
                y = _blocked_hitting_set(
                    _traces_of(h, frozenset(t)), budgets, h.block_of)
                if y is not None:
                    return ExpansionReport(False, (tuple(t), y), checked, exhaustive)
    return ExpansionReport(True, None, checked, exhaustive)


# ---------------------------------------------------------------------------
# independence number
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IndependenceResult:
    alpha: int                  # exact when exhaustive, else a lower bound
    witness: tuple
    exhaustive: bool


def independence_number(h: Hypergraph, node_budget: int = 2_000_000) -> IndependenceResult:
    """Maximum independent set by branch and bound.

    The budget counts search nodes (deterministic, unlike wall clock); on
    exhaustion the best set found so far is returned with exhaustive=False.
    """
    n = h.n
    redges = [tuple(e) for e in h.edges]
    need = [len(e) for e in redges]     # vertices still missing from each edge
    inc = [tuple(h.incident_edge_indices(v)) for v in range(n)]
    best: list = []
    cur: list = []
    nodes = 0
    out_of_budget = False

    def branch(v: int):
        nonlocal nodes, best, out_of_budget
        if out_of_budget:
            return
        if len(cur) > len(best):
            best = list(cur)
        if v == n or len(cur) + (n - v) <= len(best):
            return
        nodes += 1
        if nodes > node_budget:
            out_of_budget = True
            return
        # include v unless it completes an edge
        blocked = [i for i in inc[v] if need[i] == 1]
        if not blocked:
            for i in inc[v]:
                need[i] -= 1
            cur.append(v)
            branch(v + 1)
            cur.pop()
            for i in inc[v]:
                need[i] += 1
        branch(v + 1)

    branch(0)
    return IndependenceResult(len(best), tuple(best), not out_of_budget)
