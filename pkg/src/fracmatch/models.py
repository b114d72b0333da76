"""Random hypergraph generators and the sequential edge process.

Everything is driven by counter-based Philox streams keyed as
SeedSequence((master_seed, index, ...)), so samples are reproducible and
independent across vertices and trials regardless of execution order.

The sequential process assigns each accepted edge a uniform mark xi; marks
are generated as order statistics of C(n,r) uniforms via the
exponential-spacings recursion, so sorting potential edges by mark replays
the process order exactly (the coupling used for threshold diagnostics).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Union

import numpy as np

from .errors import InputError
from .hypergraph import Hypergraph

__all__ = [
    "HostModel", "KOutSample", "ProcessTrace", "ThresholdDiagnostics",
    "UniformityCheck", "sample_kout", "per_vertex_uniformity_check",
    "run_process", "threshold_diagnostics",
    "preset_k_complete", "preset_k_partite",
]


def preset_k_complete(r: int) -> int:
    """The complete-host selection count used by the headline result."""
    return (2 * r * r) ** r


def preset_k_partite(r: int) -> int:
    """The partite-host selection count: 2r/eps^r at the default eps."""
    return 2 * r * (8 * r ** 4) ** r


@dataclass(frozen=True)
class HostModel:
    """Complete or complete r-partite host.

    n is the total vertex count for the complete host and the per-block
    count for the partite host (total rn vertices).
    """

    kind: str   # "complete" | "partite"
    n: int
    r: int

    def __post_init__(self):
        if self.kind not in ("complete", "partite"):
            raise InputError(f"host kind must be 'complete' or 'partite', got {self.kind!r}")
        if self.r < 2:
            raise InputError(f"uniformity must be at least 2, got {self.r}")
        if self.kind == "complete" and self.n < self.r:
            raise InputError(f"complete host needs n >= r, got n={self.n}, r={self.r}")
        if self.n < 1:
            raise InputError(f"block size must be positive, got {self.n}")

    @property
    def total_vertices(self) -> int:
        return self.n if self.kind == "complete" else self.n * self.r

    @property
    def potential_edges(self) -> int:
        if self.kind == "complete":
            return math.comb(self.n, self.r)
        return self.n ** self.r

    @property
    def edges_per_vertex(self) -> int:
        """|H_v|, the number of host edges containing a fixed vertex."""
        if self.kind == "complete":
            return math.comb(self.n - 1, self.r - 1)
        return self.n ** (self.r - 1)

    def block_of(self, v: int) -> int:
        if self.kind == "complete":
            raise InputError("complete host has no blocks")
        return v // self.n

    def partition(self):
        b = self.n
        return [tuple(range(j * b, (j + 1) * b)) for j in range(self.r)]


@dataclass(frozen=True)
class KOutSample:
    host: HostModel
    k: int
    seed: int
    choices: tuple      # per vertex, a tuple of k edge tuples, in draw order
    union: Hypergraph


def _vertex_rng(seed: int, v: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, v))))


def _draw_edge_at(host: HostModel, v: int, rng: np.random.Generator) -> tuple:
    r = host.r
    if host.kind == "complete":
        companions = rng.choice(host.n - 1, size=r - 1, replace=False)
        edge = [c if c < v else c + 1 for c in companions.tolist()]
    else:
        b = host.n
        mine = v // b
        offsets = rng.integers(0, b, size=r - 1).tolist()
        edge = [j * b + off
                for j, off in zip((j for j in range(r) if j != mine), offsets)]
    edge.append(v)
    return tuple(sorted(edge))


def sample_kout(host: HostModel, k: int, seed: int) -> KOutSample:
    """Each vertex independently picks k distinct uniform incident edges.

    Host edges are never enumerated: an edge at v is drawn by sampling its
    r-1 companions, and within-vertex duplicates are rejected until k
    distinct edges accumulate (exactly uniform over k-subsets of H_v).
    """
    if k < 1:
        raise InputError(f"k must be at least 1, got {k}")
    if k > host.edges_per_vertex:
        raise InputError(
            f"k={k} exceeds the {host.edges_per_vertex} host edges per vertex")
    choices = []
    for v in range(host.total_vertices):
        rng = _vertex_rng(seed, v)
        picked: list = []
        seen: set = set()
        while len(picked) < k:
            e = _draw_edge_at(host, v, rng)
            if e not in seen:
                seen.add(e)
                picked.append(e)
        choices.append(tuple(picked))
    edges = sorted(set().union(*map(set, choices)))
    partition = host.partition() if host.kind == "partite" else None
    union = Hypergraph(host.total_vertices, host.r, edges, partition=partition)
    return KOutSample(host, k, seed, tuple(choices), union)


@dataclass(frozen=True)
class UniformityCheck:
    vertex: int
    k: int
    trials: int
    counts: dict        # selection (tuple of edge tuples, sorted) -> count
    expected: float
    chi2: float
    dof: int
    max_abs_z: float    # worst per-cell |count - expected| / binomial sigma


def per_vertex_uniformity_check(host: HostModel, k: int, trials: int,
                                seed: int, vertex: int = 0) -> UniformityCheck:
    """Empirical distribution of one vertex's selection over many trials.

    Runs the real sampler (sample_kout with per-trial derived seeds) and
    tallies E_vertex against the enumerated selection space, which must be
    small enough to enumerate.
    """
    support_edges = host_edges_at(host, vertex)
    nsupport = math.comb(len(support_edges), k)
    if nsupport > 20_000:
        raise InputError(
            f"selection space has {nsupport} outcomes; pick a smaller host or k")
    counts = {tuple(sorted(sel)): 0
              for sel in combinations(support_edges, k)}
    for t in range(trials):
        trial_seed = int(np.random.SeedSequence((seed, t)).generate_state(1)[0])
        sample = sample_kout(host, k, trial_seed)
        key = tuple(sorted(sample.choices[vertex]))
        counts[key] += 1
    expected = trials / nsupport
    chi2 = sum((c - expected) ** 2 / expected for c in counts.values())
    p = 1.0 / nsupport
    sigma = math.sqrt(trials * p * (1 - p)) if nsupport > 1 else 0.0
    max_z = max(abs(c - expected) / sigma for c in counts.values()) if sigma else 0.0
    return UniformityCheck(vertex, k, trials, counts, expected, chi2,
                           nsupport - 1, max_z)


def host_edges_at(host: HostModel, v: int) -> list:
    """All host edges through v, enumerated (small hosts only)."""
    if host.kind == "complete":
        others = [u for u in range(host.n) if u != v]
        return [tuple(sorted((v,) + c)) for c in combinations(others, host.r - 1)]
    b = host.n
    mine = v // b
    blocks = [range(j * b, (j + 1) * b) for j in range(host.r) if j != mine]
    edges = [(v,)]
    for blk in blocks:
        edges = [e + (u,) for e in edges for u in blk]
    return [tuple(sorted(e)) for e in edges]


# ---------------------------------------------------------------------------
# sequential process
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ProcessTrace:
    """Prefix of the uniform random edge ordering on the complete host.

    T is the first index (1-based edge count) at which no vertex is
    isolated; None when the trace stopped before reaching it.  xi holds one
    uniform mark per accepted edge, increasing; mark_horizon is a value m
    such that every potential edge with mark < m appears in the trace.
    """

    n: int
    r: int
    seed: int
    edges: tuple
    xi: Optional[tuple]
    T: Optional[int]
    mark_horizon: Optional[float]

    def hypergraph(self, t: Optional[int] = None) -> Hypergraph:
        t = len(self.edges) if t is None else t
        if not 0 <= t <= len(self.edges):
            raise InputError(f"prefix length {t} outside trace of {len(self.edges)}")
        return Hypergraph(self.n, self.r, self.edges[:t])


def run_process(n: int, r: int, seed: int,
                stop: Union[str, int] = "at_T",
                marks: bool = True,
                min_mark: Optional[float] = None) -> ProcessTrace:
    """Add uniform random distinct edges one at a time.

    stop="at_T" runs until no vertex is isolated; an integer runs exactly
    that many steps.  min_mark forces the trace to continue until the next
    mark would exceed it (so G(m) is fully materialized for m <= min_mark).
    Draws use rejection against the set of edges already present.
    """
    if n < r:
        raise InputError(f"need n >= r, got n={n}, r={r}")
    if isinstance(stop, str) and stop != "at_T":
        raise InputError(f"stop must be 'at_T' or a step count, got {stop!r}")
    M = math.comb(n, r)
    if isinstance(stop, int):
        if not 1 <= stop <= M:
            raise InputError(f"step count must be in 1..{M}, got {stop}")
    if min_mark is not None and not marks:
        raise InputError("min_mark requires marks=True")

    edge_rng = np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, 0))))
    mark_rng = np.random.Generator(np.random.Philox(np.random.SeedSequence((seed, 1))))

    edges: list = []
    seen: set = set()
    xi: list = []
    log_surv = 0.0      # log of prod (1 - U_(t)); Renyi recursion
    covered = np.zeros(n, dtype=bool)
    ncovered = 0
    T: Optional[int] = None

    def done() -> bool:
        if len(edges) == M:
            return True
        if isinstance(stop, int):
            base = len(edges) >= stop
        else:
            base = T is not None
        if not base:
            return False
        if min_mark is not None:
            return xi[-1] > min_mark if xi else False
        return True

    while not done():
        while True:
            e = tuple(sorted(edge_rng.choice(n, size=r, replace=False).tolist()))
            if e not in seen:
                break
        seen.add(e)
        edges.append(e)
        if marks:
            t = len(edges)
            log_surv += -float(mark_rng.exponential()) / (M - t + 1)
            xi.append(1.0 - math.exp(log_surv))
        for v in e:
            if not covered[v]:
                covered[v] = True
                ncovered += 1
        if T is None and ncovered == n:
            T = len(edges)

    if marks:
        horizon = 1.0 if len(edges) == M else (xi[-1] if xi else 0.0)
    else:
        horizon = None
    return ProcessTrace(n, r, seed, tuple(edges),
                        tuple(xi) if marks else None, T, horizon)


@dataclass(frozen=True)
class ThresholdDiagnostics:
    c_threshold: float
    sigma: float
    beta: float
    W_sigma: tuple      # vertices of degree <= c in G(sigma)
    N: tuple            # W_sigma plus its beta-edge neighbors
    Lambda: float       # first mark at which no vertex is isolated
    lambda_in_window: bool


def threshold_diagnostics(trace: ProcessTrace, epsilon: float = 0.1,
                          g: Optional[float] = None) -> ThresholdDiagnostics:
    """Degree/neighborhood structure of the coupled G(lambda) at one realization.

    Requires the trace to carry marks, to have reached T, and to be
    materialized at least to mark beta.  g defaults to log log n, a slowly
    growing choice; epsilon scales the low-degree cutoff c = epsilon*log n.
    """
    if trace.xi is None:
        raise InputError("trace carries no marks; rerun with marks=True")
    if trace.T is None:
        raise InputError("trace stopped before T; rerun with stop='at_T'")
    n, r = trace.n, trace.r
    L = math.log(n)
    if g is None:
        g = math.log(L)
    denom = math.comb(n - 1, r - 1)
    c = epsilon * L
    sigma = (L - g) / denom
    beta = (L + g) / denom
    if trace.mark_horizon is not None and trace.mark_horizon < min(beta, 1.0):
        raise InputError(
            f"trace materialized to mark {trace.mark_horizon:.6g} < beta "
            f"{beta:.6g}; rerun with min_mark=beta")

    deg = np.zeros(n, dtype=np.int64)
    beta_edges = []
    for e, mark in zip(trace.edges, trace.xi):
        if mark <= sigma:
            for v in e:
                deg[v] += 1
        if mark <= beta:
            beta_edges.append(e)
    W = frozenset(int(v) for v in np.nonzero(deg <= c)[0])
    nbhd = set(W)
    for e in beta_edges:
        if any(v in W for v in e):
            nbhd.update(e)
    Lam = trace.xi[trace.T - 1]
    return ThresholdDiagnostics(
        c_threshold=c, sigma=sigma, beta=beta,
        W_sigma=tuple(sorted(W)), N=tuple(sorted(nbhd)), Lambda=Lam,
        lambda_in_window=sigma <= Lam <= beta)
