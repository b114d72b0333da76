"""Immutable r-uniform hypergraphs with structural predicates and text I/O.

Vertices are dense 0-based ids.  Edges are stored sorted and deduplicated,
both as a global lexicographic list and as per-vertex incidence lists, so
incidence queries and expansion scans are cheap.  Instances are immutable
after construction and safe to share across workers.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .errors import InputError

__all__ = ["Hypergraph", "read_hypergraph", "write_hypergraph"]


def _check_vertex(v: int, n: int) -> int:
    if not isinstance(v, (int,)) or isinstance(v, bool):
        raise InputError(f"vertex id must be an integer, got {v!r}")
    if not 0 <= v < n:
        raise InputError(f"vertex id {v} out of range [0, {n})")
    return v


class Hypergraph:
    """An r-uniform hypergraph on vertices 0..n-1, optionally r-partite.

    ``partition``, when given, is a sequence of r disjoint equal-size blocks
    covering all vertices; every edge must then meet each block exactly once.
    """

    __slots__ = ("n", "r", "edges", "partition", "_incidence", "_block_of",
                 "_edge_masks")

    def __init__(self, n: int, r: int,
                 edges: Iterable[Sequence[int]],
                 partition: Optional[Sequence[Sequence[int]]] = None):
        if n < 0:
            raise InputError(f"vertex count must be nonnegative, got {n}")
        if r < 1:
            raise InputError(f"uniformity must be >= 1, got {r}")
        self.n = n
        self.r = r

        seen = set()
        for edge in edges:
            e = tuple(sorted(_check_vertex(v, n) for v in edge))
            if len(set(e)) != r:
                raise InputError(f"edge {tuple(edge)} does not have {r} distinct vertices")
            seen.add(e)
        self.edges = tuple(sorted(seen))

        if partition is not None:
            blocks = tuple(tuple(sorted(_check_vertex(v, n) for v in b)) for b in partition)
            if len(blocks) != r:
                raise InputError(f"partition must have exactly {r} blocks, got {len(blocks)}")
            flat = [v for b in blocks for v in b]
            if len(flat) != n or len(set(flat)) != n:
                raise InputError("partition blocks must be disjoint and cover all vertices")
            sizes = {len(b) for b in blocks}
            if len(sizes) > 1:
                raise InputError(f"partition blocks must have equal size, got sizes {sorted(sizes)}")
            block_of = [0] * n
            for i, b in enumerate(blocks):
                for v in b:
                    block_of[v] = i
            for e in self.edges:
                if sorted(block_of[v] for v in e) != list(range(r)):
                    raise InputError(f"edge {e} does not meet every block exactly once")
            self.partition = blocks
            self._block_of = tuple(block_of)
        else:
            self.partition = None
            self._block_of = None

        incidence: list[list[int]] = [[] for _ in range(n)]
        for idx, e in enumerate(self.edges):
            for v in e:
                incidence[v].append(idx)
        self._incidence = tuple(tuple(lst) for lst in incidence)
        self._edge_masks = None

    # -- basic queries -------------------------------------------------

    @property
    def block_size(self) -> Optional[int]:
        """Vertices per block (None for non-partite instances)."""
        return len(self.partition[0]) if self.partition else None

    def block_of(self, v: int) -> int:
        if self._block_of is None:
            raise InputError("hypergraph has no partition")
        return self._block_of[_check_vertex(v, self.n)]

    def incident_edge_indices(self, v: int) -> tuple:
        return self._incidence[_check_vertex(v, self.n)]

    def incident_edges(self, v: int) -> list:
        """Edges containing v, in lexicographic order."""
        return [self.edges[i] for i in self._incidence[_check_vertex(v, self.n)]]

    def degree(self, v: int) -> int:
        return len(self._incidence[_check_vertex(v, self.n)])

    def vertex_set(self, s: Iterable[int]) -> frozenset:
        """Validate an iterable of vertex ids into a frozenset."""
        return frozenset(_check_vertex(v, self.n) for v in s)

    def is_independent(self, s: Iterable[int]) -> bool:
        """True iff no edge of the hypergraph is contained in s."""
        ss = self.vertex_set(s)
        if len(ss) < self.r:
            return True
        # only edges incident to some vertex of s can be inside s
        cand = set()
        for v in ss:
            cand.update(self._incidence[v])
        return not any(ss.issuperset(self.edges[i]) for i in cand)

    def isolated_vertices(self) -> tuple:
        """Vertices with zero incident edges, ascending."""
        return tuple(v for v in range(self.n) if not self._incidence[v])

    def edges_meeting(self, x: Iterable[int], avoiding: Iterable[int]) -> int:
        """Number of edges intersecting x and disjoint from ``avoiding``."""
        xs = self.vertex_set(x)
        ys = self.vertex_set(avoiding)
        if xs & ys:
            raise InputError("x and avoiding must be disjoint")
        cand = set()
        for v in xs:
            cand.update(self._incidence[v])
        return sum(1 for i in cand if not ys.intersection(self.edges[i]))

    def edge_masks(self) -> tuple:
        """Edges as vertex bitmasks (bit v set iff v in edge); cached."""
        if self._edge_masks is None:
            masks = []
            for e in self.edges:
                m = 0
                for v in e:
                    m |= 1 << v
                masks.append(m)
            self._edge_masks = tuple(masks)
        return self._edge_masks

    # -- dunder --------------------------------------------------------

    def __eq__(self, other):
        return (isinstance(other, Hypergraph)
                and self.n == other.n and self.r == other.r
                and self.edges == other.edges
                and self.partition == other.partition)

    def __hash__(self):
        return hash((self.n, self.r, self.edges, self.partition))

    def __repr__(self):
        part = f", {len(self.partition)} blocks" if self.partition else ""
        return f"Hypergraph(n={self.n}, r={self.r}, {len(self.edges)} edges{part})"

    # -- text format ---------------------------------------------------
    #
    # line 1:  "r n"  or  "r n partite b"  (b = block size, blocks contiguous)
    # then one edge per line, r space-separated vertex ids; '#' starts a comment

    def to_text(self) -> str:
        lines = []
        if self.partition is not None:
            b = self.block_size
            expected = tuple(tuple(range(i * b, (i + 1) * b)) for i in range(self.r))
            if self.partition != expected:
                raise InputError("text format requires contiguous equal blocks "
                                 "(block i = [i*b, (i+1)*b))")
            lines.append(f"{self.r} {self.n} partite {b}")
        else:
            lines.append(f"{self.r} {self.n}")
        for e in self.edges:
            lines.append(" ".join(str(v) for v in e))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        header = None
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if header is None:
                if len(fields) == 2:
                    header = (int(fields[0]), int(fields[1]), None)
                elif len(fields) == 4 and fields[2] == "partite":
                    header = (int(fields[0]), int(fields[1]), int(fields[3]))
                else:
                    raise InputError(f"line {lineno}: bad header {line!r}")
                continue
            try:
                edges.append(tuple(int(f) for f in fields))
            except ValueError as exc:
                raise InputError(f"line {lineno}: {exc}") from None
        if header is None:
            raise InputError("empty hypergraph file (no header line)")
        r, n, b = header
        partition = None
        if b is not None:
            if r * b != n:
                raise InputError(f"partite header inconsistent: r*b = {r * b} != n = {n}")
            partition = tuple(tuple(range(i * b, (i + 1) * b)) for i in range(r))
        for e in edges:
            if len(e) != r:
                raise InputError(f"edge {e} has {len(e)} vertices, expected {r}")
        return cls(n, r, edges, partition)

    @classmethod
    def complete(cls, n: int, r: int) -> "Hypergraph":
        """The complete r-graph on n vertices."""
        return cls(n, r, itertools.combinations(range(n), r))

    @classmethod
    def complete_partite(cls, block: int, r: int) -> "Hypergraph":
        """The complete r-partite r-graph with ``block`` vertices per part."""
        blocks = [range(i * block, (i + 1) * block) for i in range(r)]
        return cls(block * r, r, itertools.product(*blocks),
                   partition=[tuple(b) for b in blocks])


def read_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return Hypergraph.from_text(fh.read())


def write_hypergraph(h: Hypergraph, path, trailer: str = "") -> None:
    """Write the text form; ``trailer`` (comment block) is appended verbatim."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(h.to_text())
        if trailer:
            fh.write(trailer)
