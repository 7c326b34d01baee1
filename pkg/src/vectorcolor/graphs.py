"""Graph representation, DIMACS I/O, and instance generators.

Vertices are 0-based internally and 1-based in DIMACS files.  Graphs are
simple and undirected: no self-loops, no duplicate edges, no weights.
A :class:`Graph` is immutable after construction and safe to share.
"""
from __future__ import annotations

import io
import warnings
from collections import deque
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import IO, Iterable

import numpy as np

KNESER_VERTEX_LIMIT = 1_000_000


class DimacsWarning(UserWarning):
    """Recoverable oddity in a DIMACS file (duplicate edges, bad count)."""


class Graph:
    """Simple undirected graph with cached adjacency and degree data."""

    __slots__ = ("n", "edges", "adjacency", "max_degree", "_adj_sets", "_edge_arr")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        canon = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            canon.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(canon))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(a)) for a in adj
        )
        self.max_degree = max((len(a) for a in self.adjacency), default=0)
        self._adj_sets: tuple[frozenset[int], ...] | None = None
        self._edge_arr: np.ndarray | None = None

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    @property
    def adjacency_sets(self) -> tuple[frozenset[int], ...]:
        if self._adj_sets is None:
            self._adj_sets = tuple(frozenset(a) for a in self.adjacency)
        return self._adj_sets

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency_sets[u]

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int array; empty (0, 2) array when edgeless."""
        if self._edge_arr is None:
            arr = np.asarray(self.edges, dtype=np.intp)
            self._edge_arr = arr.reshape(-1, 2)
        return self._edge_arr

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, max_degree={self.max_degree})"


@dataclass(frozen=True)
class KneserSpec:
    """Parameters (m, r, t) of the Kneser graph K(m, r, t).

    Vertices are the r-subsets of an m-element universe; two vertices are
    adjacent exactly when their subsets intersect in fewer than t elements.
    """

    m: int
    r: int
    t: int

    def __post_init__(self) -> None:
        if not (1 <= self.t <= self.r <= self.m):
            raise ValueError(
                f"require 1 <= t <= r <= m, got m={self.m} r={self.r} t={self.t}"
            )

    @property
    def n_vertices(self) -> int:
        return comb(self.m, self.r)


def parse_dimacs(data: bytes | str | IO) -> Graph:
    """Parse a DIMACS edge-format graph.

    Accepts bytes, text, or a readable stream.  Expects a ``p edge n m``
    header, ``e u v`` edge lines with 1-based vertices, and ``c`` comments.
    Duplicate edges are removed with a :class:`DimacsWarning`; a declared
    edge count that disagrees with the file also warns (real DIMACS files
    lie).  Self-loops and out-of-range vertices are hard errors.
    """
    if isinstance(data, bytes):
        text = data.decode("ascii", errors="replace")
    elif isinstance(data, str):
        text = data
    else:
        raw = data.read()
        text = raw.decode("ascii", errors="replace") if isinstance(raw, bytes) else raw

    n = None
    declared_m = None
    raw_edges: list[tuple[int, int]] = []
    unknown_types: set[str] = set()
    for lineno, line in enumerate(io.StringIO(text), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ValueError(f"line {lineno}: duplicate problem line")
            if len(parts) < 4 or parts[1] not in ("edge", "col"):
                raise ValueError(f"line {lineno}: malformed header {line!r}")
            try:
                n = int(parts[2])
                declared_m = int(parts[3])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: malformed header {line!r}") from exc
            if n < 0 or declared_m < 0:
                raise ValueError(f"line {lineno}: negative counts in header")
        elif parts[0] == "e":
            if n is None:
                raise ValueError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise ValueError(f"line {lineno}: malformed edge line {line!r}")
            u, v = int(parts[1]), int(parts[2])
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError(f"line {lineno}: vertex out of range in {line!r}")
            if u == v:
                raise ValueError(f"line {lineno}: self-loop at vertex {u}")
            a, b = u - 1, v - 1
            raw_edges.append((a, b) if a < b else (b, a))
        else:
            unknown_types.add(parts[0])
    if n is None:
        raise ValueError("missing 'p edge n m' header")
    if unknown_types:
        warnings.warn(
            f"ignored unknown DIMACS line types: {sorted(unknown_types)}",
            DimacsWarning,
            stacklevel=2,
        )
    unique = set(raw_edges)
    if len(unique) != len(raw_edges):
        warnings.warn(
            f"removed {len(raw_edges) - len(unique)} duplicate edge(s)",
            DimacsWarning,
            stacklevel=2,
        )
    if declared_m != len(raw_edges):
        warnings.warn(
            f"header declares {declared_m} edges but file lists {len(raw_edges)}",
            DimacsWarning,
            stacklevel=2,
        )
    return Graph(n, unique)


def emit_dimacs(g: Graph) -> bytes:
    """Serialize a graph to DIMACS edge format (round-trips via parse)."""
    lines = [f"p edge {g.n} {g.m}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges)
    return ("\n".join(lines) + "\n").encode("ascii")


def generate_planted(
    n: int, k: int, p: float, seed: int
) -> tuple[Graph, tuple[int, ...]]:
    """Random k-colorable graph with a planted (hidden) coloring.

    Vertices are split round-robin into k classes (sizes differ by at most
    one, so every class is nonempty), and each inter-class pair becomes an
    edge independently with probability ``p``.  Returns the graph together
    with the hidden coloring that witnesses k-colorability.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    if n < k:
        raise ValueError(f"need n >= k, got n={n} k={k}")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"need 0 <= p <= 1, got {p}")
    classes = np.arange(n) % k
    rng = np.random.default_rng(seed)
    iu, ju = np.triu_indices(n, 1)
    cross = classes[iu] != classes[ju]
    iu, ju = iu[cross], ju[cross]
    keep = rng.random(iu.size) < p
    edges = zip(iu[keep].tolist(), ju[keep].tolist())
    return Graph(n, edges), tuple(int(c) for c in classes)


def _subset_masks(spec: KneserSpec) -> np.ndarray:
    """Bitmasks of all r-subsets of {0..m-1} in lexicographic order."""
    masks = [
        sum(1 << e for e in subset)
        for subset in combinations(range(spec.m), spec.r)
    ]
    return np.asarray(masks, dtype=np.uint64)


def generate_kneser(spec: KneserSpec) -> Graph:
    """Build K(m, r, t): one vertex per r-subset in lexicographic order,
    edges exactly between subsets intersecting in fewer than t elements.
    """
    n = spec.n_vertices
    if n > KNESER_VERTEX_LIMIT:
        raise ValueError(
            f"K({spec.m},{spec.r},{spec.t}) has {n} vertices; "
            f"limit is {KNESER_VERTEX_LIMIT}"
        )
    masks = _subset_masks(spec)
    edges: list[tuple[int, int]] = []
    block = max(1, 4_000_000 // max(n, 1))
    for start in range(0, n, block):
        stop = min(start + block, n)
        inter = np.bitwise_count(masks[start:stop, None] & masks[None, :])
        for bi, i in enumerate(range(start, stop)):
            js = np.nonzero(inter[bi, i + 1 :] < spec.t)[0]
            edges.extend((i, i + 1 + int(j)) for j in js)
    return Graph(n, edges)


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on ``vertices`` plus the new-to-old vertex map.

    The returned graph renumbers vertices 0..len-1 in increasing order of
    the original ids; ``old_ids[new]`` recovers the original id.
    """
    old_ids = tuple(sorted(set(vertices)))
    index = {v: i for i, v in enumerate(old_ids)}
    keep = frozenset(old_ids)
    edges = []
    for v in old_ids:
        for w in g.adjacency[v]:
            if v < w and w in keep:
                edges.append((index[v], index[w]))
    return Graph(len(old_ids), edges), old_ids


def complement(g: Graph) -> Graph:
    """Complement graph on the same vertex set."""
    present = set(g.edges)
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if (u, v) not in present
    ]
    return Graph(g.n, edges)


def bipartition(g: Graph) -> tuple[int, ...] | None:
    """BFS 2-coloring; returns per-vertex sides 0/1, or None on an odd cycle."""
    side = [-1] * g.n
    for source in range(g.n):
        if side[source] != -1:
            continue
        side[source] = 0
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    queue.append(w)
                elif side[w] == side[v]:
                    return None
    return tuple(side)
