"""Immutable simple graphs, edge-list parsing, and exact BFS distances.

Vertices are dense 0-based integers.  The edge-list text format is:

    p <n> <m>        optional header declaring vertex and edge counts
    u v              one edge per line, whitespace separated
    # ...            comment lines and blank lines are ignored

Without a header, vertex ids may be arbitrary non-negative integers; they are
remapped to dense ids in increasing label order and the original labels are
kept on the graph.  With a header, ids must already be dense (< n).
"""

from __future__ import annotations

import os
from collections import deque
from typing import Iterable, NamedTuple

__all__ = [
    "Edge",
    "Graph",
    "DistanceMatrix",
    "GraphError",
    "ParseError",
    "MalformedLineError",
    "SelfLoopError",
    "DuplicateEdgeError",
    "VertexOutOfRangeError",
    "DisconnectedGraphError",
    "VertexCapError",
    "edge",
    "parse_edge_list",
    "serialize_edge_list",
    "bfs_distances",
    "all_pairs_distances",
    "is_bipartite",
    "vertex_cap",
]

DEFAULT_VERTEX_CAP = 10_000
VERTEX_CAP_ENV = "CACTUS_MAX_N"


class GraphError(Exception):
    """Base class for all graph construction and computation errors."""


class ParseError(GraphError):
    """Edge-list text could not be turned into a graph."""

    def __init__(self, message: str, line_no: int | None = None):
        self.line_no = line_no
        if line_no is not None:
            message = f"{message} at line {line_no}"
        super().__init__(message)


class MalformedLineError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateEdgeError(ParseError):
    pass


class VertexOutOfRangeError(ParseError):
    pass


class DisconnectedGraphError(GraphError):
    pass


class VertexCapError(GraphError):
    pass


class Edge(NamedTuple):
    """Canonically oriented edge: s < t."""

    s: int
    t: int


def edge(u: int, v: int) -> Edge:
    """Canonical edge for an unordered vertex pair."""
    return Edge(u, v) if u < v else Edge(v, u)


def vertex_cap() -> int:
    """Maximum allowed vertex count; override with the CACTUS_MAX_N env var."""
    raw = os.environ.get(VERTEX_CAP_ENV)
    if raw is None:
        return DEFAULT_VERTEX_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise VertexCapError(f"{VERTEX_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise VertexCapError(f"{VERTEX_CAP_ENV} must be positive, got {cap}")
    return cap


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    Adjacency lists are sorted tuples; the edge list is the sorted tuple of
    canonical edges.  Instances are safe to share across threads.  Parsing
    accepts disconnected graphs so corpora can be assembled incrementally;
    distance and index computations reject them.
    """

    __slots__ = ("n", "adj", "edges", "labels", "_connected")

    def __init__(self, n: int, adj: tuple[tuple[int, ...], ...],
                 edges: tuple[Edge, ...], labels: tuple[int, ...]):
        self.n = n
        self.adj = adj
        self.edges = edges
        self.labels = labels
        self._connected: bool | None = None

    @classmethod
    def from_edges(cls, n: int, edge_iter: Iterable[tuple[int, int]], *,
                   require_connected: bool = True,
                   labels: tuple[int, ...] | None = None) -> "Graph":
        """Build and validate a graph from (u, v) pairs.

        Raises SelfLoopError / DuplicateEdgeError / VertexOutOfRangeError on
        invalid edges, VertexCapError when n exceeds the configured cap, and
        DisconnectedGraphError when connectivity is required but absent.
        """
        if n < 1:
            raise GraphError("graph needs at least one vertex")
        cap = vertex_cap()
        if n > cap:
            raise VertexCapError(f"n={n} exceeds vertex cap {cap}")
        seen: set[Edge] = set()
        adj_lists: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_iter:
            if not (0 <= u < n and 0 <= v < n):
                raise VertexOutOfRangeError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            e = edge(u, v)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge ({e.s}, {e.t})")
            seen.add(e)
            adj_lists[e.s].append(e.t)
            adj_lists[e.t].append(e.s)
        g = cls(
            n,
            tuple(tuple(sorted(nbrs)) for nbrs in adj_lists),
            tuple(sorted(seen)),
            labels if labels is not None else tuple(range(n)),
        )
        if require_connected and not g.is_connected:
            raise DisconnectedGraphError(f"graph with n={n}, m={g.m} is not connected")
        return g

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def is_connected(self) -> bool:
        if self._connected is None:
            self._connected = self._check_connected()
        return self._connected

    def _check_connected(self) -> bool:
        if self.n == 1:
            return True
        seen = bytearray(self.n)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = 1
                    count += 1
                    queue.append(v)
        return count == self.n

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class DistanceMatrix:
    """All-pairs shortest-path hop counts of a connected graph.

    ``rows[u][v]`` is the BFS distance from u to v.  Immutable; shared
    read-only by every index computation on the same graph.
    """

    __slots__ = ("n", "rows")

    def __init__(self, rows: tuple[tuple[int, ...], ...]):
        self.n = len(rows)
        self.rows = rows

    def d(self, u: int, v: int) -> int:
        return self.rows[u][v]

    def row(self, u: int) -> tuple[int, ...]:
        return self.rows[u]

    def total(self) -> int:
        """Sum of all entries over ordered pairs (twice the Wiener index)."""
        return sum(sum(row) for row in self.rows)


def bfs_distances(g: Graph, source: int) -> tuple[int, ...]:
    """Hop distances from ``source`` to every vertex of a connected graph."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    adj = g.adj
    while queue:
        u = queue.popleft()
        du1 = dist[u] + 1
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = du1
                queue.append(v)
    if any(d < 0 for d in dist):
        raise DisconnectedGraphError(f"vertex unreachable from {source}")
    return tuple(dist)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    """Full distance matrix via one BFS per source.

    Rows are independent pure computations, so evaluating them in any order
    (or concurrently) yields the same matrix.
    """
    return DistanceMatrix(tuple(bfs_distances(g, u) for u in range(g.n)))


def is_bipartite(g: Graph) -> bool:
    """True iff the connected graph admits a proper 2-coloring."""
    color = bytearray(g.n)
    color[0] = 1
    queue = deque([0])
    while queue:
        u = queue.popleft()
        cu = color[u]
        for v in g.adj[u]:
            if color[v] == 0:
                color[v] = 3 - cu
                queue.append(v)
            elif color[v] == cu:
                return False
    if any(c == 0 for c in color):
        raise DisconnectedGraphError("bipartiteness requires a connected graph")
    return True


def parse_edge_list(text: str, *, require_connected: bool = False) -> Graph:
    """Parse edge-list text into a Graph.

    Labels are remapped to dense ids when no header is present; the original
    labels are recorded on ``Graph.labels``.  Each malformed input kind raises
    its own ParseError subclass carrying the offending line number.
    """
    declared_n: int | None = None
    declared_m: int | None = None
    header_line: int | None = None
    raw_edges: list[tuple[int, int, int]] = []  # (u, v, line_no)
    saw_content = False
    for line_no, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if not saw_content and parts[0] == "p":
            if len(parts) != 3:
                raise MalformedLineError("header must be 'p <n> <m>'", line_no)
            try:
                declared_n, declared_m = int(parts[1]), int(parts[2])
            except ValueError:
                raise MalformedLineError("header counts must be integers", line_no) from None
            if declared_n < 1 or declared_m < 0:
                raise MalformedLineError("header counts out of range", line_no)
            header_line = line_no
            saw_content = True
            continue
        saw_content = True
        if len(parts) != 2:
            raise MalformedLineError(f"expected 'u v', got {stripped!r}", line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise MalformedLineError(f"non-integer vertex id in {stripped!r}", line_no) from None
        if u < 0 or v < 0:
            raise MalformedLineError(f"negative vertex id in {stripped!r}", line_no)
        if u == v:
            raise SelfLoopError(f"self-loop {u} {v}", line_no)
        raw_edges.append((u, v, line_no))

    if declared_n is not None:
        if declared_m != len(raw_edges):
            raise MalformedLineError(
                f"header declares m={declared_m} but {len(raw_edges)} edges listed",
                header_line,
            )
        n = declared_n
        for u, v, line_no in raw_edges:
            if u >= n or v >= n:
                raise VertexOutOfRangeError(f"vertex id >= declared n={n}", line_no)
        dense = [(u, v) for u, v, _ in raw_edges]
        labels = tuple(range(n))
    else:
        label_set = sorted({u for u, _, _ in raw_edges} | {v for _, v, _ in raw_edges})
        if not label_set:
            raise MalformedLineError("no vertices: empty edge list needs a 'p <n> 0' header")
        index = {lab: i for i, lab in enumerate(label_set)}
        n = len(label_set)
        dense = [(index[u], index[v]) for u, v, _ in raw_edges]
        labels = tuple(label_set)

    seen: set[Edge] = set()
    for (u, v), (_, _, line_no) in zip(dense, raw_edges):
        e = edge(u, v)
        if e in seen:
            raise DuplicateEdgeError(f"duplicate edge {e.s} {e.t}", line_no)
        seen.add(e)
    return Graph.from_edges(n, dense, require_connected=require_connected, labels=labels)


def serialize_edge_list(g: Graph) -> str:
    """Canonical edge-list text (always with header, edges sorted)."""
    lines = [f"p {g.n} {g.m}"]
    lines.extend(f"{e.s} {e.t}" for e in g.edges)
    return "\n".join(lines) + "\n"
