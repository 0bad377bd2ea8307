"""Block decomposition (maximal 2-connected subgraphs) and block geometry.

A connected graph splits into blocks that pairwise overlap in at most one
vertex, and every shared vertex is a cut vertex.  In a cactus every block is
a single edge or a cycle, which is what the index inequalities rely on.  The
decomposition also yields the projection of any vertex onto a block: the
unique block vertex closest to it, through which every shortest path into
the block passes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .graph import DistanceMatrix, DisconnectedGraphError, Edge, Graph, GraphError, edge

__all__ = [
    "BlockKind",
    "Block",
    "BlockDecomposition",
    "AmbiguousProjectionError",
    "BRIDGE_EDGE",
    "OTHER",
    "cycle_kind",
    "block_decomposition",
    "classify_block",
    "is_cactus",
    "all_blocks_cycles",
    "closest_vertex_in_block",
]


class AmbiguousProjectionError(GraphError):
    """A block had no unique closest vertex; the decomposition is corrupt."""


@dataclass(frozen=True)
class BlockKind:
    """Shape of a block: a bridge edge, a k-cycle, or anything denser."""

    label: str  # "edge" | "cycle" | "other"
    cycle_length: int | None = None

    @property
    def is_bridge_edge(self) -> bool:
        return self.label == "edge"

    @property
    def is_cycle(self) -> bool:
        return self.label == "cycle"

    def __str__(self) -> str:
        if self.label == "cycle":
            return f"cycle({self.cycle_length})"
        return self.label


BRIDGE_EDGE = BlockKind("edge")
OTHER = BlockKind("other")


def cycle_kind(k: int) -> BlockKind:
    if k < 3:
        raise ValueError(f"cycle blocks need length >= 3, got {k}")
    return BlockKind("cycle", k)


@dataclass(frozen=True)
class Block:
    vertices: tuple[int, ...]  # sorted
    edges: tuple[Edge, ...]    # sorted
    kind: BlockKind


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks sorted by their smallest edge, plus cut vertices and an
    edge-to-block index.  Block edge sets partition the edge set."""

    blocks: tuple[Block, ...]
    cut_vertices: frozenset[int]
    block_of_edge: Mapping[Edge, int]

    def kinds(self) -> tuple[BlockKind, ...]:
        return tuple(b.kind for b in self.blocks)


def _classify(vertices: tuple[int, ...], edges: tuple[Edge, ...]) -> BlockKind:
    if len(edges) == 1:
        return BRIDGE_EDGE
    if len(vertices) == len(edges):
        degree = {v: 0 for v in vertices}
        for s, t in edges:
            degree[s] += 1
            degree[t] += 1
        if all(d == 2 for d in degree.values()):
            return cycle_kind(len(edges))
    return OTHER


def classify_block(g: Graph, b: Block) -> BlockKind:
    """Recompute a block's kind from its own vertices and edges.

    The classification depends only on the block (intra-block degrees), not
    on the rest of ``g``; the parameter is kept for interface symmetry.
    """
    del g
    return _classify(b.vertices, b.edges)


def block_decomposition(g: Graph) -> BlockDecomposition:
    """Decompose a connected graph into blocks via iterative low-link DFS.

    An explicit stack avoids recursion limits on path-like graphs.  Output
    ordering is deterministic: blocks sorted by their smallest edge.
    """
    if not g.is_connected:
        raise DisconnectedGraphError("block decomposition requires a connected graph")
    n = g.n
    adj = g.adj
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    estack: list[tuple[int, int]] = []
    raw_blocks: list[list[tuple[int, int]]] = []
    cut: set[int] = set()

    root = 0
    disc[root] = low[root] = 0
    timer = 1
    work: list[tuple[int, object]] = [(root, iter(adj[root]))]
    root_children = 0
    while work:
        u, it = work[-1]
        descended = False
        for v in it:  # type: ignore[union-attr]
            if disc[v] == -1:
                parent[v] = u
                estack.append((u, v))
                disc[v] = low[v] = timer
                timer += 1
                work.append((v, iter(adj[v])))
                descended = True
                break
            if v != parent[u] and disc[v] < disc[u]:
                estack.append((u, v))
                if disc[v] < low[u]:
                    low[u] = disc[v]
        if descended:
            continue
        work.pop()
        if not work:
            break
        p = work[-1][0]
        if low[u] < low[p]:
            low[p] = low[u]
        if low[u] >= disc[p]:
            blk: list[tuple[int, int]] = []
            while True:
                e = estack.pop()
                blk.append(e)
                if e == (p, u):
                    break
            raw_blocks.append(blk)
            if p == root:
                root_children += 1
            else:
                cut.add(p)
    if root_children >= 2:
        cut.add(root)

    blocks: list[Block] = []
    for blk in raw_blocks:
        edges = tuple(sorted(edge(a, b) for a, b in blk))
        vertices = tuple(sorted({v for e in edges for v in e}))
        blocks.append(Block(vertices, edges, _classify(vertices, edges)))
    blocks.sort(key=lambda b: b.edges[0])
    block_of_edge = {e: i for i, b in enumerate(blocks) for e in b.edges}
    return BlockDecomposition(tuple(blocks), frozenset(cut), block_of_edge)


def is_cactus(g: Graph, decomp: BlockDecomposition | None = None) -> bool:
    """True iff every block is a bridge edge or a cycle (K1 counts)."""
    decomp = decomp or block_decomposition(g)
    return all(b.kind.is_bridge_edge or b.kind.is_cycle for b in decomp.blocks)


def all_blocks_cycles(g: Graph, decomp: BlockDecomposition | None = None) -> bool:
    """True iff every block is a cycle (vacuously true for K1)."""
    decomp = decomp or block_decomposition(g)
    return all(b.kind.is_cycle for b in decomp.blocks)


def closest_vertex_in_block(dm: DistanceMatrix, b: Block, u: int) -> int:
    """The unique vertex of block ``b`` nearest to ``u``.

    For u inside the block this is u itself; otherwise every shortest path
    from u into the block enters through one cut vertex, so the minimizer is
    unique.  A tie means the decomposition (or matrix) is inconsistent.
    """
    row = dm.rows[u]
    best = -1
    best_d = -1
    tied = False
    for w in b.vertices:
        d = row[w]
        if best < 0 or d < best_d:
            best, best_d, tied = w, d, False
        elif d == best_d:
            tied = True
    if tied:
        raise AmbiguousProjectionError(
            f"no unique vertex of block {b.vertices} closest to {u} (d={best_d})"
        )
    return best
