"""Named graphs, parametric families, and seeded random cactus corpora.

Random generation is part of the public contract: given the same parameters
it must produce the same edge list on every platform.  To that end it runs
on an explicitly specified SplitMix64 stream rather than a platform RNG, and
all probability draws are integer threshold tests against exact fractions.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from fractions import Fraction

from .graph import Graph

__all__ = [
    "SplitMix64",
    "Parity",
    "CactusParams",
    "path",
    "cycle",
    "complete",
    "paper_fig2",
    "paper_fig3",
    "random_cactus",
    "random_cycle_cactus",
]

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 pseudo-random stream (public contract, fixed forever).

    next_u64: state += 0x9E3779B97F4A7C15 (mod 2^64); z = state;
              z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 (mod 2^64);
              z = (z ^ (z >> 27)) * 0x94D049BB133111EB (mod 2^64);
              return z ^ (z >> 31).
    below(b): next_u64() mod b.
    """

    __slots__ = ("state",)

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        return self.next_u64() % bound


class Parity(Enum):
    ANY = "any"
    EVEN_ONLY = "even"
    ODD_ONLY = "odd"


@dataclass(frozen=True)
class CactusParams:
    """Parameters of the random cactus process.

    block_count blocks are attached one by one to a uniformly chosen existing
    vertex, each being a pendant edge with probability edge_block_probability
    and otherwise a cycle of length drawn uniformly from cycle_length_range
    restricted by parity.
    """

    block_count: int
    cycle_length_range: tuple[int, int] = (3, 8)
    edge_block_probability: Fraction = Fraction(1, 2)
    parity: Parity = Parity.ANY
    seed: int = 0

    def __post_init__(self) -> None:
        lo, hi = self.cycle_length_range
        if self.block_count < 0:
            raise ValueError("block_count must be >= 0")
        if lo < 3 or hi < lo:
            raise ValueError(f"cycle_length_range must satisfy 3 <= lo <= hi, got {lo}..{hi}")
        p = self.edge_block_probability
        if not 0 <= p <= 1:
            raise ValueError(f"edge_block_probability must lie in [0, 1], got {p}")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must fit in 64 bits")
        if p < 1 and not self.allowed_cycle_lengths():
            raise ValueError(
                f"no cycle length in {lo}..{hi} has parity {self.parity.value}"
            )

    def allowed_cycle_lengths(self) -> tuple[int, ...]:
        lo, hi = self.cycle_length_range
        lengths = range(lo, hi + 1)
        if self.parity is Parity.EVEN_ONLY:
            return tuple(k for k in lengths if k % 2 == 0)
        if self.parity is Parity.ODD_ONLY:
            return tuple(k for k in lengths if k % 2 == 1)
        return tuple(lengths)


def path(n: int) -> Graph:
    """Path on n >= 1 vertices: 0-1-...-(n-1)."""
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    """Cycle on n >= 3 vertices: i adjacent to (i+1) mod n."""
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    """Complete graph on n >= 1 vertices."""
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def paper_fig2() -> Graph:
    """Bipartite non-cactus example on 10 vertices and 11 edges.

    Three paths of length two join hub 0 to hub 1 through midpoints 2, 3, 4;
    three pendant vertices 5, 6, 7 hang off hub 0 and two pendants 8, 9 off
    hub 1.  Its Szeged index equals twice its Wiener index even though it is
    not a cactus.
    """
    edges = [(0, m) for m in (2, 3, 4)]
    edges += [(1, m) for m in (2, 3, 4)]
    edges += [(0, x) for x in (5, 6, 7)]
    edges += [(1, y) for y in (8, 9)]
    return Graph.from_edges(10, edges)


def paper_fig3() -> Graph:
    """Cactus example on 29 vertices and 30 edges.

    A 13-cycle (vertices 0..12), an 11-cycle (vertices 0, 13..22), and six
    pendant edges (vertices 23..28) all share hub vertex 0.  Its revised
    Szeged index equals twice its Wiener index although its blocks are not
    all cycles.
    """
    edges = [(i, i + 1) for i in range(12)] + [(0, 12)]
    edges += [(0, 13)] + [(i, i + 1) for i in range(13, 22)] + [(0, 22)]
    edges += [(0, x) for x in range(23, 29)]
    return Graph.from_edges(29, edges)


def random_cactus(params: CactusParams) -> Graph:
    """Seeded random cactus; a pure function of its parameters.

    Starting from a single vertex, each of block_count rounds draws, in this
    fixed order: the attachment vertex (uniform over existing vertices), the
    block type (pendant edge iff below(p.denominator) < p.numerator), and for
    cycle blocks the length (uniform over the allowed lengths).
    """
    rng = SplitMix64(params.seed)
    p = params.edge_block_probability
    lengths = params.allowed_cycle_lengths()
    n = 1
    edges: list[tuple[int, int]] = []
    for _ in range(params.block_count):
        attach = rng.below(n)
        pendant = rng.below(p.denominator) < p.numerator
        if pendant:
            edges.append((attach, n))
            n += 1
        else:
            k = lengths[rng.below(len(lengths))]
            ring = [attach] + list(range(n, n + k - 1))
            edges.extend((ring[i], ring[(i + 1) % k]) for i in range(k))
            n += k - 1
    return Graph.from_edges(n, edges)


def random_cycle_cactus(params: CactusParams) -> Graph:
    """Random cactus whose every block is a cycle (pendant edges disabled)."""
    return random_cactus(replace(params, edge_block_probability=Fraction(0)))
