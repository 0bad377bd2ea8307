"""Wiener, Szeged, and revised Szeged indices, via two independent routes.

Edge-sum route (the classical definitions), for an edge {s, t}:

    n_st = #vertices strictly closer to s,  n_ts = closer to t,  o = equidistant
    W    = sum over unordered vertex pairs of d(u, v)
    Sz   = sum over edges of n_st * n_ts
    Sz*  = sum over edges of (n_st + o/2) * (n_ts + o/2)

Vertex-sum route, built from two edge indicators:

    mu_{u,v}(e) = 1 iff the endpoints of e are ordered oppositely by
                  distance from u and from v   (e is (u,v)-distance-disparate)
    nu_v(e)     = 1 iff both endpoints of e are equidistant from v
    dis(u, v)   = number of (u,v)-distance-disparate edges
    deq(u, v)   = number of edges with nu_u(e) = nu_v(e) = 1

    Sz  = 1/2 * sum over ordered pairs of dis(u, v)
    Sz* = 1/2 * sum over ordered pairs of
              dis(u, v) + deq(u, u) - 1/2 * deq(u, v)

Both routes are computed in exact integer arithmetic (quarter-integers are
stored quadrupled) and must agree bit-for-bit; the cross-check is the point.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import DistanceMatrix, Edge, Graph, all_pairs_distances
from .rational import QuarterRational

__all__ = [
    "EdgeSplit",
    "IndexReport",
    "IndexCrossCheckError",
    "edge_split",
    "wiener",
    "szeged",
    "revised_szeged",
    "mu",
    "nu",
    "dis_count",
    "deq_count",
    "szeged_vertex_sum",
    "revised_szeged_vertex_sum",
    "szeged_difference",
    "cycle_dis_closed_form",
    "index_report",
]


class IndexCrossCheckError(AssertionError):
    """The two computation routes disagreed; one of them is buggy."""


@dataclass(frozen=True)
class EdgeSplit:
    """Vertex partition induced by an edge {s, t}: closer to s, closer to t,
    or equidistant.  Always n_st + n_ts + o_st = n."""

    n_st: int
    n_ts: int
    o_st: int


def edge_split(dm: DistanceMatrix, e: Edge) -> EdgeSplit:
    s, t = e
    row_s = dm.rows[s]
    row_t = dm.rows[t]
    n_st = n_ts = o = 0
    for ds, dt in zip(row_s, row_t):
        if ds < dt:
            n_st += 1
        elif ds > dt:
            n_ts += 1
        else:
            o += 1
    return EdgeSplit(n_st, n_ts, o)


def wiener(dm: DistanceMatrix) -> int:
    """Sum of distances over unordered vertex pairs."""
    total = dm.total()
    assert total % 2 == 0
    return total // 2


def szeged(g: Graph, dm: DistanceMatrix) -> int:
    """Edge-sum Szeged index: sum of n_st * n_ts over edges."""
    total = 0
    for e in g.edges:
        sp = edge_split(dm, e)
        total += sp.n_st * sp.n_ts
    return total


def revised_szeged(g: Graph, dm: DistanceMatrix) -> QuarterRational:
    """Edge-sum revised Szeged index, exact.

    Per edge the quadrupled term is (2*n_st + o) * (2*n_ts + o), a product of
    two integers, so the whole sum stays integral.
    """
    quad = 0
    for e in g.edges:
        sp = edge_split(dm, e)
        quad += (2 * sp.n_st + sp.o_st) * (2 * sp.n_ts + sp.o_st)
    return QuarterRational(quad)


def mu(dm: DistanceMatrix, u: int, v: int, e: Edge) -> int:
    """1 iff edge e is (u, v)-distance-disparate."""
    s, t = e
    du = dm.rows[u]
    dv = dm.rows[v]
    a = du[s] - du[t]
    b = dv[s] - dv[t]
    return 1 if (a < 0 < b) or (b < 0 < a) else 0


def nu(dm: DistanceMatrix, v: int, e: Edge) -> int:
    """1 iff both endpoints of edge e are equidistant from v."""
    s, t = e
    row = dm.rows[v]
    return 1 if row[s] == row[t] else 0


def dis_count(g: Graph, dm: DistanceMatrix, u: int, v: int) -> int:
    """Number of (u, v)-distance-disparate edges; at least d(u, v) for u != v
    because every edge of a shortest u-v path qualifies."""
    return sum(mu(dm, u, v, e) for e in g.edges)


def deq_count(g: Graph, dm: DistanceMatrix, u: int, v: int) -> int:
    """Number of (u, v)-distance-equal edges; deq(u, u) counts the edges
    whose endpoints are equidistant from u."""
    return sum(nu(dm, u, e) * nu(dm, v, e) for e in g.edges)


def _vertex_edge_masks(g: Graph, dm: DistanceMatrix) -> tuple[list[int], list[int], list[int]]:
    """Per-vertex edge bitmasks: bit j of closer_s[u] is set when u is
    strictly closer to the smaller endpoint of edge j, closer_t[u] when
    closer to the larger one, equal[u] when equidistant.

    dis(u, v) and deq(u, v) then reduce to popcounts of mask intersections,
    which keeps the ordered-pair sums fast without changing their meaning.
    """
    n = dm.n
    closer_s = [0] * n
    closer_t = [0] * n
    equal = [0] * n
    rows = dm.rows
    for j, (s, t) in enumerate(g.edges):
        bit = 1 << j
        row_s = rows[s]
        row_t = rows[t]
        for u in range(n):
            diff = row_s[u] - row_t[u]
            if diff < 0:
                closer_s[u] |= bit
            elif diff > 0:
                closer_t[u] |= bit
            else:
                equal[u] |= bit
    return closer_s, closer_t, equal


def szeged_vertex_sum(g: Graph, dm: DistanceMatrix) -> int:
    """Szeged index as half the ordered-pair sum of dis(u, v)."""
    closer_s, closer_t, _ = _vertex_edge_masks(g, dm)
    n = dm.n
    total = 0
    for u in range(n):
        cs_u = closer_s[u]
        ct_u = closer_t[u]
        for v in range(n):
            total += (cs_u & closer_t[v]).bit_count() + (ct_u & closer_s[v]).bit_count()
    assert total % 2 == 0
    return total // 2


def revised_szeged_vertex_sum(g: Graph, dm: DistanceMatrix) -> QuarterRational:
    """Revised Szeged index as an ordered-pair sum.

    Quadrupled and halved, the summand per ordered pair (u, v) is
    2*dis(u, v) + 2*deq(u, u) - deq(u, v); diagonal pairs contribute through
    their deq terms.
    """
    closer_s, closer_t, equal = _vertex_edge_masks(g, dm)
    n = dm.n
    quad = 0
    for u in range(n):
        cs_u = closer_s[u]
        ct_u = closer_t[u]
        eq_u = equal[u]
        deq_uu2 = 2 * eq_u.bit_count()
        for v in range(n):
            dis_uv = (cs_u & closer_t[v]).bit_count() + (ct_u & closer_s[v]).bit_count()
            quad += 2 * dis_uv + deq_uu2 - (eq_u & equal[v]).bit_count()
    return QuarterRational(quad)


def _difference_edge_form(g: Graph, dm: DistanceMatrix) -> QuarterRational:
    n = dm.n
    quad = 0
    for e in g.edges:
        o = edge_split(dm, e).o_st
        quad += 2 * n * o - o * o
    return QuarterRational(quad)


def szeged_difference(g: Graph, dm: DistanceMatrix) -> tuple[QuarterRational, QuarterRational]:
    """Sz* - Sz in two guises that must agree.

    Edge form:   1/2 * sum over edges of (n * o_e - o_e^2 / 2)
    Vertex form: n/2 * sum of deq(u, u)  -  1/4 * ordered-pair sum of deq(u, v)
    """
    n = dm.n
    quad_edge = _difference_edge_form(g, dm).quadrupled

    _, _, equal = _vertex_edge_masks(g, dm)
    diag = sum(eq.bit_count() for eq in equal)
    pair_sum = 0
    for u in range(n):
        eq_u = equal[u]
        for v in range(n):
            pair_sum += (eq_u & equal[v]).bit_count()
    quad_vertex = 2 * n * diag - pair_sum
    return QuarterRational(quad_edge), QuarterRational(quad_vertex)


def cycle_dis_closed_form(n: int, d: int) -> int:
    """dis(u, v) on a cycle of length n for vertices at distance d:
    2d when n is even, 2d - 1 when n is odd."""
    if n < 3:
        raise ValueError(f"cycle length must be >= 3, got {n}")
    if not 1 <= d <= n // 2:
        raise ValueError(f"distance {d} out of range 1..{n // 2} for cycle length {n}")
    return 2 * d if n % 2 == 0 else 2 * d - 1


@dataclass(frozen=True)
class IndexReport:
    """All indices of one graph, with the vertex-sum cross-checks.

    The vertex-sum fields are None when the quadratic cross-check path was
    skipped; when present they are guaranteed equal to their edge-sum twins.
    """

    wiener: int
    szeged: int
    revised_szeged: QuarterRational
    difference_edge_form: QuarterRational
    szeged_vertex_sum: int | None = None
    revised_szeged_vertex_sum: QuarterRational | None = None
    difference_vertex_form: QuarterRational | None = None

    @property
    def cross_checked(self) -> bool:
        return self.szeged_vertex_sum is not None


def index_report(g: Graph, dm: DistanceMatrix | None = None, *,
                 cross_check: bool = True) -> IndexReport:
    """Compute all indices; with cross_check, also run the vertex-sum route
    and fail hard on any disagreement between the routes."""
    if dm is None:
        dm = all_pairs_distances(g)
    w = wiener(dm)
    sz = szeged(g, dm)
    rsz = revised_szeged(g, dm)
    diff_edge, diff_vertex = None, None
    sz_vs, rsz_vs = None, None
    if cross_check:
        sz_vs = szeged_vertex_sum(g, dm)
        rsz_vs = revised_szeged_vertex_sum(g, dm)
        diff_edge, diff_vertex = szeged_difference(g, dm)
        expected = rsz - QuarterRational.from_int(sz)
        if sz_vs != sz:
            raise IndexCrossCheckError(f"Szeged routes disagree: {sz} vs {sz_vs}")
        if rsz_vs != rsz:
            raise IndexCrossCheckError(
                f"revised Szeged routes disagree: {rsz.fraction_str()} vs {rsz_vs.fraction_str()}"
            )
        if diff_edge != expected or diff_vertex != expected:
            raise IndexCrossCheckError(
                f"difference forms disagree: edge={diff_edge.fraction_str()} "
                f"vertex={diff_vertex.fraction_str()} expected={expected.fraction_str()}"
            )
    else:
        diff_edge = _difference_edge_form(g, dm)
        if diff_edge != rsz - QuarterRational.from_int(sz):
            raise IndexCrossCheckError("edge-form difference inconsistent with Sz* - Sz")
    return IndexReport(
        wiener=w,
        szeged=sz,
        revised_szeged=rsz,
        difference_edge_form=diff_edge,
        szeged_vertex_sum=sz_vs,
        revised_szeged_vertex_sum=rsz_vs,
        difference_vertex_form=diff_vertex,
    )
