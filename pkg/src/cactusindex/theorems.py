"""Machine checks of the exact identities and inequalities between indices.

Every check returns a TheoremVerdict with exact quarter-rational sides, so
equality is decided without tolerances.  Verdicts are oriented so that the
claim under test is "lhs <= rhs"; identity claims hold with equality by
construction.  A check whose hypothesis fails (e.g. the cactus bound on a
non-cactus) returns NotApplicable rather than erroring, so corpus sweeps can
mix graph classes.  When a claim also predicts its equality case, a mismatch
between prediction and observation counts as Violated.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .blocks import (
    Block,
    BlockDecomposition,
    all_blocks_cycles,
    block_decomposition,
    closest_vertex_in_block,
    is_cactus,
)
from .graph import DistanceMatrix, Graph, all_pairs_distances, is_bipartite
from .indices import (
    cycle_dis_closed_form,
    dis_count,
    mu,
    nu,
    revised_szeged,
    revised_szeged_vertex_sum,
    szeged,
    szeged_difference,
    szeged_vertex_sum,
    wiener,
)
from .generators import cycle
from .rational import QuarterRational

__all__ = [
    "Claim",
    "Status",
    "TheoremVerdict",
    "EqualityFacts",
    "check_cycle_dis_lemma",
    "check_distance_partition",
    "check_vertex_sum_identity",
    "check_difference_identity",
    "check_sz_vs_2w",
    "check_revised_sz_vs_2w",
    "check_classical_chain",
    "find_equality_outliers",
    "block_projection_table",
    "block_sum_revised_szeged",
]


class Claim(Enum):
    CYCLE_DIS_LEMMA = "CycleDisLemma"
    DISTANCE_PARTITION = "DistancePartition"
    VERTEX_SUM_IDENTITY = "VertexSumIdentity"
    DIFFERENCE_IDENTITY = "DifferenceIdentity"
    SZ_LEQ_2W = "SzLeq2W"
    REVISED_SZ_GEQ_2W = "RevisedSzGeq2W"
    CLASSICAL_CHAIN = "ClassicalChain"


class Status(Enum):
    HOLDS_STRICT = "holds_strict"
    HOLDS_WITH_EQUALITY = "holds_with_equality"
    VIOLATED = "violated"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class TheoremVerdict:
    claim: Claim
    status: Status
    lhs: QuarterRational
    rhs: QuarterRational
    predicted_equality: bool
    witness: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim.value,
            "status": self.status.value,
            "lhs": self.lhs.fraction_str(),
            "rhs": self.rhs.fraction_str(),
            "predicted_equality": self.predicted_equality,
            "witness": self.witness,
        }


def _identity_verdict(claim: Claim, lhs: QuarterRational, rhs: QuarterRational,
                      witness: str | None) -> TheoremVerdict:
    if witness is not None:
        return TheoremVerdict(claim, Status.VIOLATED, lhs, rhs, True, witness)
    return TheoremVerdict(claim, Status.HOLDS_WITH_EQUALITY, lhs, rhs, True)


def _inequality_verdict(claim: Claim, lhs: QuarterRational, rhs: QuarterRational,
                        predicted_equality: bool) -> TheoremVerdict:
    """Check lhs <= rhs together with its predicted equality case."""
    if lhs > rhs:
        return TheoremVerdict(
            claim, Status.VIOLATED, lhs, rhs, predicted_equality,
            witness=f"inequality fails: {lhs.fraction_str()} > {rhs.fraction_str()}",
        )
    observed_equality = lhs == rhs
    if observed_equality != predicted_equality:
        return TheoremVerdict(
            claim, Status.VIOLATED, lhs, rhs, predicted_equality,
            witness=(
                "equality characterization fails: predicted "
                f"{predicted_equality}, observed {observed_equality}"
            ),
        )
    status = Status.HOLDS_WITH_EQUALITY if observed_equality else Status.HOLDS_STRICT
    return TheoremVerdict(claim, status, lhs, rhs, predicted_equality)


def check_cycle_dis_lemma(n: int) -> TheoremVerdict:
    """On the n-cycle, dis(u, v) must equal 2d (n even) or 2d - 1 (n odd)
    for every pair of distinct vertices."""
    g = cycle(n)
    dm = all_pairs_distances(g)
    total = 0
    expected = 0
    witness = None
    for u in range(n):
        for v in range(u + 1, n):
            got = dis_count(g, dm, u, v)
            want = cycle_dis_closed_form(n, dm.rows[u][v])
            total += got
            expected += want
            if got != want and witness is None:
                witness = f"pair ({u}, {v}): dis={got}, closed form={want}"
    return _identity_verdict(
        Claim.CYCLE_DIS_LEMMA,
        QuarterRational.from_int(total),
        QuarterRational.from_int(expected),
        witness,
    )


def block_projection_table(
    dm: DistanceMatrix, decomp: BlockDecomposition
) -> list[list[int]]:
    """For each block, the projection of every vertex onto it (the unique
    closest block vertex)."""
    return [
        [closest_vertex_in_block(dm, b, u) for u in range(dm.n)]
        for b in decomp.blocks
    ]


def check_distance_partition(g: Graph, dm: DistanceMatrix | None = None,
                             decomp: BlockDecomposition | None = None) -> TheoremVerdict:
    """Distances split over blocks: d(u, v) = sum over blocks B of
    d(u_B, v_B), where x_B is the projection of x onto B.  Holds for every
    connected graph, not only cacti."""
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    proj = block_projection_table(dm, decomp)
    rows = dm.rows
    total = 0
    expected = 0
    witness = None
    for u in range(g.n):
        row_u = rows[u]
        for v in range(g.n):
            direct = row_u[v]
            split = 0
            for pb in proj:
                split += rows[pb[u]][pb[v]]
            total += direct
            expected += split
            if direct != split and witness is None:
                witness = f"pair ({u}, {v}): d={direct}, block sum={split}"
    return _identity_verdict(
        Claim.DISTANCE_PARTITION,
        QuarterRational.from_int(total),
        QuarterRational.from_int(expected),
        witness,
    )


def check_vertex_sum_identity(g: Graph, dm: DistanceMatrix | None = None) -> TheoremVerdict:
    """Edge-sum and vertex-sum routes must agree for both Szeged indices."""
    dm = dm or all_pairs_distances(g)
    rsz_edge = revised_szeged(g, dm)
    rsz_vertex = revised_szeged_vertex_sum(g, dm)
    sz_edge = szeged(g, dm)
    sz_vertex = szeged_vertex_sum(g, dm)
    witness = None
    if sz_edge != sz_vertex:
        witness = f"Szeged: edge sum {sz_edge} != vertex sum {sz_vertex}"
    elif rsz_edge != rsz_vertex:
        witness = (
            f"revised Szeged: edge sum {rsz_edge.fraction_str()} != "
            f"vertex sum {rsz_vertex.fraction_str()}"
        )
    return _identity_verdict(Claim.VERTEX_SUM_IDENTITY, rsz_edge, rsz_vertex, witness)


def check_difference_identity(g: Graph, dm: DistanceMatrix | None = None) -> TheoremVerdict:
    """Both closed forms of Sz* - Sz must equal the direct difference."""
    dm = dm or all_pairs_distances(g)
    direct = revised_szeged(g, dm) - QuarterRational.from_int(szeged(g, dm))
    edge_form, vertex_form = szeged_difference(g, dm)
    witness = None
    if edge_form != direct:
        witness = f"edge form {edge_form.fraction_str()} != direct {direct.fraction_str()}"
    elif vertex_form != direct:
        witness = f"vertex form {vertex_form.fraction_str()} != direct {direct.fraction_str()}"
    return _identity_verdict(Claim.DIFFERENCE_IDENTITY, edge_form, direct, witness)


def _all_blocks_even_cycles(decomp: BlockDecomposition) -> bool:
    return all(
        b.kind.is_cycle and b.kind.cycle_length % 2 == 0 for b in decomp.blocks
    )


def check_sz_vs_2w(g: Graph, dm: DistanceMatrix | None = None,
                   decomp: BlockDecomposition | None = None) -> TheoremVerdict:
    """On cacti, Sz <= 2W, with equality iff every block is an even cycle."""
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    lhs = QuarterRational.from_int(szeged(g, dm))
    rhs = QuarterRational.from_int(2 * wiener(dm))
    if not is_cactus(g, decomp):
        return TheoremVerdict(
            Claim.SZ_LEQ_2W, Status.NOT_APPLICABLE, lhs, rhs, False,
            witness="hypothesis fails: graph is not a cactus",
        )
    return _inequality_verdict(Claim.SZ_LEQ_2W, lhs, rhs, _all_blocks_even_cycles(decomp))


def check_revised_sz_vs_2w(g: Graph, dm: DistanceMatrix | None = None,
                           decomp: BlockDecomposition | None = None) -> TheoremVerdict:
    """On graphs whose blocks are all cycles, 2W <= Sz*, with equality iff
    every cycle has even length."""
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    lhs = QuarterRational.from_int(2 * wiener(dm))
    rhs = revised_szeged(g, dm)
    if not all_blocks_cycles(g, decomp):
        return TheoremVerdict(
            Claim.REVISED_SZ_GEQ_2W, Status.NOT_APPLICABLE, lhs, rhs, False,
            witness="hypothesis fails: not every block is a cycle",
        )
    return _inequality_verdict(
        Claim.REVISED_SZ_GEQ_2W, lhs, rhs, _all_blocks_even_cycles(decomp)
    )


def _block_is_complete(g: Graph, b: Block) -> bool:
    return all(
        g.has_edge(b.vertices[i], b.vertices[j])
        for i in range(len(b.vertices))
        for j in range(i + 1, len(b.vertices))
    )


def check_classical_chain(g: Graph, dm: DistanceMatrix | None = None,
                          decomp: BlockDecomposition | None = None) -> TheoremVerdict:
    """W <= Sz <= Sz* on every connected graph, with W = Sz iff every block
    is complete and Sz = Sz* iff the graph is bipartite."""
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    w = QuarterRational.from_int(wiener(dm))
    sz = QuarterRational.from_int(szeged(g, dm))
    rsz = revised_szeged(g, dm)
    blocks_complete = all(_block_is_complete(g, b) for b in decomp.blocks)
    bipartite = is_bipartite(g)
    witness = None
    if w > sz:
        witness = f"W > Sz: {w.fraction_str()} > {sz.fraction_str()}"
    elif sz > rsz:
        witness = f"Sz > Sz*: {sz.fraction_str()} > {rsz.fraction_str()}"
    elif (w == sz) != blocks_complete:
        witness = (
            f"W = Sz is {w == sz} but every-block-complete is {blocks_complete}"
        )
    elif (sz == rsz) != bipartite:
        witness = f"Sz = Sz* is {sz == rsz} but bipartite is {bipartite}"
    predicted_equality = blocks_complete and bipartite
    if witness is not None:
        return TheoremVerdict(
            Claim.CLASSICAL_CHAIN, Status.VIOLATED, w, rsz, predicted_equality, witness
        )
    status = Status.HOLDS_WITH_EQUALITY if w == rsz else Status.HOLDS_STRICT
    return TheoremVerdict(Claim.CLASSICAL_CHAIN, status, w, rsz, predicted_equality)


@dataclass(frozen=True)
class EqualityFacts:
    """Equality pattern of one graph against both twice-Wiener bounds."""

    szeged_equals_2w: bool
    revised_equals_2w: bool
    is_cactus: bool
    all_blocks_cycles: bool
    all_blocks_even_cycles: bool

    @property
    def unexplained_szeged_equality(self) -> bool:
        """Sz = 2W without every block being an even cycle of a cactus."""
        return self.szeged_equals_2w and not (self.is_cactus and self.all_blocks_even_cycles)

    @property
    def unexplained_revised_equality(self) -> bool:
        """Sz* = 2W without all blocks being even cycles."""
        return self.revised_equals_2w and not (
            self.all_blocks_cycles and self.all_blocks_even_cycles
        )

    @property
    def flagged(self) -> bool:
        return self.unexplained_szeged_equality or self.unexplained_revised_equality


def equality_facts(g: Graph, dm: DistanceMatrix | None = None,
                   decomp: BlockDecomposition | None = None) -> EqualityFacts:
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    w2 = QuarterRational.from_int(2 * wiener(dm))
    return EqualityFacts(
        szeged_equals_2w=QuarterRational.from_int(szeged(g, dm)) == w2,
        revised_equals_2w=revised_szeged(g, dm) == w2,
        is_cactus=is_cactus(g, decomp),
        all_blocks_cycles=all_blocks_cycles(g, decomp),
        all_blocks_even_cycles=_all_blocks_even_cycles(decomp),
    )


def find_equality_outliers(
    corpus: Iterable[Graph], names: Sequence[str] | None = None
) -> list[tuple[str, EqualityFacts]]:
    """Graphs whose equality with twice the Wiener index is not explained by
    the even-cycle characterizations.  Returns (graph id, facts) pairs; ids
    are the supplied names or positional indices."""
    outliers = []
    for i, g in enumerate(corpus):
        facts = equality_facts(g)
        if facts.flagged:
            gid = names[i] if names is not None else str(i)
            outliers.append((gid, facts))
    return outliers


def block_sum_revised_szeged(
    g: Graph, dm: DistanceMatrix | None = None,
    decomp: BlockDecomposition | None = None,
) -> tuple[QuarterRational, int]:
    """Recompute Sz* by splitting the vertex-sum formula over blocks.

    For each ordered vertex pair (u, v) and block B with projections u_B and
    v_B, the contribution is dis_B(u_B, v_B) + deq_B(u_B, u_B)
    - 1/2 * deq_B(u_B, v_B), where dis_B / deq_B count only edges of B.  The
    halved total equals Sz* on every connected graph.

    Also returns the number of (ordered pair, odd-cycle block) incidences
    with u_B = v_B; when every block is a cycle, each contributes exactly a
    quarter to Sz* - 2W, so the count equals the quadrupled slack.
    """
    dm = dm or all_pairs_distances(g)
    decomp = decomp or block_decomposition(g)
    proj = block_projection_table(dm, decomp)
    n = g.n

    quad = 0
    odd_coincidences = 0
    for b, pb in zip(decomp.blocks, proj):
        local = {w: i for i, w in enumerate(b.vertices)}
        k = len(b.vertices)
        dis_b = [[0] * k for _ in range(k)]
        deq_b = [[0] * k for _ in range(k)]
        for i, x in enumerate(b.vertices):
            for j, y in enumerate(b.vertices):
                dis_b[i][j] = sum(mu(dm, x, y, e) for e in b.edges)
                deq_b[i][j] = sum(nu(dm, x, e) * nu(dm, y, e) for e in b.edges)
        odd_cycle = b.kind.is_cycle and b.kind.cycle_length % 2 == 1
        for u in range(n):
            iu = local[pb[u]]
            deq_uu2 = 2 * deq_b[iu][iu]
            dis_row = dis_b[iu]
            deq_row = deq_b[iu]
            for v in range(n):
                iv = local[pb[v]]
                quad += 2 * dis_row[iv] + deq_uu2 - deq_row[iv]
                if odd_cycle and iu == iv:
                    odd_coincidences += 1
    return QuarterRational(quad), odd_coincidences
