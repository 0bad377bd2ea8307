"""Command-line interface: compute indices, verify claims, generate corpora.

Subcommands:

    compute <file> [--verify] [--json]
    verify (--paper | --family cycles --n A..B | --gen cactus ... | <path>)
           [--json] [--threads K]
    gen (--named fig2|fig3 | --cactus ...) --out DIR

Exit codes: 0 success, 1 at least one violated claim, 2 input error.  JSON
output is schema-stable, never renders exact rationals as floats, and for
`verify` contains no timing so runs are byte-identical for any --threads.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .blocks import BlockDecomposition, block_decomposition, is_cactus
from .generators import (
    CactusParams,
    Parity,
    paper_fig2,
    paper_fig3,
    random_cactus,
)
from .graph import (
    DistanceMatrix,
    Graph,
    GraphError,
    all_pairs_distances,
    is_bipartite,
    parse_edge_list,
    serialize_edge_list,
)
from .indices import IndexReport, index_report
from .rational import QuarterRational
from .theorems import (
    Status,
    TheoremVerdict,
    check_classical_chain,
    check_cycle_dis_lemma,
    check_difference_identity,
    check_distance_partition,
    check_revised_sz_vs_2w,
    check_sz_vs_2w,
    check_vertex_sum_identity,
    equality_facts,
)

__all__ = ["main", "RunReport", "cmd_compute", "cmd_verify", "cmd_gen"]

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT_ERROR = 2

# Quadratic cross-checks run by default only up to this vertex count.
CROSS_CHECK_DEFAULT_MAX_N = 200


@dataclass(frozen=True)
class RunReport:
    """Everything the compute command knows about one graph."""

    input_name: str
    n: int
    m: int
    cactus: bool
    bipartite: bool
    block_kinds: tuple[str, ...]
    indices: IndexReport
    verdicts: tuple[TheoremVerdict, ...]
    original_labels: tuple[int, ...] | None
    elapsed_ms: float

    def to_json_dict(self) -> dict:
        idx: dict[str, object] = {
            "wiener": self.indices.wiener,
            "szeged": self.indices.szeged,
            "revised_szeged": self.indices.revised_szeged.fraction_str(),
            "difference_edge_form": self.indices.difference_edge_form.fraction_str(),
        }
        if self.indices.cross_checked:
            idx["szeged_vertex_sum"] = self.indices.szeged_vertex_sum
            idx["revised_szeged_vertex_sum"] = (
                self.indices.revised_szeged_vertex_sum.fraction_str()
            )
            idx["difference_vertex_form"] = (
                self.indices.difference_vertex_form.fraction_str()
            )
        out: dict[str, object] = {
            "input": self.input_name,
            "n": self.n,
            "m": self.m,
            "is_cactus": self.cactus,
            "is_bipartite": self.bipartite,
            "blocks": list(self.block_kinds),
            "indices": idx,
            "verdicts": [v.to_json_dict() for v in self.verdicts],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.original_labels is not None:
            out["original_labels"] = list(self.original_labels)
        return out

    def to_text(self) -> str:
        ind = self.indices
        two_w = QuarterRational.from_int(2 * ind.wiener)
        sz = QuarterRational.from_int(ind.szeged)
        lines = [
            f"input: {self.input_name}",
            f"n={self.n} m={self.m} cactus={_b(self.cactus)} bipartite={_b(self.bipartite)}",
            "blocks: " + (_kind_summary(self.block_kinds) or "(none)"),
            f"W={ind.wiener} Sz={ind.szeged} Sz*={ind.revised_szeged.decimal_str()}",
            f"2W==Sz: {_b(sz == two_w)} 2W==Sz*: {_b(ind.revised_szeged == two_w)}",
        ]
        if ind.cross_checked:
            lines.append(
                f"cross-checks: Sz(vertex sum)={ind.szeged_vertex_sum} "
                f"Sz*(vertex sum)={ind.revised_szeged_vertex_sum.decimal_str()} "
                f"Sz*-Sz={ind.difference_edge_form.decimal_str()}"
            )
        for v in self.verdicts:
            lines.append(_verdict_line(v))
        lines.append(f"elapsed: {self.elapsed_ms:.1f} ms")
        return "\n".join(lines)


def _b(flag: bool) -> str:
    return "true" if flag else "false"


def _kind_summary(kinds: Sequence[str]) -> str:
    counts: dict[str, int] = {}
    for k in kinds:
        counts[k] = counts.get(k, 0) + 1
    parts = []
    for k in dict.fromkeys(kinds):
        c = counts[k]
        parts.append(k if c == 1 else f"{k} x{c}")
    return " ".join(parts)


def _verdict_line(v: TheoremVerdict) -> str:
    line = (
        f"check {v.claim.value}: {v.status.value} "
        f"(lhs={v.lhs.decimal_str()} rhs={v.rhs.decimal_str()} "
        f"predicted_equality={_b(v.predicted_equality)})"
    )
    if v.witness:
        line += f" witness: {v.witness}"
    return line


def _graph_verdicts(g: Graph, dm: DistanceMatrix,
                    decomp: BlockDecomposition) -> list[TheoremVerdict]:
    """The full per-graph check pipeline used by verify sweeps."""
    verdicts = [
        check_classical_chain(g, dm, decomp),
        check_sz_vs_2w(g, dm, decomp),
        check_revised_sz_vs_2w(g, dm, decomp),
        check_distance_partition(g, dm, decomp),
    ]
    if g.n <= CROSS_CHECK_DEFAULT_MAX_N:
        verdicts.append(check_vertex_sum_identity(g, dm))
        verdicts.append(check_difference_identity(g, dm))
    return verdicts


def _check_one(name: str, g: Graph) -> dict:
    dm = all_pairs_distances(g)
    decomp = block_decomposition(g)
    verdicts = _graph_verdicts(g, dm, decomp)
    return {
        "id": name,
        "n": g.n,
        "m": g.m,
        "is_cactus": is_cactus(g, decomp),
        "is_bipartite": is_bipartite(g),
        "verdicts": [v.to_json_dict() for v in verdicts],
    }


def _map_ordered(fn: Callable, items: Sequence, threads: int) -> list:
    """Apply fn to items, preserving order; identical output for any
    thread count because each item is an independent pure computation."""
    if threads <= 1:
        return [fn(*item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(lambda item: fn(*item), items))


def _summarize(records: Iterable[dict]) -> dict:
    summary = {
        "graphs": 0,
        "verdicts": 0,
        "violated": 0,
        "holds_strict": 0,
        "holds_with_equality": 0,
        "not_applicable": 0,
    }
    for rec in records:
        summary["graphs"] += 1
        for v in rec["verdicts"]:
            summary["verdicts"] += 1
            summary[v["status"]] += 1
    return summary


def _parse_range(text: str) -> tuple[int, int]:
    """Inclusive 'A..B' range."""
    try:
        lo_s, hi_s = text.split("..", 1)
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'A..B', got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def _cactus_params(args: argparse.Namespace, seed: int) -> CactusParams:
    return CactusParams(
        block_count=args.blocks,
        cycle_length_range=args.cycle_len,
        edge_block_probability=args.edge_prob,
        parity=Parity(args.parity),
        seed=seed,
    )


def _emit(payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text)


def cmd_compute(args: argparse.Namespace) -> int:
    try:
        text = Path(args.file).read_text(encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot read {args.file}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    start = time.perf_counter()
    try:
        g = parse_edge_list(text, require_connected=True)
        dm = all_pairs_distances(g)
        decomp = block_decomposition(g)
        cross = args.verify or g.n <= CROSS_CHECK_DEFAULT_MAX_N
        indices = index_report(g, dm, cross_check=cross)
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    verdicts: tuple[TheoremVerdict, ...] = ()
    if args.verify:
        verdicts = tuple(_graph_verdicts(g, dm, decomp))
    elapsed_ms = (time.perf_counter() - start) * 1000.0
    labels = g.labels if g.labels != tuple(range(g.n)) else None
    report = RunReport(
        input_name=args.file,
        n=g.n,
        m=g.m,
        cactus=is_cactus(g, decomp),
        bipartite=is_bipartite(g),
        block_kinds=tuple(str(b.kind) for b in decomp.blocks),
        indices=indices,
        verdicts=verdicts,
        original_labels=labels,
        elapsed_ms=elapsed_ms,
    )
    _emit(report.to_json_dict(), report.to_text(), args.json)
    violated = any(v.status is Status.VIOLATED for v in verdicts)
    return EXIT_VIOLATION if violated else EXIT_OK


def _verify_paper_records() -> tuple[list[dict], list[dict]]:
    """Check records for the two named example graphs plus the reproduction
    facts their captions promise."""
    fig2, fig3 = paper_fig2(), paper_fig3()
    records = [_check_one("fig2", fig2), _check_one("fig3", fig3)]

    facts = []
    dm2 = all_pairs_distances(fig2)
    rep2 = index_report(fig2, dm2)
    f2 = equality_facts(fig2, dm2)
    facts.append(_fact("fig2 W == 96", rep2.wiener == 96, f"W={rep2.wiener}"))
    facts.append(_fact("fig2 Sz == 192", rep2.szeged == 192, f"Sz={rep2.szeged}"))
    facts.append(_fact("fig2 bipartite", is_bipartite(fig2)))
    facts.append(_fact("fig2 not a cactus", not f2.is_cactus))
    facts.append(_fact(
        "fig2 flagged: Sz == 2W outside the even-cycle characterization",
        f2.unexplained_szeged_equality,
    ))

    dm3 = all_pairs_distances(fig3)
    rep3 = index_report(fig3, dm3)
    f3 = equality_facts(fig3, dm3)
    facts.append(_fact("fig3 W == 1818", rep3.wiener == 1818, f"W={rep3.wiener}"))
    facts.append(_fact(
        "fig3 Sz* == 3636",
        rep3.revised_szeged == QuarterRational.from_int(3636),
        f"Sz*={rep3.revised_szeged.fraction_str()}",
    ))
    facts.append(_fact("fig3 is a cactus", f3.is_cactus))
    facts.append(_fact("fig3 has a non-cycle block", not f3.all_blocks_cycles))
    facts.append(_fact(
        "fig3 flagged: Sz* == 2W outside the even-cycle characterization",
        f3.unexplained_revised_equality,
    ))
    return records, facts


def _fact(name: str, ok: bool, detail: str = "") -> dict:
    return {"name": name, "ok": ok, "detail": detail}


def _load_graph_files(spec: str) -> list[tuple[str, Graph]]:
    p = Path(spec)
    if p.is_dir():
        files = sorted(p.glob("*.edges"))
        if not files:
            raise GraphError(f"no .edges files in {spec}")
    elif p.is_file():
        files = [p]
    else:
        raise GraphError(f"no such file or directory: {spec}")
    out = []
    for f in files:
        g = parse_edge_list(f.read_text(encoding="utf-8"), require_connected=True)
        out.append((f.name, g))
    return out


def cmd_verify(args: argparse.Namespace) -> int:
    selected = [
        bool(args.paper),
        args.family is not None,
        args.gen is not None,
        args.path is not None,
    ]
    if sum(selected) != 1:
        print(
            "error: choose exactly one of --paper, --family, --gen, or a path",
            file=sys.stderr,
        )
        return EXIT_INPUT_ERROR

    facts: list[dict] = []
    try:
        if args.paper:
            mode = "paper"
            spec: dict[str, object] = {}
            records, facts = _verify_paper_records()
        elif args.family is not None:
            if args.family != "cycles":
                print(f"error: unknown family {args.family!r}", file=sys.stderr)
                return EXIT_INPUT_ERROR
            lo, hi = args.n
            if lo < 3:
                print("error: cycle family needs --n with A >= 3", file=sys.stderr)
                return EXIT_INPUT_ERROR
            mode = "cycle-family"
            spec = {"n_range": f"{lo}..{hi}"}
            sizes = list(range(lo, hi + 1))
            verdicts = _map_ordered(
                lambda k: check_cycle_dis_lemma(k), [(k,) for k in sizes], args.threads
            )
            records = [
                {"id": f"C{k}", "n": k, "m": k, "verdicts": [v.to_json_dict()]}
                for k, v in zip(sizes, verdicts)
            ]
        elif args.gen is not None:
            if args.gen != "cactus":
                print(f"error: unknown generator {args.gen!r}", file=sys.stderr)
                return EXIT_INPUT_ERROR
            mode = "generated-cactus"
            base = _cactus_params(args, args.seed)
            spec = {
                "blocks": base.block_count,
                "cycle_len": f"{base.cycle_length_range[0]}..{base.cycle_length_range[1]}",
                "edge_prob": str(base.edge_block_probability),
                "parity": base.parity.value,
                "seed": args.seed,
                "count": args.count,
            }
            graphs = [
                (f"cactus-{i:04d}", random_cactus(_cactus_params(args, args.seed + i)))
                for i in range(args.count)
            ]
            records = _map_ordered(_check_one, graphs, args.threads)
        else:
            mode = "files"
            spec = {"path": args.path}
            graphs = _load_graph_files(args.path)
            records = _map_ordered(_check_one, graphs, args.threads)
    except (GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    summary = _summarize(records)
    failed_facts = [f for f in facts if not f["ok"]]
    payload: dict[str, object] = {"mode": mode, "spec": spec, "graphs": records,
                                  "summary": summary}
    if facts:
        payload["reproduction"] = facts

    lines = []
    for f in facts:
        mark = "ok" if f["ok"] else "FAIL"
        detail = f" ({f['detail']})" if f["detail"] else ""
        lines.append(f"[{mark}] {f['name']}{detail}")
    for rec in records:
        bad = [v for v in rec["verdicts"] if v["status"] == "violated"]
        for v in bad:
            lines.append(f"VIOLATED {rec['id']} {v['claim']}: {v['witness']}")
    lines.append(
        "checked {graphs} graphs, {verdicts} verdicts: "
        "{violated} violated, {holds_strict} strict, "
        "{holds_with_equality} equality, {not_applicable} not applicable".format(**summary)
    )
    ok = summary["violated"] == 0 and not failed_facts
    lines.append("OK" if ok else "FAILED")
    _emit(payload, "\n".join(lines), args.json)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_gen(args: argparse.Namespace) -> int:
    if (args.named is None) == (not args.cactus):
        print("error: choose exactly one of --named or --cactus", file=sys.stderr)
        return EXIT_INPUT_ERROR
    out_dir = Path(args.out)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        entries = []
        if args.named is not None:
            builders = {"fig2": paper_fig2, "fig3": paper_fig3}
            if args.named not in builders:
                print(f"error: unknown named graph {args.named!r}", file=sys.stderr)
                return EXIT_INPUT_ERROR
            g = builders[args.named]()
            fname = f"{args.named}.edges"
            (out_dir / fname).write_text(serialize_edge_list(g), encoding="utf-8")
            entries.append({"file": fname, "name": args.named, "n": g.n, "m": g.m})
            manifest: dict[str, object] = {"kind": "named", "graphs": entries}
        else:
            base = _cactus_params(args, args.seed)
            for i in range(args.count):
                g = random_cactus(_cactus_params(args, args.seed + i))
                fname = f"cactus-{i:04d}.edges"
                (out_dir / fname).write_text(serialize_edge_list(g), encoding="utf-8")
                entries.append(
                    {"file": fname, "seed": args.seed + i, "n": g.n, "m": g.m}
                )
            manifest = {
                "kind": "cactus",
                "params": {
                    "blocks": base.block_count,
                    "cycle_len": f"{base.cycle_length_range[0]}..{base.cycle_length_range[1]}",
                    "edge_prob": str(base.edge_block_probability),
                    "parity": base.parity.value,
                    "seed": args.seed,
                    "count": args.count,
                },
                "graphs": entries,
            }
        (out_dir / "manifest.json").write_text(
            json.dumps(manifest, sort_keys=True, indent=2) + "\n", encoding="utf-8"
        )
    except (GraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(f"wrote {len(entries)} graph(s) and manifest.json to {out_dir}")
    return EXIT_OK


def _add_cactus_options(p: argparse.ArgumentParser, default_count: int) -> None:
    p.add_argument("--blocks", type=int, default=8, help="blocks per cactus")
    p.add_argument("--cycle-len", type=_parse_range, default=(3, 8),
                   metavar="A..B", help="inclusive cycle length range")
    p.add_argument("--edge-prob", type=_parse_fraction, default=Fraction(1, 2),
                   metavar="P", help="probability a block is a pendant edge (exact fraction)")
    p.add_argument("--parity", choices=["any", "even", "odd"], default="any",
                   help="restrict cycle lengths to one parity")
    p.add_argument("--seed", type=int, default=0, help="base seed; graph i uses seed+i")
    p.add_argument("--count", type=int, default=default_count, help="number of graphs")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cactusindex",
        description="Exact Wiener / Szeged / revised Szeged indices and claim checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute indices of an edge-list file")
    p_compute.add_argument("file")
    p_compute.add_argument("--verify", action="store_true",
                           help="also run cross-checks and claim verdicts")
    p_compute.add_argument("--json", action="store_true")
    p_compute.set_defaults(func=cmd_compute)

    p_verify = sub.add_parser("verify", help="run claim checks over graphs")
    p_verify.add_argument("path", nargs="?", help="edge-list file or directory")
    p_verify.add_argument("--paper", action="store_true",
                          help="check the two named example graphs")
    p_verify.add_argument("--family", choices=["cycles"],
                          help="check a parametric family")
    p_verify.add_argument("--n", type=_parse_range, metavar="A..B",
                          help="size range for --family")
    p_verify.add_argument("--gen", choices=["cactus"],
                          help="check a generated random corpus")
    _add_cactus_options(p_verify, default_count=100)
    p_verify.add_argument("--json", action="store_true")
    p_verify.add_argument("--threads", type=int, default=1,
                          help="parallel width; output is identical for any value")
    p_verify.set_defaults(func=cmd_verify)

    p_gen = sub.add_parser("gen", help="write edge-list files and a manifest")
    p_gen.add_argument("--named", choices=["fig2", "fig3"])
    p_gen.add_argument("--cactus", action="store_true")
    _add_cactus_options(p_gen, default_count=1)
    p_gen.add_argument("--out", required=True, help="output directory")
    p_gen.set_defaults(func=cmd_gen)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
