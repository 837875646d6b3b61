"""Command-line front door.

Every capability is exposed as a subcommand with deterministic output:
human-readable by default, a single JSON document with a schema_version
field under --format json.  Long searches report progress on stderr
only.  Exit status 0 means success, 1 a negative decision (not
colorable, no path, representation unknown), 2 a usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from . import analysis, coloring, extension, graph

SCHEMA_VERSION = 1

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2


@dataclass
class CommandConfig:
    """Validated invocation: the subcommand plus its parameters and the
    chosen output format."""

    subcommand: str
    fmt: str
    threads: int
    params: dict


def _positive(name: str, value: int) -> int:
    if value < 1:
        raise ValueError(f"--{name} must be positive, got {value}")
    return value


def _emit(cfg: CommandConfig, doc: dict, human_lines: list[str]) -> None:
    if cfg.fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": cfg.subcommand, **doc}
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        for line in human_lines:
            print(line)


def _load_source_graph(cfg: CommandConfig) -> tuple[graph.DiophGraph, list[int] | None]:
    """Build the working graph from --graph-file, --witness-file or --N.
    Returns the graph and, for witness files, the listed vertex order
    (used as the default branch order)."""
    p = cfg.params
    shift = p.get("shift") or 1
    if p.get("graph_file"):
        return graph.load_graph_file(p["graph_file"]), None
    if p.get("witness_file"):
        values = graph.load_witness_file(p["witness_file"])
        return graph.build_set(values, shift), values
    if p.get("N") is not None:
        return graph.build_range(_positive("N", p["N"]), shift, workers=cfg.threads), None
    raise ValueError("one of --graph-file, --witness-file or --N is required")


def _add_source_args(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--graph-file", help="graph document produced by `build`")
    sub.add_argument("--witness-file", help="witness file, one integer per line")
    sub.add_argument("--N", type=int, help="build the range graph on {1..N}")
    sub.add_argument("--shift", type=int, default=1, help="edge relation constant (default 1)")


def _cmd_build(cfg: CommandConfig) -> int:
    G, _ = _load_source_graph(cfg)
    out = cfg.params.get("out")
    if out:
        graph.save_graph_file(G, out)
    edges_out = cfg.params.get("edge_list_out")
    if edges_out:
        graph.write_edge_list(G, edges_out)
    doc = graph.graph_to_doc(G)
    if out:
        _emit(cfg, {"n": G.n, "e": G.edge_count, "shift": G.shift, "out": out},
              [f"wrote {out}: n={G.n} e={G.edge_count} shift={G.shift}"])
    else:
        _emit(cfg, doc, [f"n={G.n} e={G.edge_count} shift={G.shift}"])
    return EXIT_OK


def _cmd_stats(cfg: CommandConfig) -> int:
    G, _ = _load_source_graph(cfg)
    st = graph.stats(G)
    doc = {
        "n": st.n,
        "e": st.e,
        "density": [st.density.numerator, st.density.denominator],
        "degree_histogram": {str(k): v for k, v in st.degree_histogram.items()},
        "clique_number": st.clique_number,
        "components": st.components,
    }
    _emit(cfg, doc, [
        f"n={st.n}",
        f"e={st.e}",
        f"density={st.density}",
        f"clique_number={st.clique_number}",
        f"components={st.components}",
    ])
    return EXIT_OK


def _cmd_color(cfg: CommandConfig) -> int:
    G, order = _load_source_graph(cfg)
    k = _positive("k", cfg.params["k"])
    t0 = time.perf_counter()
    res = coloring.k_colorable(G, k, branch_order=order)
    # wall time stays on the diagnostic stream so the data stream is
    # byte-identical across runs
    print(f"decided in {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    doc = {
        "k": k,
        "colorable": res.colorable,
        "assignment": (
            {str(v): c for v, c in sorted(res.assignment.items())}
            if res.assignment is not None
            else None
        ),
        "stats": {
            "branches": res.stats.branches,
            "peak_open": res.stats.peak_open,
            "propagation_steps": res.stats.propagation_steps,
        },
    }
    human = [f"{k}-colorable: {'yes' if res.colorable else 'no'}"]
    witness_out = cfg.params.get("coloring_out")
    if res.colorable and witness_out:
        with open(witness_out, "w", encoding="utf-8") as fh:
            for v, c in sorted(res.assignment.items()):
                fh.write(f"{v} {c}\n")
        human.append(f"wrote coloring to {witness_out}")
    _emit(cfg, doc, human)
    return EXIT_OK if res.colorable else EXIT_NEGATIVE


def _cmd_chroma(cfg: CommandConfig) -> int:
    G, _ = _load_source_graph(cfg)
    chi = coloring.chromatic_number(G)
    _emit(cfg, {"chromatic_number": chi}, [str(chi)])
    return EXIT_OK


def _cmd_minimal(cfg: CommandConfig) -> int:
    G, order = _load_source_graph(cfg)
    k = _positive("k", cfg.params["k"])
    t0 = time.perf_counter()
    report = coloring.minimality_check(G, k, branch_order=order)
    print(
        f"checked {G.n} deletions in {time.perf_counter() - t0:.3f}s",
        file=sys.stderr,
    )
    doc = {
        "k": k,
        "removable": list(report.removable),
        "minimal": report.minimal,
    }
    _emit(cfg, doc, [
        f"removable: {len(report.removable)} of {G.n}",
        f"minimal: {'yes' if report.minimal else 'no'}",
    ])
    return EXIT_OK if report.minimal else EXIT_NEGATIVE


def _cmd_extend(cfg: CommandConfig) -> int:
    p = cfg.params
    values = graph.load_witness_file(p["witness_file"])
    request = extension.ExtensionRequest(
        V=tuple(values),
        mode=p["mode"],
        count=_positive("count", p["count"]),
        i=p.get("i"),
        j=p.get("j"),
    )
    out = request.run()
    _emit(cfg, {"mode": p["mode"], "extensions": out}, [str(w) for w in out])
    return EXIT_OK


def _cmd_neighbors(cfg: CommandConfig) -> int:
    p = cfg.params
    values = [int(x) for x in p["set"].split(",") if x.strip()]
    if p.get("bound"):
        found = extension.common_neighbors_bounded(values, _positive("bound", p["bound"]))
        mode = "bounded"
    else:
        if len(values) != 2:
            raise ValueError("exact mode (no --bound) needs exactly two integers")
        found = extension.common_neighbors_equal_sqfree(values[0], values[1])
        mode = "exact"
    _emit(cfg, {"set": values, "mode": mode, "neighbors": found},
          [str(w) for w in found])
    return EXIT_OK


def _cmd_dplus(cfg: CommandConfig) -> int:
    a, b, c = (int(x) for x in cfg.params["triple"].split(","))
    triple = extension.RegularTriple.from_values(a, b, c)
    d_minus, d_plus = extension.regular_extensions(triple)
    _emit(cfg, {"triple": [a, b, c], "d_minus": d_minus, "d_plus": d_plus},
          [f"d-={d_minus}", f"d+={d_plus}"])
    return EXIT_OK


def _cmd_prune(cfg: CommandConfig) -> int:
    G, _ = _load_source_graph(cfg)
    pruned, trace = analysis.prune_low_degree(G)
    if cfg.params.get("out"):
        graph.save_graph_file(pruned, cfg.params["out"])
    doc = {
        "initial": {"n": trace.initial.n, "e": trace.initial.e},
        "final": {"n": trace.final.n, "e": trace.final.e},
        "steps": [
            {
                "vertex": s.vertex,
                "degree": s.degree,
                "density_before": [s.density_before.numerator, s.density_before.denominator],
                "density_after": [s.density_after.numerator, s.density_after.denominator],
            }
            for s in trace.steps
        ],
    }
    _emit(cfg, doc, [
        f"removed {len(trace.steps)} vertices",
        f"n: {trace.initial.n} -> {trace.final.n}",
        f"e: {trace.initial.e} -> {trace.final.e}",
        f"density: {trace.initial.density} -> {trace.final.density}",
    ])
    return EXIT_OK


def _cmd_hamilton(cfg: CommandConfig) -> int:
    G, _ = _load_source_graph(cfg)
    if cfg.params["cycle"]:
        exists = analysis.hamiltonian_cycle_exists(G)
        _emit(cfg, {"kind": "cycle", "exists": exists},
              [f"hamiltonian cycle: {'yes' if exists else 'no'}"])
        return EXIT_OK if exists else EXIT_NEGATIVE
    res = analysis.hamiltonian_path_exists(G, cap=cfg.params["cap"])
    doc = {
        "kind": "path",
        "exists": res.exists,
        "method": res.method,
        "path": list(res.path) if res.path else None,
    }
    verdict = {True: "yes", False: "no", None: "unknown"}[res.exists]
    _emit(cfg, doc, [f"hamiltonian path: {verdict} ({res.method})"])
    return EXIT_OK if res.exists else EXIT_NEGATIVE


def _cmd_represent(cfg: CommandConfig) -> int:
    with open(cfg.params["graph_file"], encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        vertices = doc["vertices"]
        edges = [tuple(e) for e in doc["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed target document: {exc}") from None
    res = extension.represent_graph(
        vertices,
        edges,
        node_budget=cfg.params["budget"],
        pool_bound=cfg.params["pool"],
    )
    out_doc = {
        "status": res.status,
        "known_impossible": res.known_impossible,
        "witness": list(res.witness.values) if res.witness else None,
        "mapping": (
            {str(k): v for k, v in res.witness.mapping.items()} if res.witness else None
        ),
        "nodes_searched": res.nodes_searched,
    }
    human = [f"status: {res.status}"]
    if res.witness:
        human.append("witness: " + " ".join(str(v) for v in res.witness.values))
    if res.known_impossible:
        human.append("note: target contains K5, which no witness can realize")
    _emit(cfg, out_doc, human)
    return EXIT_OK if res.status == "found" else EXIT_NEGATIVE


def _cmd_rank(cfg: CommandConfig) -> int:
    N = _positive("N", cfg.params["N"])
    top = _positive("top", cfg.params["top"])
    ranked = analysis.heuristic_top(N, top)
    _emit(cfg, {"N": N, "top": ranked}, [str(a) for a in ranked])
    return EXIT_OK


def _cmd_omega(cfg: CommandConfig) -> int:
    x = _positive("x", cfg.params["x"])
    dist = analysis.omega_distribution(x, cfg.params.get("C"))
    doc = {"x": x, "counts": list(dist.counts)}
    human = [f"pi({x},{k}) = {c}" for k, c in enumerate(dist.counts)]
    if dist.C is not None:
        doc.update(
            {
                "C": dist.C,
                "tail_sum": dist.tail_sum,
                "bound_value": dist.bound_value,
                "within_bound": dist.within_bound,
            }
        )
        human.append(
            f"tail(k > {dist.C}*loglog x) = {dist.tail_sum}"
            f" <= {dist.bound_value:.1f}: {dist.within_bound}"
        )
    _emit(cfg, doc, human)
    return EXIT_OK


_HANDLERS = {
    "build": _cmd_build,
    "stats": _cmd_stats,
    "color": _cmd_color,
    "chroma": _cmd_chroma,
    "minimal": _cmd_minimal,
    "extend": _cmd_extend,
    "neighbors": _cmd_neighbors,
    "dplus": _cmd_dplus,
    "prune": _cmd_prune,
    "hamilton": _cmd_hamilton,
    "represent": _cmd_represent,
    "rank": _cmd_rank,
    "omega": _cmd_omega,
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="diograph",
        description="Build, extend, analyze and color Diophantine graphs.",
    )
    parser.add_argument("--format", choices=("human", "json"), default="human")
    parser.add_argument(
        "--threads",
        type=int,
        default=os.cpu_count() or 1,
        help="worker count for graph building (output is identical for any value)",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("build", help="build a graph and optionally write it out")
    _add_source_args(p)
    p.add_argument("--out", help="write the graph document here")
    p.add_argument("--edge-list-out", help="write an 'a b' edge list here")

    p = sub.add_parser("stats", help="vertex/edge counts, degrees, cliques, components")
    _add_source_args(p)

    p = sub.add_parser("color", help="decide k-colorability")
    _add_source_args(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--coloring-out", help="write 'vertex color' lines on success")

    p = sub.add_parser("chroma", help="chromatic number")
    _add_source_args(p)

    p = sub.add_parser("minimal", help="which single deletions make the graph k-colorable")
    _add_source_args(p)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("extend", help="attach new vertices to a witness set")
    p.add_argument("--witness-file", required=True)
    p.add_argument("--mode", choices=("isolated", "pendant", "double"), required=True)
    p.add_argument("--i", type=int, help="0-based index into the witness list")
    p.add_argument("--j", type=int, help="second index for double mode")
    p.add_argument("--count", type=int, default=1)

    p = sub.add_parser("neighbors", help="common neighbors of a set of integers")
    p.add_argument("--set", required=True, help="comma-separated integers")
    p.add_argument("--bound", type=int, help="search bound; omit for the exact pair solver")

    p = sub.add_parser("dplus", help="regular quadruple extensions of a triple")
    p.add_argument("--triple", required=True, help="comma-separated Diophantine triple")

    p = sub.add_parser("prune", help="remove low-degree vertices to raise density")
    _add_source_args(p)
    p.add_argument("--out", help="write the pruned graph document here")

    p = sub.add_parser("hamilton", help="Hamiltonian path/cycle analysis")
    _add_source_args(p)
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--path", action="store_true")
    mode.add_argument("--cycle", action="store_true")
    p.add_argument("--cap", type=int, default=40, help="exhaustive search size cap")

    p = sub.add_parser("represent", help="search a witness for a small abstract graph")
    p.add_argument("--graph-file", required=True)
    p.add_argument("--budget", type=int, default=2_000_000)
    p.add_argument("--pool", type=int, default=500)

    p = sub.add_parser("rank", help="top integers by the S(a)/sqrt(a) heuristic")
    p.add_argument("--top", type=int, required=True)
    p.add_argument("--N", type=int, default=1_000_000)

    p = sub.add_parser("omega", help="distribution of the number of prime factors")
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--C", type=float, help="tail-bound constant (> 1)")

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("format", "threads")}
    cfg = CommandConfig(
        subcommand=args.subcommand,
        fmt=args.format,
        threads=max(1, args.threads),
        params=params,
    )
    try:
        return _HANDLERS[args.subcommand](cfg)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
