"""Command-line interface.

One command is one process; results are emitted as JSON or CSV documents
with a metadata block, written atomically when an output path is given.
Exit codes: 2 for configuration errors, 3 for data errors, 4 for numerical
failures.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass

import numpy as np

from . import __version__
from .classical import relaxation_trace, stationary
from .community import (
    DEFAULT_MARGINAL_BAND,
    detect,
    margin_report,
    sweep,
)
from .evolution import (
    DEFAULT_AVERAGE_STEPS,
    _initial_batch,
    _node_probability_raw,
    finite_time_average,
    finite_time_average_matrix,
)
from .graph import Graph, GraphError, betti_number, builtin, is_bipartite, load_edge_list, load_pajek
from .io import OutputDocument, emit_heatmap_csv, format_float, write_atomic
from .operators import CoinKind, DenseCapExceeded, build_walk_operator, materialize_dense
from .spectral import (
    DEFAULT_DEGENERACY_TOL,
    SpectralError,
    argument_histogram,
    decompose,
    degeneracy_report,
    infinite_time_average_matrix,
    ipr,
)

__all__ = ["RunConfig", "ConfigError", "run", "main"]

# graphs above this arc dimension default to finite-time averaging
LARGE_GRAPH_ARCS = 2000

EXIT_CONFIG = 2
EXIT_DATA = 3
EXIT_NUMERICAL = 4


class ConfigError(ValueError):
    """Invalid run configuration."""


@dataclass
class RunConfig:
    command: str
    graph_source: str
    coin: str = "fourier"
    mode: str | None = None
    start: int | None = None
    slot: int | None = None
    steps: int = DEFAULT_AVERAGE_STEPS
    threshold: str = "auto"
    q_list: tuple[float, ...] = ()
    bins: int = 20
    include_start: bool = False
    marginal_band: float = DEFAULT_MARGINAL_BAND
    output: str | None = None
    format: str = "json"
    dense_cap: int | None = None
    degeneracy_tol: float = DEFAULT_DEGENERACY_TOL


def _load_graph(source: str) -> Graph:
    kind, sep, rest = source.partition(":")
    if not sep:
        kind, rest = "builtin", source
    if kind == "builtin":
        return builtin(rest)
    if kind in ("edgelist", "pajek"):
        try:
            with open(rest, encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            raise GraphError(f"cannot read {rest}: {exc}") from exc
        return load_edge_list(text) if kind == "edgelist" else load_pajek(text)
    raise ConfigError(
        f"unknown graph source {source!r}; use builtin:NAME, edgelist:PATH or pajek:PATH"
    )


def _coin_kind(name: str) -> CoinKind:
    try:
        return CoinKind(name.lower())
    except ValueError:
        raise ConfigError(f"unknown coin {name!r}; choose fourier or grover") from None


def _resolve_mode(config: RunConfig, graph: Graph) -> str:
    mode = config.mode
    if mode is None:
        return (
            "average-infinite" if graph.arc_count <= LARGE_GRAPH_ARCS else "average-finite"
        )
    mode = {"finite": "average-finite", "infinite": "average-infinite"}.get(mode, mode)
    if mode not in ("average-finite", "average-infinite"):
        raise ConfigError(f"unknown averaging mode {config.mode!r}")
    return mode


def _average_matrices(config: RunConfig, graph: Graph, op) -> tuple[str, np.ndarray, np.ndarray]:
    mode = _resolve_mode(config, graph)
    if mode == "average-infinite":
        dense = materialize_dense(op, cap=config.dense_cap)
        dec = decompose(dense, degeneracy_tol=config.degeneracy_tol)
        p, norm = infinite_time_average_matrix(dec, graph)
    else:
        p, norm = finite_time_average_matrix(
            op, steps=config.steps, include_start=config.include_start
        )
    return mode, p, norm


def _threshold(config: RunConfig, graph: Graph) -> float:
    if config.threshold == "auto":
        return 1.0 / graph.arc_count
    try:
        q = float(config.threshold)
    except ValueError:
        raise ConfigError(f"threshold must be a number or 'auto', got {config.threshold!r}") from None
    if q <= 0:
        raise ConfigError("threshold must be positive")
    return q


def _metadata(config: RunConfig, graph: Graph, **extra) -> dict:
    meta = {
        "tool": "arcwalk",
        "version": __version__,
        "command": config.command,
        "graph": {
            "source": config.graph_source,
            "nodes": graph.node_count,
            "arcs": graph.arc_count,
            "betti": betti_number(graph),
            "bipartite": is_bipartite(graph),
        },
        "coin": config.coin,
    }
    meta.update(extra)
    return meta


def _node_ids(graph: Graph) -> list[int]:
    return list(range(1, graph.node_count + 1))


def _run_evolve(config: RunConfig, graph: Graph) -> OutputDocument:
    if config.start is None:
        raise ConfigError("evolve requires --start")
    op = build_walk_operator(graph, _coin_kind(config.coin))
    batch = _initial_batch(graph, config.start)
    if config.slot is not None:
        if not 0 <= config.slot < batch.shape[0]:
            raise ConfigError(f"slot {config.slot} out of range for node {config.start}")
        batch = batch[config.slot : config.slot + 1]
    rows = []
    for t in range(config.steps + 1):
        if t > 0:
            batch = op.apply_amplitudes(batch)
        p = _node_probability_raw(graph, batch).mean(axis=0)
        rows.append({"t": t, "probability": p, "normalized": p / graph.degrees})
    payload = {"start": config.start, "rows": rows}
    meta = _metadata(config, graph, parameters={"start": config.start, "steps": config.steps})
    return OutputDocument(meta, payload)


def _run_average(config: RunConfig, graph: Graph) -> OutputDocument:
    op = build_walk_operator(graph, _coin_kind(config.coin))
    mode, p, norm = _average_matrices(config, graph, op)
    params = {"mode": mode}
    if mode == "average-finite":
        params["steps"] = config.steps
        params["window_start"] = 0 if config.include_start else 1
    if config.start is not None:
        payload = {
            "start": config.start,
            "probability": p[config.start - 1],
            "normalized": norm[config.start - 1],
        }
    else:
        payload = {"node_ids": _node_ids(graph), "probability": p, "normalized": norm}
    return OutputDocument(_metadata(config, graph, parameters=params), payload)


def _run_spectrum(config: RunConfig, graph: Graph) -> OutputDocument:
    op = build_walk_operator(graph, _coin_kind(config.coin))
    dense = materialize_dense(op, cap=config.dense_cap)
    dec = decompose(dense, degeneracy_tol=config.degeneracy_tol)
    report = degeneracy_report(dec, graph)
    counts, edges = argument_histogram(dec, config.bins)
    payload = {
        "eigenvalues": [complex(v) for v in dec.eigenvalues],
        "degeneracy": {
            "groups": [
                {"eigenvalue": rep, "multiplicity": mult} for rep, mult in report.entries
            ],
            "plus_one": report.plus_one,
            "minus_one": report.minus_one,
            "predicted_plus_one": report.predicted_plus_one,
            "predicted_minus_one": report.predicted_minus_one,
        },
        "histogram": {"counts": counts, "bin_edges": edges},
        "ipr": ipr(dec, graph),
    }
    meta = _metadata(
        config, graph, parameters={"bins": config.bins, "degeneracy_tol": config.degeneracy_tol}
    )
    return OutputDocument(meta, payload)


def _run_detect(config: RunConfig, graph: Graph) -> OutputDocument:
    op = build_walk_operator(graph, _coin_kind(config.coin))
    mode, _, norm = _average_matrices(config, graph, op)
    q = _threshold(config, graph)
    partition = detect(norm, graph, q, source=mode)
    margins = margin_report(norm, partition, band=config.marginal_band)
    payload = {
        "threshold": q,
        "hubs": list(partition.hubs),
        "communities": [
            {"hub": hub, "members": list(partition.members(idx))}
            for idx, hub in enumerate(partition.hubs)
        ],
        "assignment": {str(node): c for node, c in sorted(partition.assignment.items())},
        "margins": [
            {"node": m.node, "hub": m.hub, "margin": m.margin, "marginal": m.marginal}
            for m in margins
        ],
    }
    meta = _metadata(
        config,
        graph,
        parameters={"mode": mode, "threshold": q, "marginal_band": config.marginal_band},
    )
    return OutputDocument(meta, payload)


def _run_sweep(config: RunConfig, graph: Graph) -> OutputDocument:
    if not config.q_list:
        raise ConfigError("sweep requires --q-list")
    op = build_walk_operator(graph, _coin_kind(config.coin))
    mode, _, norm = _average_matrices(config, graph, op)
    result = sweep(norm, graph, config.q_list, source=mode)
    payload = {
        "entries": [
            {"q": q, "count": count, "sizes": list(sizes)}
            for q, count, sizes in result.entries
        ]
    }
    meta = _metadata(config, graph, parameters={"mode": mode, "q_list": list(config.q_list)})
    return OutputDocument(meta, payload)


def _run_classical(config: RunConfig, graph: Graph) -> OutputDocument:
    if config.start is None:
        raise ConfigError("classical requires --start")
    trace, tv = relaxation_trace(graph, config.start, config.steps)
    flat = stationary(graph)
    payload = {
        "start": config.start,
        "stationary": flat.probabilities,
        "normalized_stationary": flat.probabilities / graph.degrees,
        "trace": [
            {"t": d.time, "probability": d.probabilities, "tv_to_stationary": float(v)}
            for d, v in zip(trace, tv)
        ],
    }
    meta = _metadata(config, graph, parameters={"start": config.start, "steps": config.steps})
    return OutputDocument(meta, payload)


_RUNNERS = {
    "evolve": _run_evolve,
    "average": _run_average,
    "spectrum": _run_spectrum,
    "detect": _run_detect,
    "sweep": _run_sweep,
    "classical": _run_classical,
}


def run(config: RunConfig) -> OutputDocument:
    """Dispatch one configured analysis and return its output document."""
    if config.command not in _RUNNERS:
        raise ConfigError(f"unknown command {config.command!r}")
    if config.format not in ("json", "csv"):
        raise ConfigError(f"unknown output format {config.format!r}")
    if config.steps < 0:
        raise ConfigError("steps must be non-negative")
    graph = _load_graph(config.graph_source)
    return _RUNNERS[config.command](config, graph)


def _csv_evolve(doc: OutputDocument) -> list[str]:
    n = doc.metadata["graph"]["nodes"]
    header = "t,kind," + ",".join(str(i) for i in range(1, n + 1))
    lines = [header]
    for row in doc.payload["rows"]:
        for kind in ("probability", "normalized"):
            values = ",".join(format_float(v) for v in row[kind])
            lines.append(f"{row['t']},{kind},{values}")
    return lines


def _csv_average(doc: OutputDocument) -> list[str]:
    n = doc.metadata["graph"]["nodes"]
    ids = list(range(1, n + 1))
    if "start" in doc.payload:
        matrix = np.asarray(doc.payload["normalized"])[None, :]
        return emit_heatmap_csv(matrix, [doc.payload["start"]], ids).splitlines()
    return emit_heatmap_csv(np.asarray(doc.payload["normalized"]), ids).splitlines()


def _csv_spectrum(doc: OutputDocument) -> list[str]:
    lines = ["mu,re,im"]
    for mu, v in enumerate(doc.payload["eigenvalues"]):
        lines.append(f"{mu},{format_float(v.real)},{format_float(v.imag)}")
    return lines


def _csv_detect(doc: OutputDocument) -> list[str]:
    lines = ["node,community,hub,margin,marginal"]
    flagged = {(m["node"], m["hub"]): m for m in doc.payload["margins"]}
    for node, comm in sorted(doc.payload["assignment"].items(), key=lambda kv: int(kv[0])):
        hub = doc.payload["hubs"][comm]
        entry = flagged[(int(node), hub)]
        lines.append(
            f"{node},{comm},{hub},{format_float(entry['margin'])},{entry['marginal']}"
        )
    return lines


def _csv_sweep(doc: OutputDocument) -> list[str]:
    lines = ["q,count,sizes"]
    for entry in doc.payload["entries"]:
        sizes = ";".join(str(s) for s in entry["sizes"])
        lines.append(f"{format_float(entry['q'])},{entry['count']},{sizes}")
    return lines


def _csv_classical(doc: OutputDocument) -> list[str]:
    n = doc.metadata["graph"]["nodes"]
    header = "t,tv," + ",".join(str(i) for i in range(1, n + 1))
    lines = [header]
    for row in doc.payload["trace"]:
        values = ",".join(format_float(v) for v in row["probability"])
        lines.append(f"{row['t']},{format_float(row['tv_to_stationary'])},{values}")
    return lines


_CSV_RENDERERS = {
    "evolve": _csv_evolve,
    "average": _csv_average,
    "spectrum": _csv_spectrum,
    "detect": _csv_detect,
    "sweep": _csv_sweep,
    "classical": _csv_classical,
}


def render(doc: OutputDocument, fmt: str) -> str:
    if fmt == "json":
        return doc.to_json()
    command = doc.metadata["command"]
    lines = doc.metadata_comment_lines() + _CSV_RENDERERS[command](doc)
    return "\n".join(lines) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arcwalk",
        description="Coined discrete-time quantum walks and walk-based community detection.",
    )
    parser.add_argument("--version", action="version", version=f"arcwalk {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--graph", required=True, help="builtin:NAME | edgelist:PATH | pajek:PATH")
        p.add_argument("--coin", default="fourier", choices=["fourier", "grover"])
        p.add_argument("--output", default=None, help="output path (default: stdout)")
        p.add_argument("--format", default="json", choices=["json", "csv"])
        p.add_argument("--dense-cap", type=int, default=None)
        p.add_argument("--deg-tol", type=float, default=DEFAULT_DEGENERACY_TOL)

    def averaging(p: argparse.ArgumentParser) -> None:
        p.add_argument(
            "--mode",
            default=None,
            choices=["average-finite", "average-infinite", "finite", "infinite"],
            help="averaging mode (default: infinite for D <= 2000, else finite)",
        )
        p.add_argument("--steps", type=int, default=DEFAULT_AVERAGE_STEPS)
        p.add_argument("--include-t0", action="store_true")

    p = sub.add_parser("evolve", help="time evolution of a transition row")
    common(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--slot", type=int, default=None)
    p.add_argument("--steps", type=int, default=15)

    p = sub.add_parser("average", help="time-averaged transition probabilities")
    common(p)
    averaging(p)
    p.add_argument("--start", type=int, default=None)

    p = sub.add_parser("spectrum", help="eigenvalues, degeneracy report, IPR")
    common(p)
    p.add_argument("--bins", type=int, default=20)

    p = sub.add_parser("detect", help="threshold community detection")
    common(p)
    averaging(p)
    p.add_argument("--threshold", default="auto")
    p.add_argument("--marginal-band", type=float, default=DEFAULT_MARGINAL_BAND)

    p = sub.add_parser("sweep", help="community counts over a threshold list")
    common(p)
    averaging(p)
    p.add_argument("--q-list", required=True, help="comma-separated ascending thresholds")

    p = sub.add_parser("classical", help="classical random-walk baseline")
    common(p)
    p.add_argument("--start", type=int, required=True)
    p.add_argument("--steps", type=int, default=DEFAULT_AVERAGE_STEPS)
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    q_list: tuple[float, ...] = ()
    if getattr(args, "q_list", None):
        try:
            q_list = tuple(float(v) for v in args.q_list.split(","))
        except ValueError:
            raise ConfigError(f"--q-list must be comma-separated numbers, got {args.q_list!r}")
    return RunConfig(
        command=args.command,
        graph_source=args.graph,
        coin=args.coin,
        mode=getattr(args, "mode", None),
        start=getattr(args, "start", None),
        slot=getattr(args, "slot", None),
        steps=getattr(args, "steps", DEFAULT_AVERAGE_STEPS),
        threshold=getattr(args, "threshold", "auto"),
        q_list=q_list,
        bins=getattr(args, "bins", 20),
        include_start=getattr(args, "include_t0", False),
        marginal_band=getattr(args, "marginal_band", DEFAULT_MARGINAL_BAND),
        output=args.output,
        format=args.format,
        dense_cap=args.dense_cap,
        degeneracy_tol=args.deg_tol,
    )


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
        doc = run(config)
        text = render(doc, config.format)
    except GraphError as exc:
        print(f"arcwalk: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except SpectralError as exc:
        print(f"arcwalk: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, DenseCapExceeded, ValueError) as exc:
        print(f"arcwalk: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if config.output:
        write_atomic(config.output, text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
