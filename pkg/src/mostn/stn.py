"""Search trajectory networks: building, merging, attributing, and measuring.

A per-vector network has one node per visited hypercube location and one
directed edge per observed transition between distinct consecutive locations
(self-transitions are dropped; stagnation stays recoverable from the trace).
Merging unions node and edge sets across vectors and runs, summing weights;
a node is shared when more than one tracking vector visited it.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable, Sequence

import networkx as nx
import numpy as np
from scipy.spatial.distance import cdist

from .trace import LocationKey, RunTrace


@dataclass
class NodeAttrs:
    count: int = 0
    vectors: set[int] = field(default_factory=set)
    runs: set[int] = field(default_factory=set)
    is_start: bool = False
    is_end: bool = False
    is_optimal: bool = False
    objectives: list[tuple[float, ...]] = field(default_factory=list)


@dataclass
class StnGraph:
    """Directed weighted graph over hypercube locations."""

    precision: float
    nodes: dict[LocationKey, NodeAttrs] = field(default_factory=dict)
    edges: dict[tuple[LocationKey, LocationKey], int] = field(default_factory=dict)


@dataclass(frozen=True)
class StnMetrics:
    nodes: int
    edges: int
    edge_node_ratio: float
    shared_ratio: float
    optimal: int
    components: int
    max_in: int
    mean_in: float
    max_out: int
    mean_out: float


def is_shared(attrs: NodeAttrs) -> bool:
    return len(attrs.vectors) > 1


def build_vector_stn(trace: RunTrace, vector: int) -> StnGraph:
    """Network of one tracking vector's trajectory within one run."""
    records = [r for r in trace.records if r.vector == vector]
    if not records:
        raise ValueError(f"trace has no records for vector {vector}")
    g = StnGraph(precision=trace.precision)
    prev_loc: LocationKey | None = None
    for r in records:
        attrs = g.nodes.get(r.loc)
        if attrs is None:
            attrs = g.nodes[r.loc] = NodeAttrs()
        attrs.count += 1
        attrs.vectors.add(vector)
        attrs.runs.add(trace.run)
        if r.objectives not in attrs.objectives:
            attrs.objectives.append(r.objectives)
        if prev_loc is not None and prev_loc != r.loc:
            key = (prev_loc, r.loc)
            g.edges[key] = g.edges.get(key, 0) + 1
        prev_loc = r.loc
    g.nodes[records[0].loc].is_start = True
    g.nodes[records[-1].loc].is_end = True
    return g


def merge_stns(graphs: Sequence[StnGraph]) -> StnGraph:
    """Graph union: node/edge sets united, weights and counts summed,
    vector/run sets united, start/end flags OR-ed."""
    if not graphs:
        raise ValueError("nothing to merge")
    precision = graphs[0].precision
    for g in graphs[1:]:
        if g.precision != precision:
            raise ValueError(
                f"precision mismatch in merge: {g.precision} vs {precision}"
            )
    merged = StnGraph(precision=precision)
    for g in graphs:
        for loc, attrs in g.nodes.items():
            out = merged.nodes.get(loc)
            if out is None:
                out = merged.nodes[loc] = NodeAttrs()
            out.count += attrs.count
            out.vectors |= attrs.vectors
            out.runs |= attrs.runs
            out.is_start |= attrs.is_start
            out.is_end |= attrs.is_end
            out.is_optimal |= attrs.is_optimal
            for obj in attrs.objectives:
                if obj not in out.objectives:
                    out.objectives.append(obj)
        for key, w in g.edges.items():
            merged.edges[key] = merged.edges.get(key, 0) + w
    return merged


def build_merged_stn(traces: Sequence[RunTrace]) -> StnGraph:
    """Union of all per-vector networks of all given runs."""
    graphs = [
        build_vector_stn(t, v) for t in traces for v in range(t.n_vectors)
    ]
    return merge_stns(graphs)


def mark_optimal_nodes(g: StnGraph, front: np.ndarray, tol: float) -> int:
    """Flag nodes whose best recorded objectives lie within `tol` of the front.

    Nodes without recorded objectives (e.g. re-imported graphs) keep their
    existing flag.  Returns the total number of flagged nodes.
    """
    front = np.asarray(front, dtype=float)
    if front.size == 0:
        raise ValueError("empty reference front")
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    keys = [loc for loc, attrs in g.nodes.items() if attrs.objectives]
    if keys:
        rows = []
        owner = []
        for i, loc in enumerate(keys):
            for obj in g.nodes[loc].objectives:
                rows.append(obj)
                owner.append(i)
        d = cdist(np.asarray(rows, dtype=float), front).min(axis=1)
        best = np.full(len(keys), np.inf)
        np.minimum.at(best, np.asarray(owner), d)
        for i, loc in enumerate(keys):
            g.nodes[loc].is_optimal = bool(best[i] <= tol)
    return sum(1 for attrs in g.nodes.values() if attrs.is_optimal)


def _degree_sums(g: StnGraph, weighted: bool) -> tuple[dict, dict]:
    in_deg: dict[LocationKey, int] = {loc: 0 for loc in g.nodes}
    out_deg: dict[LocationKey, int] = {loc: 0 for loc in g.nodes}
    for (src, dst), w in g.edges.items():
        inc = w if weighted else 1
        out_deg[src] += inc
        in_deg[dst] += inc
    return in_deg, out_deg


def compute_stn_metrics(g: StnGraph, weighted: bool = True) -> StnMetrics:
    """The summary statistics of one (merged) network.

    Mean degrees divide total transition weight by the node count while the
    edge/node ratio uses unique edges; degrees are weighted by default.
    """
    if not g.nodes:
        raise ValueError("empty graph")
    n_nodes = len(g.nodes)
    n_edges = len(g.edges)
    shared = sum(1 for attrs in g.nodes.values() if is_shared(attrs))
    optimal = sum(1 for attrs in g.nodes.values() if attrs.is_optimal)
    in_deg, out_deg = _degree_sums(g, weighted)
    total_in = sum(in_deg.values())
    total_out = sum(out_deg.values())
    und = nx.Graph()
    und.add_nodes_from(g.nodes)
    und.add_edges_from(g.edges)
    return StnMetrics(
        nodes=n_nodes,
        edges=n_edges,
        edge_node_ratio=n_edges / n_nodes,
        shared_ratio=shared / n_nodes,
        optimal=optimal,
        components=nx.number_connected_components(und),
        max_in=max(in_deg.values(), default=0),
        mean_in=total_in / n_nodes,
        max_out=max(out_deg.values(), default=0),
        mean_out=total_out / n_nodes,
    )


# -- serialization --------------------------------------------------------------

EXPORT_FORMATS = ("graphml", "dot", "edgelist-csv")


def _loc_id(loc: LocationKey) -> str:
    return "_".join(str(i) for i in loc)


def _parse_loc(s: str) -> LocationKey:
    return tuple(int(t) for t in s.split("_"))


def _sorted_nodes(g: StnGraph) -> list[LocationKey]:
    return sorted(g.nodes)


def _sorted_edges(g: StnGraph) -> list[tuple[LocationKey, LocationKey]]:
    return sorted(g.edges)


def to_networkx(g: StnGraph) -> nx.DiGraph:
    """Typed-attribute DiGraph with deterministic (sorted) element order."""
    out = nx.DiGraph()
    out.graph["precision"] = float(g.precision)
    for loc in _sorted_nodes(g):
        attrs = g.nodes[loc]
        out.add_node(
            _loc_id(loc),
            count=int(attrs.count),
            shared=is_shared(attrs),
            start=attrs.is_start,
            end=attrs.is_end,
            optimal=attrs.is_optimal,
            vectors=",".join(str(v) for v in sorted(attrs.vectors)),
            runs=",".join(str(r) for r in sorted(attrs.runs)),
        )
    for src, dst in _sorted_edges(g):
        out.add_edge(_loc_id(src), _loc_id(dst), weight=int(g.edges[(src, dst)]))
    return out


def export_graph(g: StnGraph, fmt: str, sink: str | Path | IO[bytes] | IO[str]) -> None:
    """Write the graph as GraphML, DOT, or an edge-list CSV (`src,dst,weight`)."""
    if fmt == "graphml":
        nx.write_graphml(to_networkx(g), sink)
    elif fmt == "dot":
        text = _to_dot(g)
        if isinstance(sink, (str, Path)):
            Path(sink).write_text(text, encoding="utf-8")
        else:
            sink.write(text)
    elif fmt == "edgelist-csv":
        lines = ["src,dst,weight"]
        lines += [
            f"{_loc_id(src)},{_loc_id(dst)},{g.edges[(src, dst)]}"
            for src, dst in _sorted_edges(g)
        ]
        text = "\n".join(lines) + "\n"
        if isinstance(sink, (str, Path)):
            Path(sink).write_text(text, encoding="utf-8")
        else:
            sink.write(text)
    else:
        raise ValueError(f"unsupported export format: {fmt!r}")


def _to_dot(g: StnGraph) -> str:
    # Visual convention: start nodes are yellow squares, end nodes black
    # triangles, optimal nodes red, shared nodes light gray.
    lines = ["digraph stn {", f'  graph [precision="{g.precision}"];']
    for loc in _sorted_nodes(g):
        attrs = g.nodes[loc]
        shape = "square" if attrs.is_start else ("triangle" if attrs.is_end else "circle")
        if attrs.is_optimal:
            color = "red"
        elif attrs.is_start:
            color = "yellow"
        elif attrs.is_end:
            color = "black"
        elif is_shared(attrs):
            color = "lightgray"
        else:
            color = "white"
        flags = (
            f'count={attrs.count}, shared={"true" if is_shared(attrs) else "false"}, '
            f'start={"true" if attrs.is_start else "false"}, '
            f'end={"true" if attrs.is_end else "false"}, '
            f'optimal={"true" if attrs.is_optimal else "false"}'
        )
        lines.append(
            f'  "{_loc_id(loc)}" [shape={shape}, style=filled, fillcolor={color}, {flags}];'
        )
    for src, dst in _sorted_edges(g):
        lines.append(f'  "{_loc_id(src)}" -> "{_loc_id(dst)}" [weight={g.edges[(src, dst)]}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def import_graphml(source: str | Path | IO[bytes]) -> StnGraph:
    """Rebuild a graph from a GraphML export (recorded objectives are not
    serialized, so re-marking optimality is not possible on the result)."""
    nxg = nx.read_graphml(source)
    g = StnGraph(precision=float(nxg.graph.get("precision", 0.001)))
    for node, data in nxg.nodes(data=True):
        loc = _parse_loc(node)
        vectors = {int(t) for t in str(data.get("vectors", "")).split(",") if t != ""}
        runs = {int(t) for t in str(data.get("runs", "")).split(",") if t != ""}
        g.nodes[loc] = NodeAttrs(
            count=int(data.get("count", 0)),
            vectors=vectors,
            runs=runs,
            is_start=bool(data.get("start", False)),
            is_end=bool(data.get("end", False)),
            is_optimal=bool(data.get("optimal", False)),
        )
    for src, dst, data in nxg.edges(data=True):
        g.edges[(_parse_loc(src), _parse_loc(dst))] = int(data.get("weight", 1))
    return g


def import_edgelist(
    source: str | Path | IO[str] | Iterable[str], precision: float = 0.001
) -> StnGraph:
    """Rebuild a bare graph (default node attributes) from an edge-list CSV."""
    if isinstance(source, (str, Path)):
        lines = Path(source).read_text(encoding="utf-8").splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = [ln.rstrip("\n") for ln in source]
    g = StnGraph(precision=precision)
    for lineno, line in enumerate(lines, start=1):
        if not line or (lineno == 1 and line == "src,dst,weight"):
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise ValueError(f"edge list line {lineno}: expected 3 fields, got {len(parts)}")
        src, dst, w = _parse_loc(parts[0]), _parse_loc(parts[1]), int(parts[2])
        for loc in (src, dst):
            if loc not in g.nodes:
                g.nodes[loc] = NodeAttrs()
        g.edges[(src, dst)] = w
    return g
