"""Experiment orchestration: seeded grids, persistence, and the summary table.

Output layout under the chosen directory:

    traces/<algo>_<problem>_run<r>.csv   one trace per run
    finals/<algo>_<problem>_run<r>.csv   final-population objectives per run
    graphs/<algo>_<problem>.graphml/.dot/.edges.csv   merged networks
    report.csv                           one row per (algorithm, problem)

Run r uses seed base_seed + r, recorded in each trace header, so any single
run can be re-executed independently.
"""

import hashlib
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .core import Solution
from .decomposition import uniform_design_weights
from .indicators import filter_nondominated, hypervolume, igd
from .moead import MoeadConfig, run_moead
from .nsga2 import Nsga2Config, run_nsga2
from .problems import UF_IDS, get_problem
from .stn import StnGraph, StnMetrics, build_merged_stn, compute_stn_metrics, export_graph, mark_optimal_nodes
from .trace import RunTrace, TraceBuilder, read_trace, rebin_location, write_trace

ALGORITHMS = ("moead", "nsga2")
HV_REFERENCE_OFFSET = 1.1  # reference point (1.1, ..., 1.1)
DEFAULT_OPT_TOL = 1e-2
DEFAULT_REF_FRONT_SIZE = 1000


@dataclass(frozen=True)
class ExperimentConfig:
    out_dir: Path
    algorithms: tuple[str, ...] = ALGORITHMS
    problems: tuple[str, ...] = UF_IDS
    runs: int = 3
    budget: int = 30000
    population: int = 250
    n_vectors: int = 5
    precision: float = 1e-3
    opt_tol: float = DEFAULT_OPT_TOL
    base_seed: int = 1
    ref_front_size: int = DEFAULT_REF_FRONT_SIZE

    def __post_init__(self):
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; choose from {ALGORITHMS}")
        for p in self.problems:
            if p not in UF_IDS:
                raise ValueError(f"unknown problem {p!r}; choose from UF1..UF10")
        if self.runs < 1:
            raise ValueError(f"runs must be >= 1, got {self.runs}")
        if self.precision <= 0:
            raise ValueError(f"precision must be positive, got {self.precision}")
        if self.n_vectors < 1:
            raise ValueError(f"n_vectors must be >= 1, got {self.n_vectors}")


@dataclass(frozen=True)
class ReportRow:
    algo: str
    problem: str
    hv: float
    igd: float
    stn: StnMetrics


@dataclass(frozen=True)
class MetricsReport:
    rows: tuple[ReportRow, ...]
    failures: tuple[tuple[str, str, str], ...] = ()


def _uf_index(pid: str) -> int:
    return int(pid[2:])


def _row_key(row: ReportRow) -> tuple:
    return (row.algo, _uf_index(row.problem))


def _config_digest(algo: str, problem: str, cfg: ExperimentConfig, seed: int) -> str:
    text = (
        f"{algo}|{problem}|population={cfg.population}|budget={cfg.budget}"
        f"|n_vectors={cfg.n_vectors}|precision={cfg.precision!r}|seed={seed}"
    )
    return hashlib.sha256(text.encode()).hexdigest()[:12]


def execute_run(
    algo: str, problem_id: str, run_index: int, cfg: ExperimentConfig
) -> tuple[RunTrace, list[Solution]]:
    """One seeded run of one algorithm on one problem, fully traced."""
    problem = get_problem(problem_id)
    seed = cfg.base_seed + run_index
    vectors = uniform_design_weights(problem.m, cfg.n_vectors)
    tracer = TraceBuilder(
        algo=algo,
        problem=problem_id,
        run=run_index,
        vectors=vectors,
        precision=cfg.precision,
        seed=seed,
        config_digest=_config_digest(algo, problem_id, cfg, seed),
    )
    if algo == "moead":
        final = run_moead(
            problem,
            MoeadConfig(population=cfg.population, budget=cfg.budget, seed=seed),
            tracer,
        )
    elif algo == "nsga2":
        final = run_nsga2(
            problem,
            Nsga2Config(population=cfg.population, budget=cfg.budget, seed=seed),
            tracer,
        )
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    return tracer.finish(), final


def _fmt(v: float) -> str:
    return format(v, ".17g")


def write_finals(finals: Sequence[Solution], path: Path) -> None:
    m = len(finals[0].f)
    header = ",".join(f"f{i + 1}" for i in range(m))
    lines = [header] + [",".join(_fmt(v) for v in s.f) for s in finals]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_finals(path: Path) -> np.ndarray:
    lines = path.read_text(encoding="utf-8").splitlines()
    return np.array([[float(v) for v in ln.split(",")] for ln in lines[1:]])


def _pair_metrics(
    problem_id: str,
    traces: Sequence[RunTrace],
    final_sets: Sequence[np.ndarray],
    opt_tol: float,
    ref_front_size: int,
) -> tuple[StnGraph, StnMetrics, float, float]:
    problem = get_problem(problem_id)
    graph = build_merged_stn(traces)
    front = problem.pareto_front(ref_front_size)
    mark_optimal_nodes(graph, front, opt_tol)
    metrics = compute_stn_metrics(graph)
    ref = np.full(problem.m, HV_REFERENCE_OFFSET)
    hvs, igds = [], []
    for F in final_sets:
        nd = filter_nondominated(F)
        hvs.append(hypervolume(nd, ref))
        igds.append(igd(nd, front))
    return graph, metrics, float(np.mean(hvs)), float(np.mean(igds))


def _export_all(graph: StnGraph, graphs_dir: Path, stem: str, formats: Sequence[str]) -> None:
    suffix = {"graphml": ".graphml", "dot": ".dot", "edgelist-csv": ".edges.csv"}
    for fmt in formats:
        export_graph(graph, fmt, graphs_dir / (stem + suffix[fmt]))


def run_experiment(cfg: ExperimentConfig, log: IO[str] | None = None) -> MetricsReport:
    """Execute the full grid, persist everything, and return the summary.

    A failure in one (algorithm, problem) pair does not abort the rest; the
    affected pair is recorded in the report's failure list instead.
    """
    log = log if log is not None else sys.stderr
    out = Path(cfg.out_dir)
    traces_dir, finals_dir, graphs_dir = out / "traces", out / "finals", out / "graphs"
    for d in (traces_dir, finals_dir, graphs_dir):
        d.mkdir(parents=True, exist_ok=True)

    rows: list[ReportRow] = []
    failures: list[tuple[str, str, str]] = []
    for algo in cfg.algorithms:
        for pid in cfg.problems:
            try:
                traces, final_sets = [], []
                for r in range(cfg.runs):
                    trace, final = execute_run(algo, pid, r, cfg)
                    write_trace(trace, traces_dir / f"{algo}_{pid}_run{r}.csv")
                    write_finals(final, finals_dir / f"{algo}_{pid}_run{r}.csv")
                    traces.append(trace)
                    final_sets.append(np.array([s.f for s in final]))
                graph, metrics, hv, igd_val = _pair_metrics(
                    pid, traces, final_sets, cfg.opt_tol, cfg.ref_front_size
                )
                _export_all(graph, graphs_dir, f"{algo}_{pid}", ("graphml", "dot", "edgelist-csv"))
                rows.append(ReportRow(algo=algo, problem=pid, hv=hv, igd=igd_val, stn=metrics))
                print(f"{algo} {pid}: done", file=log)
            except Exception as exc:  # isolate the failing pair
                failures.append((algo, pid, f"{type(exc).__name__}: {exc}"))
                print(f"{algo} {pid}: FAILED ({exc})", file=log)
    report = MetricsReport(rows=tuple(sorted(rows, key=_row_key)), failures=tuple(failures))
    with open(out / "report.csv", "w", encoding="utf-8", newline="\n") as fh:
        report_table(report, fh)
    return report


def rebuild(
    root: str | Path,
    precision: float | None = None,
    opt_tol: float | None = None,
    ref_front_size: int = DEFAULT_REF_FRONT_SIZE,
    write: bool = True,
) -> MetricsReport:
    """Reconstruct graphs and the report from persisted traces, without
    re-running any algorithm.  Precision and optimality tolerance may be
    overridden; precision re-binning is exact for integer coarsenings."""
    root = Path(root)
    traces_dir = root / "traces"
    finals_dir = root / "finals"
    graphs_dir = root / "graphs"
    files = sorted(traces_dir.glob("*.csv"))
    if not files:
        raise FileNotFoundError(f"no trace files under {traces_dir}")
    groups: dict[tuple[str, str], list[RunTrace]] = {}
    for path in files:
        trace = read_trace(path)
        if precision is not None and precision != trace.precision:
            trace.records = [
                replace(rec, loc=rebin_location(rec.loc, trace.precision, precision))
                for rec in trace.records
            ]
            trace.precision = precision
        groups.setdefault((trace.algo, trace.problem), []).append(trace)

    tol = opt_tol if opt_tol is not None else DEFAULT_OPT_TOL
    rows = []
    for (algo, pid), traces in sorted(groups.items(), key=lambda kv: (kv[0][0], _uf_index(kv[0][1]))):
        traces.sort(key=lambda t: t.run)
        final_sets = []
        for t in traces:
            fpath = finals_dir / f"{algo}_{pid}_run{t.run}.csv"
            if fpath.exists():
                final_sets.append(read_finals(fpath))
        if final_sets:
            graph, metrics, hv, igd_val = _pair_metrics(pid, traces, final_sets, tol, ref_front_size)
        else:
            problem = get_problem(pid)
            graph = build_merged_stn(traces)
            mark_optimal_nodes(graph, problem.pareto_front(ref_front_size), tol)
            metrics = compute_stn_metrics(graph)
            hv, igd_val = float("nan"), float("nan")
        if write:
            graphs_dir.mkdir(parents=True, exist_ok=True)
            _export_all(graph, graphs_dir, f"{algo}_{pid}", ("graphml", "dot", "edgelist-csv"))
        rows.append(ReportRow(algo=algo, problem=pid, hv=hv, igd=igd_val, stn=metrics))
    report = MetricsReport(rows=tuple(sorted(rows, key=_row_key)))
    if write:
        with open(root / "report.csv", "w", encoding="utf-8", newline="\n") as fh:
            report_table(report, fh)
    return report


def export_graphs(
    root: str | Path,
    fmt: str,
    opt_tol: float = DEFAULT_OPT_TOL,
    ref_front_size: int = DEFAULT_REF_FRONT_SIZE,
) -> list[Path]:
    """Re-export the merged graph of every traced pair in one format."""
    root = Path(root)
    files = sorted((root / "traces").glob("*.csv"))
    if not files:
        raise FileNotFoundError(f"no trace files under {root / 'traces'}")
    groups: dict[tuple[str, str], list[RunTrace]] = {}
    for path in files:
        trace = read_trace(path)
        groups.setdefault((trace.algo, trace.problem), []).append(trace)
    graphs_dir = root / "graphs"
    graphs_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for (algo, pid), traces in sorted(groups.items(), key=lambda kv: (kv[0][0], _uf_index(kv[0][1]))):
        traces.sort(key=lambda t: t.run)
        graph = build_merged_stn(traces)
        mark_optimal_nodes(graph, get_problem(pid).pareto_front(ref_front_size), opt_tol)
        suffix = {"graphml": ".graphml", "dot": ".dot", "edgelist-csv": ".edges.csv"}[fmt]
        target = graphs_dir / f"{algo}_{pid}{suffix}"
        export_graph(graph, fmt, target)
        written.append(target)
    return written


REPORT_HEADER = "algo,problem,HV,IGD,Nodes,EdgesRatio,SharedRatio,Opt,Comp,MaxIn,MeanIn,MaxOut,MeanOut"


def report_table(report: MetricsReport, sink: IO[str]) -> None:
    """Emit the summary CSV: two-decimal ratios, integer counts, rows sorted
    algorithm-major then by problem number."""
    if not report.rows:
        raise ValueError("empty report")
    sink.write(REPORT_HEADER + "\n")
    for row in sorted(report.rows, key=_row_key):
        s = row.stn
        sink.write(
            f"{row.algo},{row.problem},{row.hv:.2f},{row.igd:.2f},{s.nodes},"
            f"{s.edge_node_ratio:.2f},{s.shared_ratio:.2f},{s.optimal},{s.components},"
            f"{s.max_in},{s.mean_in:.2f},{s.max_out},{s.mean_out:.2f}\n"
        )
