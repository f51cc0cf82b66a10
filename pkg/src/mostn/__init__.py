"""Search trajectory networks for multiobjective evolutionary algorithms."""

from .core import (
    Dominance,
    RankedPopulation,
    Solution,
    dominates,
    non_dominated_sort,
    rank_objectives,
)
from .decomposition import (
    IdealPoint,
    sld_weights,
    tchebycheff,
    uniform_design_weights,
)
from .experiment import (
    ExperimentConfig,
    MetricsReport,
    ReportRow,
    execute_run,
    rebuild,
    report_table,
    run_experiment,
)
from .indicators import filter_nondominated, hypervolume, igd
from .moead import MoeadConfig, run_moead
from .nsga2 import Nsga2Config, crowding_distance, run_nsga2, survival, tournament_select
from .problems import UF_IDS, UFProblem, evaluate, get_problem, sample_pareto_front
from .stn import (
    StnGraph,
    StnMetrics,
    build_merged_stn,
    build_vector_stn,
    compute_stn_metrics,
    export_graph,
    import_edgelist,
    import_graphml,
    mark_optimal_nodes,
    merge_stns,
)
from .trace import (
    RunTrace,
    TraceBuilder,
    TraceRecord,
    assign_representatives,
    location_of,
    read_trace,
    select_candidates,
    write_trace,
)

__version__ = "0.1.0"
