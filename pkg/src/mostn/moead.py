"""MOEA/D with differential-evolution variation and restricted replacement.

One subproblem per weight vector, Tchebycheff aggregation against a running
ideal point, neighborhood mating with occasional global scope, and a cap on
how many incumbents one offspring may replace.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np

from .core import Solution
from .decomposition import IdealPoint, sld_weights
from .variation import de_mutant, polynomial_mutation

if TYPE_CHECKING:
    from .problems import UFProblem
    from .trace import TraceBuilder


@dataclass(frozen=True)
class MoeadConfig:
    population: int = 250  # evaluations per iteration; subproblem-count target
    f_scale: float = 0.25
    pm_eta: float = 20.0
    pm_prob: float = 0.01
    nr: int = 2
    delta_p: float = 0.9
    neighborhood_fraction: float = 0.2
    budget: int = 30000
    seed: int = 0

    def __post_init__(self):
        if self.population < 4:
            raise ValueError(f"population too small: {self.population}")
        if not 0.0 < self.delta_p <= 1.0:
            raise ValueError(f"delta_p must be in (0, 1], got {self.delta_p}")
        if self.nr < 1:
            raise ValueError(f"nr must be >= 1, got {self.nr}")
        if self.budget <= 0 or self.budget % self.population != 0:
            raise ValueError(
                f"budget {self.budget} must be a positive multiple of population {self.population}"
            )


@dataclass
class RunState:
    """Mutable per-run state: one incumbent per weight vector."""

    weights: np.ndarray  # (W, m)
    neighbors: np.ndarray  # (W, T) indices of nearest weight vectors
    X: np.ndarray  # (W, D) incumbent decision vectors
    F: np.ndarray  # (W, m) incumbent objectives
    birth: np.ndarray  # (W,) creation iteration per incumbent
    ideal: IdealPoint
    evaluations: int = 0
    iteration: int = 0


def restricted_update(
    state: RunState,
    child_x: np.ndarray,
    child_f: np.ndarray,
    child_birth: int,
    scope: np.ndarray,
    nr: int,
    rng: np.random.Generator,
) -> int:
    """Replace up to `nr` incumbents the offspring strictly improves.

    Scans the mating scope in a random order, comparing Tchebycheff scores
    under each scanned subproblem's own weight vector.
    """
    order = rng.permutation(scope)
    z = state.ideal.array
    w_scan = state.weights[order]
    child_scores = np.max(w_scan * np.abs(child_f[None, :] - z[None, :]), axis=1)
    incumbent_scores = np.max(w_scan * np.abs(state.F[order] - z[None, :]), axis=1)
    replaced = 0
    for pos, j in enumerate(order):
        if child_scores[pos] < incumbent_scores[pos]:
            state.X[j] = child_x
            state.F[j] = child_f
            state.birth[j] = child_birth
            replaced += 1
            if replaced >= nr:
                break
    return replaced


def _snapshot(state: RunState) -> list[Solution]:
    return [
        Solution(tuple(state.X[i].tolist()), tuple(state.F[i].tolist()), int(state.birth[i]))
        for i in range(state.X.shape[0])
    ]


def run_moead(
    problem: "UFProblem",
    cfg: MoeadConfig,
    tracer: "TraceBuilder | None" = None,
) -> list[Solution]:
    """Run MOEA/D-DE; returns the final incumbent population.

    Consumes exactly cfg.budget evaluations after initialization and reports
    one population snapshot to the tracer per iteration, where an iteration
    is cfg.population evaluations.  Deterministic given cfg.seed.
    """
    rng = np.random.default_rng(cfg.seed)
    weights = np.array(sld_weights(problem.m, cfg.population))
    n_sub = weights.shape[0]
    t_size = max(2, int(round(cfg.neighborhood_fraction * n_sub)))
    dist = np.linalg.norm(weights[:, None, :] - weights[None, :, :], axis=2)
    neighbors = np.argsort(dist, axis=1, kind="stable")[:, :t_size]
    lower = np.array(problem.lower)
    upper = np.array(problem.upper)

    X = rng.uniform(lower, upper, size=(n_sub, problem.dimension))
    F = np.array([problem.evaluate(X[i]) for i in range(n_sub)])
    ideal = IdealPoint(problem.m)
    ideal.update_many(F)
    state = RunState(
        weights=weights,
        neighbors=neighbors,
        X=X,
        F=F,
        birth=np.zeros(n_sub, dtype=np.int64),
        ideal=ideal,
    )

    all_indices = np.arange(n_sub)
    cursor = n_sub  # forces a fresh permutation on first use
    perm = all_indices
    iterations = cfg.budget // cfg.population
    for it in range(1, iterations + 1):
        state.iteration = it
        for _ in range(cfg.population):
            if cursor >= n_sub:
                perm = rng.permutation(n_sub)
                cursor = 0
            i = perm[cursor]
            cursor += 1
            scope = neighbors[i] if rng.random() < cfg.delta_p else all_indices
            mutant = de_mutant(state.X, scope, cfg.f_scale, lower, upper, rng)
            child_x = polynomial_mutation(mutant, cfg.pm_eta, cfg.pm_prob, lower, upper, rng)
            child_f = np.array(problem.evaluate(child_x))
            state.evaluations += 1
            ideal.update(child_f)
            restricted_update(state, child_x, child_f, it, scope, cfg.nr, rng)
        if tracer is not None:
            tracer.observe(it, _snapshot(state), ideal.z)
    assert state.evaluations == cfg.budget
    return _snapshot(state)
