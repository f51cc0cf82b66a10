"""NSGA-II with binary tournaments, DE mutation, and crowded (mu+lambda) survival.

The canonical crossover is replaced by the same rand/1 differential mutation
used by the decomposition-based optimizer: the tournament winner serves as the
base vector and two uniformly drawn distinct parents form the difference pair.
"""

from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .core import Solution, rank_objectives
from .decomposition import IdealPoint
from .variation import polynomial_mutation

if TYPE_CHECKING:
    from .problems import UFProblem
    from .trace import TraceBuilder


@dataclass(frozen=True)
class Nsga2Config:
    population: int = 250
    tournament_size: int = 2
    f_scale: float = 0.25
    pm_eta: float = 3.0
    pm_prob: float = 0.1
    budget: int = 30000
    seed: int = 0

    def __post_init__(self):
        if self.population < 4 or self.population % 2 != 0:
            raise ValueError(f"population must be even and >= 4, got {self.population}")
        if self.tournament_size != 2:
            raise ValueError("only binary tournaments are supported")
        if self.budget <= 0 or self.budget % self.population != 0:
            raise ValueError(
                f"budget {self.budget} must be a positive multiple of population {self.population}"
            )


@dataclass(frozen=True)
class CrowdedPopulation:
    """Solutions with non-domination ranks and per-front crowding distances."""

    solutions: tuple[Solution, ...]
    ranks: tuple[int, ...]
    crowding: tuple[float, ...]


def crowding_distance(front: Sequence[Sequence[float]]) -> np.ndarray:
    """Crowding distances for one mutually non-dominated front.

    Normalized neighbor-gap sums per objective; boundary points are infinite,
    and an objective with zero range contributes nothing.
    """
    F = np.asarray(front, dtype=float)
    nf = F.shape[0]
    d = np.zeros(nf)
    if nf <= 2:
        d[:] = np.inf
        return d
    for j in range(F.shape[1]):
        vals = F[:, j]
        idx = np.argsort(vals, kind="stable")
        d[idx[0]] = d[idx[-1]] = np.inf
        span = vals[idx[-1]] - vals[idx[0]]
        if span > 0.0:
            d[idx[1:-1]] += (vals[idx[2:]] - vals[idx[:-2]]) / span
    return d


def _crowd(F: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    ranks = rank_objectives(F)
    crowd = np.zeros(F.shape[0])
    for r in range(int(ranks.max()) + 1):
        members = np.nonzero(ranks == r)[0]
        crowd[members] = crowding_distance(F[members])
    return ranks, crowd


def crowd_population(solutions: Sequence[Solution]) -> CrowdedPopulation:
    F = np.array([s.f for s in solutions], dtype=float)
    ranks, crowd = _crowd(F)
    return CrowdedPopulation(
        solutions=tuple(solutions),
        ranks=tuple(int(r) for r in ranks),
        crowding=tuple(float(c) for c in crowd),
    )


def _tournament_winner(
    rank_a: int, rank_b: int, crowd_a: float, crowd_b: float, rng: np.random.Generator
) -> int:
    """0 if the first contestant wins, 1 otherwise."""
    if rank_a != rank_b:
        return 0 if rank_a < rank_b else 1
    if crowd_a != crowd_b:
        return 0 if crowd_a > crowd_b else 1
    return 0 if rng.random() < 0.5 else 1


def _tournament_index(
    ranks: np.ndarray, crowd: np.ndarray, rng: np.random.Generator
) -> int:
    n = ranks.shape[0]
    a = int(rng.integers(n))
    b = int(rng.integers(n - 1))
    if b >= a:
        b += 1
    win = _tournament_winner(int(ranks[a]), int(ranks[b]), float(crowd[a]), float(crowd[b]), rng)
    return a if win == 0 else b


def tournament_select(pop: CrowdedPopulation, rng: np.random.Generator) -> Solution:
    """Binary tournament: two distinct uniform draws, lower rank wins, then
    larger crowding distance, then a fair coin."""
    if not pop.solutions:
        raise ValueError("cannot select from an empty population")
    ranks = np.asarray(pop.ranks)
    crowd = np.asarray(pop.crowding)
    return pop.solutions[_tournament_index(ranks, crowd, rng)]


def _survivor_indices(F: np.ndarray, n: int) -> np.ndarray:
    """Indices of the n survivors from a combined (2n, m) objective matrix."""
    ranks = rank_objectives(F)
    chosen: list[int] = []
    for r in range(int(ranks.max()) + 1):
        members = np.nonzero(ranks == r)[0]
        if len(chosen) + members.size <= n:
            chosen.extend(int(i) for i in members)
            if len(chosen) == n:
                break
        else:
            need = n - len(chosen)
            cd = crowding_distance(F[members])
            order = np.argsort(-cd, kind="stable")
            chosen.extend(int(i) for i in members[order[:need]])
            break
    return np.array(chosen, dtype=np.int64)


def survival(solutions: Sequence[Solution], n: int) -> list[Solution]:
    """Keep n of the given solutions by ascending rank, splitting the boundary
    front by descending crowding distance."""
    if n > len(solutions):
        raise ValueError(f"cannot keep {n} of {len(solutions)} solutions")
    F = np.array([s.f for s in solutions], dtype=float)
    return [solutions[i] for i in _survivor_indices(F, n)]


def _snapshot(X: np.ndarray, F: np.ndarray, birth: np.ndarray) -> list[Solution]:
    return [
        Solution(tuple(X[i].tolist()), tuple(F[i].tolist()), int(birth[i]))
        for i in range(X.shape[0])
    ]


def run_nsga2(
    problem: "UFProblem",
    cfg: Nsga2Config,
    tracer: "TraceBuilder | None" = None,
) -> list[Solution]:
    """Run NSGA-II; returns the final population.

    Consumes exactly cfg.budget evaluations after initialization, one
    generation per cfg.population evaluations, and reports each post-survival
    population to the tracer.  Deterministic given cfg.seed.
    """
    rng = np.random.default_rng(cfg.seed)
    n = cfg.population
    lower = np.array(problem.lower)
    upper = np.array(problem.upper)

    X = rng.uniform(lower, upper, size=(n, problem.dimension))
    F = np.array([problem.evaluate(X[i]) for i in range(n)])
    birth = np.zeros(n, dtype=np.int64)
    ideal = IdealPoint(problem.m)
    ideal.update_many(F)
    ranks, crowd = _crowd(F)

    evaluations = 0
    generations = cfg.budget // n
    for gen in range(1, generations + 1):
        off_X = np.empty_like(X)
        for k in range(n):
            r1 = _tournament_index(ranks, crowd, rng)
            pair = rng.choice(n - 1, size=2, replace=False)
            pair = pair + (pair >= r1)
            y = X[r1] + cfg.f_scale * (X[pair[0]] - X[pair[1]])
            y = np.clip(y, lower, upper)
            off_X[k] = polynomial_mutation(y, cfg.pm_eta, cfg.pm_prob, lower, upper, rng)
        off_F = np.array([problem.evaluate(off_X[k]) for k in range(n)])
        evaluations += n
        ideal.update_many(off_F)

        comb_X = np.vstack([X, off_X])
        comb_F = np.vstack([F, off_F])
        comb_birth = np.concatenate([birth, np.full(n, gen, dtype=np.int64)])
        keep = _survivor_indices(comb_F, n)
        X, F, birth = comb_X[keep], comb_F[keep], comb_birth[keep]
        ranks, crowd = _crowd(F)
        if tracer is not None:
            tracer.observe(gen, _snapshot(X, F, birth), ideal.z)
    assert evaluations == cfg.budget
    return _snapshot(X, F, birth)
