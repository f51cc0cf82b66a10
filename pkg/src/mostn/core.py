"""Pareto dominance, solutions, and non-dominated sorting."""

import enum
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DecisionVector = tuple[float, ...]
ObjectiveVector = tuple[float, ...]


class Dominance(enum.Enum):
    """Relation between two objective vectors under minimization."""

    A_DOMINATES_B = "a_dominates_b"
    B_DOMINATES_A = "b_dominates_a"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


@dataclass(frozen=True, slots=True)
class Solution:
    """A decision vector, its objective values, and the iteration that created it."""

    x: DecisionVector
    f: ObjectiveVector
    birth: int = 0

    def __post_init__(self):
        if self.birth < 0:
            raise ValueError(f"birth must be >= 0, got {self.birth}")


@dataclass(frozen=True)
class RankedPopulation:
    """Solutions paired with their non-domination ranks (0 is the best front).

    Within each rank, solutions keep their original population order.
    """

    solutions: tuple[Solution, ...]
    ranks: tuple[int, ...]

    def front(self, rank: int) -> list[Solution]:
        return [s for s, r in zip(self.solutions, self.ranks) if r == rank]

    @property
    def n_fronts(self) -> int:
        return max(self.ranks) + 1


def dominates(a: Sequence[float], b: Sequence[float]) -> Dominance:
    """Compare two objective vectors (minimization).

    A dominates B when it is no worse in every objective and strictly better
    in at least one.  Equal vectors dominate neither way.
    """
    if len(a) != len(b):
        raise ValueError(f"objective vectors differ in length: {len(a)} vs {len(b)}")
    a_no_worse = all(ai <= bi for ai, bi in zip(a, b))
    b_no_worse = all(bi <= ai for ai, bi in zip(a, b))
    if a_no_worse and b_no_worse:
        return Dominance.EQUAL
    if a_no_worse:
        return Dominance.A_DOMINATES_B
    if b_no_worse:
        return Dominance.B_DOMINATES_A
    return Dominance.INCOMPARABLE


def rank_objectives(F: np.ndarray) -> np.ndarray:
    """Non-domination ranks for an (n, m) objective matrix.

    Rank 0 is the mutually non-dominated subset; rank r is the subset that
    becomes non-dominated once ranks < r are removed (iterative peeling).
    """
    F = np.asarray(F, dtype=float)
    n = F.shape[0]
    if n == 0:
        raise ValueError("cannot rank an empty population")
    le = (F[:, None, :] <= F[None, :, :]).all(axis=2)
    lt = (F[:, None, :] < F[None, :, :]).any(axis=2)
    dom = le & lt  # dom[i, j]: i dominates j
    ranks = np.full(n, -1, dtype=np.int64)
    remaining = np.ones(n, dtype=bool)
    current = 0
    while remaining.any():
        dominators = (dom & remaining[:, None]).sum(axis=0)
        front = remaining & (dominators == 0)
        ranks[front] = current
        remaining &= ~front
        current += 1
    return ranks


def non_dominated_sort(pop: Sequence[Solution]) -> RankedPopulation:
    """Rank a population by iterative peeling of non-dominated subsets."""
    if len(pop) == 0:
        raise ValueError("cannot sort an empty population")
    m = len(pop[0].f)
    for s in pop:
        if len(s.f) != m:
            raise ValueError("inconsistent objective counts in population")
    F = np.array([s.f for s in pop], dtype=float)
    ranks = rank_objectives(F)
    return RankedPopulation(solutions=tuple(pop), ranks=tuple(int(r) for r in ranks))
