"""UF1-UF10 benchmark problems (CEC 2009 unconstrained suite) at dimension 10.

Each problem exposes box bounds, an objective evaluator, and an analytic
Pareto-front sampler used as the IGD reference set and for flagging optimal
trajectory nodes.  UF1-UF7 have two objectives, UF8-UF10 three.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

DIMENSION = 10
UF_IDS = tuple(f"UF{i}" for i in range(1, 11))

# 1-based variable indices used by the distance terms.
_J_ODD = np.arange(3, DIMENSION + 1, 2)  # {3, 5, 7, 9}
_J_EVEN = np.arange(2, DIMENSION + 1, 2)  # {2, 4, 6, 8, 10}
_J3_1 = np.arange(4, DIMENSION + 1, 3)  # j - 1 divisible by 3: {4, 7, 10}
_J3_2 = np.arange(5, DIMENSION + 1, 3)  # j - 2 divisible by 3: {5, 8}
_J3_3 = np.arange(3, DIMENSION + 1, 3)  # j divisible by 3: {3, 6, 9}

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class UFProblem:
    """Immutable description of one UF instance."""

    id: str
    m: int
    dimension: int
    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def evaluate(self, x: Sequence[float]) -> tuple[float, ...]:
        return evaluate(self, x)

    def pareto_front(self, k: int) -> np.ndarray:
        return sample_pareto_front(self, k)


def _make_bounds(pid: str) -> tuple[tuple[float, ...], tuple[float, ...]]:
    if pid in ("UF1", "UF2", "UF5", "UF6", "UF7"):
        lower = (0.0,) + (-1.0,) * (DIMENSION - 1)
        upper = (1.0,) * DIMENSION
    elif pid == "UF3":
        lower = (0.0,) * DIMENSION
        upper = (1.0,) * DIMENSION
    elif pid == "UF4":
        lower = (0.0,) + (-2.0,) * (DIMENSION - 1)
        upper = (1.0,) + (2.0,) * (DIMENSION - 1)
    elif pid in ("UF8", "UF9", "UF10"):
        lower = (0.0, 0.0) + (-2.0,) * (DIMENSION - 2)
        upper = (1.0, 1.0) + (2.0,) * (DIMENSION - 2)
    else:
        raise ValueError(f"unsupported problem id: {pid!r}")
    return lower, upper


def get_problem(pid: str) -> UFProblem:
    if pid not in UF_IDS:
        raise ValueError(f"unsupported problem id: {pid!r}")
    lower, upper = _make_bounds(pid)
    m = 2 if pid in UF_IDS[:7] else 3
    return UFProblem(id=pid, m=m, dimension=DIMENSION, lower=lower, upper=upper)


PROBLEMS = {pid: get_problem(pid) for pid in UF_IDS}

_BOUND_ARRAYS = {
    pid: (np.array(p.lower), np.array(p.upper)) for pid, p in PROBLEMS.items()
}


def evaluate(problem: UFProblem, x: Sequence[float]) -> tuple[float, ...]:
    """Evaluate a decision vector; rejects out-of-bounds input loudly."""
    arr = np.asarray(x, dtype=float)
    if arr.shape != (problem.dimension,):
        raise ValueError(
            f"{problem.id}: expected {problem.dimension} coordinates, got shape {arr.shape}"
        )
    if not np.isfinite(arr).all():
        bad = int(np.nonzero(~np.isfinite(arr))[0][0])
        raise ValueError(f"{problem.id}: coordinate {bad} is not finite")
    lb, ub = _BOUND_ARRAYS[problem.id]
    out = (arr < lb) | (arr > ub)
    if out.any():
        i = int(np.nonzero(out)[0][0])
        raise ValueError(
            f"{problem.id}: coordinate {i} = {arr[i]!r} outside [{lb[i]}, {ub[i]}]"
        )
    return _EVALUATORS[problem.id](arr)


# -- objective functions ------------------------------------------------------

def _sin_shift(x: np.ndarray, js: np.ndarray, factor: float = 6.0) -> np.ndarray:
    return x[js - 1] - np.sin(factor * np.pi * x[0] + js * np.pi / DIMENSION)


def _uf1(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]
    d1 = 2.0 * np.mean(_sin_shift(x, _J_ODD) ** 2)
    d2 = 2.0 * np.mean(_sin_shift(x, _J_EVEN) ** 2)
    return (float(x1 + d1), float(1.0 - math.sqrt(x1) + d2))


def _uf2(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]

    def y(js: np.ndarray, trig) -> np.ndarray:
        bracket = 0.3 * x1 * x1 * np.cos(24.0 * np.pi * x1 + 4.0 * js * np.pi / DIMENSION) + 0.6 * x1
        return x[js - 1] - bracket * trig(6.0 * np.pi * x1 + js * np.pi / DIMENSION)

    d1 = 2.0 * np.mean(y(_J_ODD, np.cos) ** 2)
    d2 = 2.0 * np.mean(y(_J_EVEN, np.sin) ** 2)
    return (float(x1 + d1), float(1.0 - math.sqrt(x1) + d2))


def _uf3(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]

    def term(js: np.ndarray) -> float:
        y = x[js - 1] - x1 ** (0.5 * (1.0 + 3.0 * (js - 2.0) / (DIMENSION - 2.0)))
        s = np.sum(y * y)
        p = np.prod(np.cos(20.0 * y * np.pi / np.sqrt(js)))
        return (2.0 / len(js)) * (4.0 * s - 2.0 * p + 2.0)

    return (float(x1 + term(_J_ODD)), float(1.0 - math.sqrt(x1) + term(_J_EVEN)))


def _uf4(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]

    def term(js: np.ndarray) -> float:
        t = np.abs(_sin_shift(x, js))
        return 2.0 * np.mean(t / (1.0 + np.exp(2.0 * t)))

    return (float(x1 + term(_J_ODD)), float(1.0 - x1 * x1 + term(_J_EVEN)))


def _uf5(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]
    nn, eps = 10.0, 0.1
    hump = (1.0 / (2.0 * nn) + eps) * abs(math.sin(2.0 * nn * math.pi * x1))

    def term(js: np.ndarray) -> float:
        y = _sin_shift(x, js)
        return 2.0 * np.mean(2.0 * y * y - np.cos(4.0 * np.pi * y) + 1.0)

    return (float(x1 + hump + term(_J_ODD)), float(1.0 - x1 + hump + term(_J_EVEN)))


def _uf6(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]
    nn, eps = 2.0, 0.1
    hump = max(0.0, 2.0 * (1.0 / (2.0 * nn) + eps) * math.sin(2.0 * nn * math.pi * x1))

    def term(js: np.ndarray) -> float:
        y = _sin_shift(x, js)
        s = np.sum(y * y)
        p = np.prod(np.cos(20.0 * y * np.pi / np.sqrt(js)))
        return (2.0 / len(js)) * (4.0 * s - 2.0 * p + 2.0)

    return (float(x1 + hump + term(_J_ODD)), float(1.0 - x1 + hump + term(_J_EVEN)))


def _uf7(x: np.ndarray) -> tuple[float, ...]:
    x1 = x[0]
    root = x1 ** 0.2
    d1 = 2.0 * np.mean(_sin_shift(x, _J_ODD) ** 2)
    d2 = 2.0 * np.mean(_sin_shift(x, _J_EVEN) ** 2)
    return (float(root + d1), float(1.0 - root + d2))


def _uf8_terms(x: np.ndarray) -> tuple[float, float, float]:
    x1, x2 = x[0], x[1]

    def term(js: np.ndarray) -> float:
        y = x[js - 1] - 2.0 * x2 * np.sin(2.0 * np.pi * x1 + js * np.pi / DIMENSION)
        return 2.0 * np.mean(y * y)

    return term(_J3_1), term(_J3_2), term(_J3_3)


def _uf8(x: np.ndarray) -> tuple[float, ...]:
    x1, x2 = x[0], x[1]
    t1, t2, t3 = _uf8_terms(x)
    c1 = math.cos(0.5 * math.pi * x1)
    return (
        float(c1 * math.cos(0.5 * math.pi * x2) + t1),
        float(c1 * math.sin(0.5 * math.pi * x2) + t2),
        float(math.sin(0.5 * math.pi * x1) + t3),
    )


def _uf9(x: np.ndarray) -> tuple[float, ...]:
    x1, x2 = x[0], x[1]
    eps = 0.1
    e = max(0.0, (1.0 + eps) * (1.0 - 4.0 * (2.0 * x1 - 1.0) ** 2))
    t1, t2, t3 = _uf8_terms(x)
    return (
        float(0.5 * (e + 2.0 * x1) * x2 + t1),
        float(0.5 * (e - 2.0 * x1 + 2.0) * x2 + t2),
        float(1.0 - x2 + t3),
    )


def _uf10(x: np.ndarray) -> tuple[float, ...]:
    x1, x2 = x[0], x[1]

    def term(js: np.ndarray) -> float:
        y = x[js - 1] - 2.0 * x2 * np.sin(2.0 * np.pi * x1 + js * np.pi / DIMENSION)
        return 2.0 * np.mean(4.0 * y * y - np.cos(8.0 * np.pi * y) + 1.0)

    c1 = math.cos(0.5 * math.pi * x1)
    return (
        float(c1 * math.cos(0.5 * math.pi * x2) + term(_J3_1)),
        float(c1 * math.sin(0.5 * math.pi * x2) + term(_J3_2)),
        float(math.sin(0.5 * math.pi * x1) + term(_J3_3)),
    )


_EVALUATORS = {
    "UF1": _uf1,
    "UF2": _uf2,
    "UF3": _uf3,
    "UF4": _uf4,
    "UF5": _uf5,
    "UF6": _uf6,
    "UF7": _uf7,
    "UF8": _uf8,
    "UF9": _uf9,
    "UF10": _uf10,
}


# -- analytic Pareto-front samplers -------------------------------------------
#
# Samplers are deterministic in (problem id, k) and spread points evenly in
# the front's natural parameterization.  k = 2 yields the extreme points.

def _pf_sqrt(k: int) -> np.ndarray:
    # f2 = 1 - sqrt(f1); parameterized by s = sqrt(f1) in [0, 1]
    s = np.linspace(0.0, 1.0, k)
    return np.column_stack([s * s, 1.0 - s])


def _pf_quadratic(k: int) -> np.ndarray:
    # f2 = 1 - f1^2
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([t, 1.0 - t * t])


def _pf_linear(k: int) -> np.ndarray:
    t = np.linspace(0.0, 1.0, k)
    return np.column_stack([t, 1.0 - t])


def _pf_uf5(k: int) -> np.ndarray:
    # The front is the 21 discrete points (i/20, 1 - i/20).  Requests beyond
    # 21 return the full set; smaller k picks evenly spaced indices.
    full = np.arange(21)
    if k >= 21:
        idx = full
    else:
        idx = np.round(np.linspace(0, 20, k)).astype(int)
    t = idx / 20.0
    return np.column_stack([t, 1.0 - t])


def _pf_uf6(k: int) -> np.ndarray:
    # Isolated point (0, 1) plus two segments f1 in [1/4, 1/2] and [3/4, 1]
    # on the line f2 = 1 - f1 (N = 2).  The cumulative f1-length is 1/2.
    pts = []
    for u in np.linspace(0.0, 1.0, k):
        if u == 0.0:
            pts.append((0.0, 1.0))
            continue
        p = u * 0.5
        f1 = 0.25 + p if p <= 0.25 else 0.75 + (p - 0.25)
        pts.append((f1, 1.0 - f1))
    return np.array(pts)


def _secondary_sequence(k: int) -> np.ndarray:
    # Low-discrepancy secondary parameter; endpoints pinned so that k = 2
    # hits the front's corners.
    v = np.mod(np.arange(k) * _GOLDEN, 1.0)
    v[0] = 0.0
    v[-1] = 1.0
    return v


def _pf_sphere(k: int) -> np.ndarray:
    # Unit-sphere octant: the whole octant is Pareto-optimal (UF8, UF10).
    u = np.linspace(0.0, 1.0, k)
    v = _secondary_sequence(k)
    t1 = 0.5 * np.pi * u
    t2 = 0.5 * np.pi * v
    return np.column_stack(
        [np.cos(t1) * np.cos(t2), np.cos(t1) * np.sin(t2), np.sin(t1)]
    )


def _pf_uf9(k: int) -> np.ndarray:
    # Two planar sheets: f1 = a*(1 - f3), f2 = (1 - a)*(1 - f3) with
    # a in [0, 1/4] or [3/4, 1].
    u = np.linspace(0.0, 1.0, k)
    v = _secondary_sequence(k)
    x2 = 1.0 - u
    a = np.where(v <= 0.5, 0.5 * v, 0.75 + 0.5 * (v - 0.5))
    return np.column_stack([a * x2, (1.0 - a) * x2, 1.0 - x2])


_PF_SAMPLERS = {
    "UF1": _pf_sqrt,
    "UF2": _pf_sqrt,
    "UF3": _pf_sqrt,
    "UF4": _pf_quadratic,
    "UF5": _pf_uf5,
    "UF6": _pf_uf6,
    "UF7": _pf_linear,
    "UF8": _pf_sphere,
    "UF9": _pf_uf9,
    "UF10": _pf_sphere,
}


def sample_pareto_front(problem: UFProblem, k: int) -> np.ndarray:
    """Sample the theoretical Pareto front as a (k, m) array.

    UF5's front is 21 discrete points, so k is capped there.
    """
    if k < 2:
        raise ValueError(f"need at least 2 reference points, got {k}")
    if problem.id not in _PF_SAMPLERS:
        raise ValueError(f"unsupported problem id: {problem.id!r}")
    return _PF_SAMPLERS[problem.id](k)
