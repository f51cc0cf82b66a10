"""Final-approximation quality indicators: exact hypervolume and IGD."""

import warnings

import numpy as np
from scipy.spatial.distance import cdist

from .core import rank_objectives


def filter_nondominated(points) -> np.ndarray:
    """The mutually non-dominated subset, duplicates collapsed, order preserved."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.size == 0:
        raise ValueError("empty point set")
    ranks = rank_objectives(P)
    seen: dict[tuple, None] = {}
    for i in np.nonzero(ranks == 0)[0]:
        seen.setdefault(tuple(P[i]), None)
    return np.array(list(seen), dtype=float)


def hypervolume(points, ref) -> float:
    """Lebesgue measure of the region dominated by `points` and bounded by `ref`.

    Points that do not strictly dominate the reference point are discarded
    first; an empty remainder yields 0 with a warning.  Exact: a sweep for
    two objectives, WFG-style exclusive-volume recursion otherwise.
    """
    ref = np.asarray(ref, dtype=float)
    P = np.atleast_2d(np.asarray(points, dtype=float))
    if P.shape[1] != ref.shape[0]:
        raise ValueError(f"points have {P.shape[1]} objectives, ref has {ref.shape[0]}")
    P = P[(P < ref[None, :]).all(axis=1)]
    if P.shape[0] == 0:
        warnings.warn("no points strictly dominate the reference point; hypervolume is 0")
        return 0.0
    P = filter_nondominated(P)
    if ref.shape[0] == 2:
        return _hv_sweep_2d(P, ref)
    return _hv_wfg(P, ref)


def _hv_sweep_2d(P: np.ndarray, ref: np.ndarray) -> float:
    # Non-dominated 2D points sorted by f1 ascending have f2 descending.
    P = P[np.argsort(P[:, 0], kind="stable")]
    total = 0.0
    for i in range(P.shape[0]):
        right = P[i + 1, 0] if i + 1 < P.shape[0] else ref[0]
        total += (right - P[i, 0]) * (ref[1] - P[i, 1])
    return total


def _hv_wfg(P: np.ndarray, ref: np.ndarray) -> float:
    P = P[np.argsort(P[:, 0], kind="stable")]
    total = 0.0
    for i in range(P.shape[0]):
        total += _exclusive(P[i], P[i + 1 :], ref)
    return total


def _exclusive(p: np.ndarray, S: np.ndarray, ref: np.ndarray) -> float:
    box = float(np.prod(ref - p))
    if S.shape[0] == 0:
        return box
    limited = np.maximum(S, p)
    limited = filter_nondominated(limited)
    return box - _hv_wfg(limited, ref)


def igd(points, front) -> float:
    """Mean distance from each reference-front point to its nearest
    approximation point (lower is better)."""
    P = np.atleast_2d(np.asarray(points, dtype=float))
    R = np.atleast_2d(np.asarray(front, dtype=float))
    if P.size == 0 or R.size == 0:
        raise ValueError("igd needs non-empty approximation and reference sets")
    return float(cdist(R, P).min(axis=1).mean())
