"""Weight-vector generation and the weighted Tchebycheff scalarization.

Two deterministic constructions are provided: the simplex-lattice design used
to define the optimizer's subproblems, and a uniform-design (good lattice
point) set used for the small number of trajectory-tracking vectors, which
must support an arbitrary explicit count.
"""

import math
from typing import Sequence

import numpy as np

WeightVector = tuple[float, ...]


def _lattice_size(h: int, m: int) -> int:
    return math.comb(h + m - 1, m - 1)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, parts - 1):
            yield (head,) + tail


def sld_weights(m: int, target: int) -> list[WeightVector]:
    """Simplex-lattice design: the largest lattice with at most `target` vectors.

    For m = 2 the lattice of parameter H has H + 1 vectors, so the count is
    exact; for m = 3 the closest lattice size below the target is returned
    (e.g. target 250 yields 231 vectors with H = 20).
    """
    if target < m:
        raise ValueError(f"target {target} below objective count {m}")
    h = 1
    while _lattice_size(h + 1, m) <= target:
        h += 1
    return [tuple(i / h for i in comp) for comp in _compositions(h, m)]


def _centered_lattice(n: int, s: int) -> np.ndarray:
    """Centered good-lattice-point set: n points in [0, 1)^s.

    The generating vector is (1, g, g^2, ...) mod n with g chosen among the
    residues coprime to n by minimizing the centered L2 discrepancy.
    """
    if n == 1:
        return np.full((1, s), 0.5)
    base = np.arange(1, n + 1) * 2 - 1  # odd numerators 1, 3, ..., 2n-1
    if s == 1:
        return (base / (2.0 * n)).reshape(-1, 1)
    candidates = [g for g in range(2, n) if math.gcd(g, n) == 1] or [1]
    best_u = None
    best_d = math.inf
    for g in candidates:
        h = np.array([pow(g, j, n) for j in range(s)])
        u = ((base[:, None] * h[None, :]) % (2 * n)) / (2.0 * n)
        d = _centered_discrepancy(u)
        if d < best_d - 1e-15:
            best_d, best_u = d, u
    return best_u


def _centered_discrepancy(u: np.ndarray) -> float:
    n, s = u.shape
    a = np.abs(u - 0.5)
    term1 = (13.0 / 12.0) ** s
    term2 = (2.0 / n) * np.prod(1.0 + 0.5 * a - 0.5 * a * a, axis=1).sum()
    prod = np.ones((n, n))
    for j in range(s):
        aj = a[:, j]
        prod *= 1.0 + 0.5 * aj[:, None] + 0.5 * aj[None, :] - 0.5 * np.abs(
            u[:, j][:, None] - u[:, j][None, :]
        )
    term3 = prod.sum() / (n * n)
    return term1 - term2 + term3


def _cube_to_simplex(row: np.ndarray, m: int) -> WeightVector:
    # Stick-breaking transform: uniform points in [0,1]^(m-1) map to uniform
    # points on the simplex.
    w = []
    rest = 1.0
    for j in range(m - 1):
        share = 1.0 - float(row[j]) ** (1.0 / (m - 1 - j))
        piece = share * rest
        w.append(piece)
        rest -= piece
    w.append(rest)
    return tuple(w)


def uniform_design_weights(m: int, n: int) -> list[WeightVector]:
    """Exactly n weight vectors spread over the m-simplex, deterministic in (m, n)."""
    if n < 1:
        raise ValueError(f"need at least one vector, got {n}")
    u = _centered_lattice(n, m - 1)
    rows = [_cube_to_simplex(u[i], m) for i in range(n)]
    return sorted(rows)


def tchebycheff(f: Sequence[float], w: Sequence[float], z: Sequence[float]) -> float:
    """Weighted Tchebycheff value max_i w_i * |f_i - z_i|."""
    if not (len(f) == len(w) == len(z)):
        raise ValueError(
            f"dimension mismatch: f has {len(f)}, w has {len(w)}, z has {len(z)}"
        )
    return max(wi * abs(fi - zi) for fi, wi, zi in zip(f, w, z))


def tchebycheff_scores(F: np.ndarray, w: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Row-wise Tchebycheff values for an (n, m) objective matrix."""
    return np.max(w[None, :] * np.abs(F - z[None, :]), axis=1)


class IdealPoint:
    """Componentwise minimum of every objective vector seen so far."""

    __slots__ = ("_z",)

    def __init__(self, m: int):
        self._z = np.full(m, np.inf)

    def update(self, f: Sequence[float]) -> None:
        np.minimum(self._z, f, out=self._z)

    def update_many(self, F: np.ndarray) -> None:
        np.minimum(self._z, F.min(axis=0), out=self._z)

    @property
    def z(self) -> tuple[float, ...]:
        return tuple(self._z.tolist())

    @property
    def array(self) -> np.ndarray:
        """Live view; callers must not mutate it."""
        return self._z
