"""Differential-evolution mutation and polynomial mutation on box-bounded vectors."""

import numpy as np


def de_mutant(
    X: np.ndarray,
    pool: np.ndarray,
    f_scale: float,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """rand/1 mutant x_r1 + F * (x_r2 - x_r3), clipped to the box.

    r1, r2, r3 are three distinct indices drawn from `pool`.
    """
    pool = np.asarray(pool)
    if pool.size < 3:
        raise ValueError(f"DE needs at least 3 distinct pool members, got {pool.size}")
    r = rng.choice(pool, size=3, replace=False)
    y = X[r[0]] + f_scale * (X[r[1]] - X[r[2]])
    return np.clip(y, lower, upper)


def polynomial_mutation(
    x: np.ndarray,
    eta: float,
    prob: float,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
) -> np.ndarray:
    """Mutate each coordinate with probability `prob` via the polynomial distribution.

    Larger eta concentrates perturbations near zero.  Always draws one uniform
    per coordinate for the mutation mask, then one per mutated coordinate.
    """
    y = np.array(x, dtype=float)
    mask = rng.random(y.size) < prob
    if not mask.any():
        return y
    idx = np.nonzero(mask)[0]
    u = rng.random(idx.size)
    span = upper[idx] - lower[idx]
    d1 = (y[idx] - lower[idx]) / span
    d2 = (upper[idx] - y[idx]) / span
    mut_pow = 1.0 / (eta + 1.0)
    low = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1) ** (eta + 1.0)
    high = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2) ** (eta + 1.0)
    delta = np.where(u < 0.5, low**mut_pow - 1.0, 1.0 - high**mut_pow)
    y[idx] = np.clip(y[idx] + delta * span, lower[idx], upper[idx])
    return y
