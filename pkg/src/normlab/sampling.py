"""Deterministic direction and grid generators.

All generators are pure functions of (dimension, count, seed), so any report
built on them is reproducible bit-for-bit.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.stats import norm, qmc

GOLDEN_FRAC = (math.sqrt(5.0) - 1.0) / 2.0


def sphere_directions(n: int, count: int, seed: int = 0) -> np.ndarray:
    """`count` unit vectors in C^n, shape (count, n).

    The set is tuned for estimating sup_{|v|=1} |<g, v>| over a fixed linear
    functional g, which is invariant under a global phase of v:

    - n = 1: equispaced phases (the functional's modulus is phase-invariant,
      so any single direction is already exact);
    - n = 2: Hopf lifts of a Fibonacci lattice on S^2, i.e. a low-discrepancy
      sweep of the phase-quotient CP^1 (plain sampling of S^3 would waste
      budget on the irrelevant global phase);
    - n >= 3: scrambled Sobol points pushed through the Gaussian map and
      normalized.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if n == 1:
        phases = 2.0 * math.pi * np.arange(count) / count
        return np.exp(1j * phases).reshape(count, 1)
    if n == 2:
        k = np.arange(count)
        cos_theta = 1.0 - (2.0 * k + 1.0) / count
        theta = np.arccos(np.clip(cos_theta, -1.0, 1.0))
        phi = math.pi * (3.0 - math.sqrt(5.0)) * k
        v = np.empty((count, 2), dtype=complex)
        v[:, 0] = np.cos(theta / 2.0)
        v[:, 1] = np.sin(theta / 2.0) * np.exp(1j * phi)
        return v
    sob = qmc.Sobol(d=2 * n, scramble=True, seed=seed)
    u = sob.random(count)
    g = norm.ppf(np.clip(u, 1e-12, 1.0 - 1e-12))
    v = g[:, :n] + 1j * g[:, n:]
    norms = np.linalg.norm(v, axis=1, keepdims=True)
    norms[norms == 0] = 1.0
    return v / norms


def scan_rays(n: int, count: int, seed: int = 0) -> np.ndarray:
    """Unit rays used to place scan points: the signed real coordinate
    directions first (so axis-aligned boundary approaches are always probed),
    then a low-discrepancy fill."""
    rays = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        rays.append(e.copy())
        if len(rays) < count:
            rays.append(-e)
        if len(rays) >= count:
            break
    if len(rays) < count:
        fill = sphere_directions(n, count - len(rays), seed + 7919)
        rays.extend(fill)
    return np.asarray(rays[:count])


def ball_grid(n: int, radius: float, grid_size: int, seed: int = 0) -> np.ndarray:
    """Deterministic covering of the closed ball |zeta| <= radius in C^n.

    Concentric spheres at radii k/m * radius, the origin included first.  The
    outermost shell always contains +/- radius * e_1 exactly, so suprema of
    affine functions are attained on the grid.  Returns shape (N, n).
    """
    if radius <= 0:
        raise ValueError("radius must be positive")
    if grid_size < 2:
        raise ValueError("grid_size must be at least 2")
    n_rings = max(2, int(round(math.sqrt(grid_size))))
    per_ring = max(4, -(-grid_size // n_rings))
    if per_ring % 2:
        per_ring += 1
    points = [np.zeros(n, dtype=complex)]
    if n == 1:
        for k in range(1, n_rings + 1):
            r = radius * k / n_rings
            # outermost ring anchored at angle 0 so +/-r are on the grid
            offset = 0.0 if k == n_rings else GOLDEN_FRAC * k
            angles = 2.0 * math.pi * (np.arange(per_ring) + offset) / per_ring
            points.extend((r * np.exp(1j * a)).reshape(1) for a in angles)
    else:
        dirs = scan_rays(n, per_ring, seed)
        for k in range(1, n_rings + 1):
            r = radius * k / n_rings
            points.extend(r * d for d in dirs)
    return np.asarray(points)
