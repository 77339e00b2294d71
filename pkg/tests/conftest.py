"""Shared test helpers: random system generators and independent oracles.

The brute-force smallest-ball solver here is deliberately written on a
different route than the library (itertools enumeration plus NumPy linear
algebra) so the two can check each other.
"""

from __future__ import annotations

import cmath
import math
from itertools import combinations

import numpy as np

from ifsbound import IfsSystem, Similitude2, Similitude3


# ---------------------------------------------------------------------------
# random systems
# ---------------------------------------------------------------------------


def random_ifs_2d(rng, n=None, lam_range=(0.1, 0.8), rotations=True):
    """Random plane system with fixed points in the unit square."""
    if n is None:
        n = int(rng.integers(2, 6))
    maps = []
    for _ in range(n):
        lam = float(rng.uniform(*lam_range))
        theta = float(rng.uniform(-math.pi, math.pi)) if rotations else 0.0
        p = complex(rng.uniform(0.0, 1.0), rng.uniform(0.0, 1.0))
        maps.append(Similitude2(p=p, phi=lam * cmath.exp(1j * theta)))
    return IfsSystem(maps=tuple(maps))


def random_ifs_3d(rng, n=None, lam_range=(0.1, 0.8)):
    """Random space system with fixed points in the unit cube."""
    if n is None:
        n = int(rng.integers(2, 6))
    maps = []
    for _ in range(n):
        lam = float(rng.uniform(*lam_range))
        axis = rng.normal(size=3)
        while np.linalg.norm(axis) < 1e-6:
            axis = rng.normal(size=3)
        angle = float(rng.uniform(-math.pi, math.pi))
        p = rng.uniform(0.0, 1.0, size=3)
        maps.append(Similitude3.from_axis_angle(p=p, lam=lam, axis=axis, angle=angle))
    return IfsSystem(maps=tuple(maps))


def cantor_ifs():
    return IfsSystem(maps=(Similitude2(p=0, phi=1 / 3), Similitude2(p=1, phi=1 / 3)))


def sierpinski_ifs():
    top = (1 + 1j * math.sqrt(3)) / 2
    return IfsSystem(
        maps=(
            Similitude2(p=0, phi=0.5),
            Similitude2(p=1, phi=0.5),
            Similitude2(p=top, phi=0.5),
        )
    )


def mixed_bifractal():
    """Two-map system with distinct real factors used in worked examples."""
    return IfsSystem(maps=(Similitude2(p=0, phi=0.5), Similitude2(p=1, phi=0.25)))


# ---------------------------------------------------------------------------
# brute-force smallest enclosing ball (independent oracle)
# ---------------------------------------------------------------------------


def _covers(center, radius, pts, tol):
    return all(np.linalg.norm(p - center) <= radius + tol for p in pts)


def _circumcenter_exact(subset):
    """Equidistant point of an affinely independent subset, or None."""
    base = subset[0]
    rows = np.array([2.0 * (q - base) for q in subset[1:]])
    rhs = np.array([np.dot(q - base, q - base) for q in subset[1:]])
    if len(rows) == 0:
        return base
    # least squares gives the minimum-norm offset, which lies in the affine
    # hull of the subset; reject rank-deficient (degenerate) subsets
    sol, residuals, rank, _ = np.linalg.lstsq(rows, rhs, rcond=None)
    if rank < len(rows):
        return None
    return base + sol


def brute_min_ball(points):
    """O(n^(d+2)) reference smallest enclosing ball.

    ``points`` is a sequence of complex numbers or length-2/3 vectors.
    Returns (center, radius) with center an ndarray.
    """
    first = points[0]
    if isinstance(first, (complex, float, int)):
        arr = [np.array([complex(p).real, complex(p).imag]) for p in points]
    else:
        arr = [np.asarray(p, dtype=float) for p in points]
    d = len(arr[0])
    tol = 1e-12 * (1.0 + max(float(np.linalg.norm(p)) for p in arr))
    best = None
    for size in range(1, d + 2):
        for subset in combinations(arr, size):
            if size == 1:
                center, radius = subset[0], 0.0
            elif size == 2:
                center = (subset[0] + subset[1]) / 2.0
                radius = float(np.linalg.norm(subset[0] - center))
            else:
                center = _circumcenter_exact(list(subset))
                if center is None:
                    continue
                radius = max(float(np.linalg.norm(q - center)) for q in subset)
            if _covers(center, radius, arr, tol):
                if best is None or radius < best[1]:
                    best = (center, radius)
    return best


def as_vec(z):
    """Complex or vector point to an ndarray."""
    if isinstance(z, (complex, float, int)):
        z = complex(z)
        return np.array([z.real, z.imag])
    return np.asarray(z, dtype=float)
