"""Similitude IFS data model, map application, and attractor sampling.

2D points are plain Python complex numbers; 3D points are float64 NumPy
vectors of shape (3,).  A map is a contraction ``z -> p + phi*(z - p)`` in
the plane (``phi = lam * exp(i*theta)``, ``0 < lam < 1``) or
``z -> p + lam * R @ (z - p)`` in space with ``R`` a proper rotation.

Address words are tuples of 1-based map indices; word ``(w1, ..., wL)``
names the composition that applies map ``wL`` first and map ``w1`` last.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .rng import SplitMix64

DEFAULT_NODE_BUDGET = 10**6
DEFAULT_BURN_IN = 20

Point = Union[complex, np.ndarray]
AddressWord = tuple  # tuple of 1-based map indices


class NodeBudgetExceeded(RuntimeError):
    """Raised when a tree enumeration would produce more leaves than allowed."""


def _as_point3(value) -> np.ndarray:
    v = np.asarray(value, dtype=float)
    if v.shape != (3,):
        raise ValueError(f"expected a 3-vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("non-finite coordinate")
    v = v.copy()
    v.setflags(write=False)
    return v


@dataclass(frozen=True)
class Similitude2:
    """Plane contraction ``z -> p + phi*(z - p)`` with fixed point ``p``."""

    p: complex
    phi: complex

    def __post_init__(self):
        object.__setattr__(self, "p", complex(self.p))
        object.__setattr__(self, "phi", complex(self.phi))
        if not (cmath.isfinite(self.p) and cmath.isfinite(self.phi)):
            raise ValueError("non-finite map parameter")
        if not 0.0 < abs(self.phi) < 1.0:
            raise ValueError(f"|phi| = {abs(self.phi)} is not in (0, 1)")

    @property
    def lam(self) -> float:
        """Contraction factor |phi|."""
        return abs(self.phi)

    @property
    def theta(self) -> float:
        """Rotation angle arg(phi) in (-pi, pi]."""
        return cmath.phase(self.phi)

    @property
    def dim(self) -> int:
        return 2

    def apply(self, z: complex) -> complex:
        return self.p + self.phi * (z - self.p)


@dataclass(frozen=True)
class Similitude3:
    """Space contraction ``z -> p + lam * R @ (z - p)``.

    ``rot`` must already be a proper rotation; raw matrices are validated,
    not repaired.  Use :meth:`from_axis_angle` to build one safely.
    """

    p: np.ndarray
    lam: float
    rot: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p", _as_point3(self.p))
        object.__setattr__(self, "lam", float(self.lam))
        rot = np.asarray(self.rot, dtype=float)
        if rot.shape != (3, 3):
            raise ValueError("rotation must be a 3x3 matrix")
        if np.max(np.abs(rot.T @ rot - np.eye(3))) > 1e-12:
            raise ValueError("rotation matrix is not orthogonal to 1e-12")
        if np.linalg.det(rot) < 0.0:
            raise ValueError("rotation matrix has negative determinant")
        rot = rot.copy()
        rot.setflags(write=False)
        object.__setattr__(self, "rot", rot)
        if not 0.0 < self.lam < 1.0:
            raise ValueError(f"lam = {self.lam} is not in (0, 1)")

    @classmethod
    def from_axis_angle(cls, p, lam: float, axis, angle: float) -> "Similitude3":
        """Build with a Rodrigues rotation about ``axis`` by ``angle`` radians."""
        a = np.asarray(axis, dtype=float)
        norm = float(np.linalg.norm(a))
        if norm == 0.0 or not np.isfinite(norm):
            raise ValueError("rotation axis must be a nonzero finite vector")
        x, y, z = a / norm
        c, s = math.cos(angle), math.sin(angle)
        t = 1.0 - c
        rot = np.array(
            [
                [t * x * x + c, t * x * y - s * z, t * x * z + s * y],
                [t * x * y + s * z, t * y * y + c, t * y * z - s * x],
                [t * x * z - s * y, t * y * z + s * x, t * z * z + c],
            ]
        )
        return cls(p=p, lam=lam, rot=rot)

    @property
    def dim(self) -> int:
        return 3

    def apply(self, z: np.ndarray) -> np.ndarray:
        return self.p + self.lam * (self.rot @ (np.asarray(z, dtype=float) - self.p))


Similitude = Union[Similitude2, Similitude3]


@dataclass(frozen=True)
class IfsSystem:
    """Ordered, dimension-homogeneous list of similitudes."""

    maps: tuple

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("an IFS needs at least one map")
        dims = {m.dim for m in maps}
        if len(dims) != 1:
            raise ValueError("all maps must share one dimension")
        for m in maps:
            if not isinstance(m, (Similitude2, Similitude3)):
                raise TypeError(f"not a similitude: {m!r}")
        object.__setattr__(self, "maps", maps)

    @property
    def n(self) -> int:
        return len(self.maps)

    @property
    def dim(self) -> int:
        return self.maps[0].dim

    @property
    def fixed_points(self) -> tuple:
        return tuple(m.p for m in self.maps)

    @property
    def lambda_star(self) -> float:
        """Largest contraction factor of the system."""
        return max(m.lam for m in self.maps)


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed disk (2D) or closed ball (3D): center plus nonnegative radius."""

    c: Point
    r: float

    def __post_init__(self):
        if isinstance(self.c, (complex, float, int)):
            object.__setattr__(self, "c", complex(self.c))
            if not cmath.isfinite(self.c):
                raise ValueError("non-finite center")
        else:
            object.__setattr__(self, "c", _as_point3(self.c))
        object.__setattr__(self, "r", float(self.r))
        if not (self.r >= 0.0 and math.isfinite(self.r)):
            raise ValueError(f"radius must be finite and >= 0, got {self.r}")

    @property
    def dim(self) -> int:
        return 2 if isinstance(self.c, complex) else 3


def point_dim(z: Point) -> int:
    return 2 if isinstance(z, (complex, float, int)) else 3


def dist(a: Point, b: Point) -> float:
    """Euclidean distance, dimension-aware."""
    if isinstance(a, (complex, float, int)):
        return abs(complex(a) - complex(b))
    return float(np.linalg.norm(np.asarray(a, float) - np.asarray(b, float)))


def apply_map(m: Similitude, z: Point) -> Point:
    """Image of a single point under one similitude."""
    if m.dim != point_dim(z):
        raise ValueError("map and point dimensions differ")
    return m.apply(z)


def apply_map_ball(m: Similitude, b: Ball) -> Ball:
    """Exact image of a ball: a similitude sends B(c, r) onto B(T(c), lam*r)."""
    if m.dim != b.dim:
        raise ValueError("map and ball dimensions differ")
    return Ball(m.apply(b.c), m.lam * b.r)


def hutchinson_balls(ifs: IfsSystem, balls: Sequence[Ball]) -> list:
    """Images of every input ball under every map, map-major order."""
    return [apply_map_ball(m, b) for m in ifs.maps for b in balls]


def apply_word(ifs: IfsSystem, word: Iterable[int], z: Point):
    """Apply the composed map named by an address word.

    Returns ``(point, factor)`` where ``factor`` is the accumulated
    contraction of the composition (product of the per-map factors).
    The empty word is the identity.
    """
    word = tuple(word)
    n = ifs.n
    for k in word:
        if not 1 <= k <= n:
            raise IndexError(f"word index {k} out of range 1..{n}")
    factor = 1.0
    for k in reversed(word):
        m = ifs.maps[k - 1]
        z = m.apply(z)
        factor *= m.lam
    return z, factor


def _check_budget(leaves: int, budget: int) -> None:
    if leaves > budget:
        raise NodeBudgetExceeded(
            f"enumeration would produce {leaves} leaves, budget is {budget}; "
            "lower the depth or raise the budget"
        )


def address_points(
    ifs: IfsSystem,
    depth: int,
    budget: int = DEFAULT_NODE_BUDGET,
    dedupe: bool = True,
) -> np.ndarray:
    """All images of the fixed points under depth-``depth`` compositions.

    Every returned point is an exact member of the attractor (the attractor
    contains the fixed points and is invariant under every map).  Output is
    a complex array (2D) or an (N, 3) float array (3D).  With ``dedupe``
    the points are sorted and exact duplicates removed, which gives a
    deterministic set; ``dedupe=False`` keeps the raw map-major multiset,
    useful when only aggregate statistics are needed from large depths.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    n = ifs.n
    _check_budget(n ** (depth + 1), budget)
    if ifs.dim == 2:
        pts = np.array(ifs.fixed_points, dtype=complex)
        for _ in range(depth):
            pts = np.concatenate([m.p + m.phi * (pts - m.p) for m in ifs.maps])
        return np.unique(pts) if dedupe else pts
    pts = np.array([m.p for m in ifs.maps], dtype=float)
    for _ in range(depth):
        pts = np.concatenate(
            [m.p + m.lam * ((pts - m.p) @ m.rot.T) for m in ifs.maps]
        )
    return np.unique(pts, axis=0) if dedupe else pts


def chaos_game(
    ifs: IfsSystem,
    count: int,
    seed: int,
    burn_in: int = DEFAULT_BURN_IN,
) -> np.ndarray:
    """Random-iteration sample of the attractor, bit-reproducible per seed.

    Starts at the first fixed point (a member of the attractor, so every
    iterate stays on the attractor up to rounding), applies uniformly
    chosen maps driven by the splitmix64 stream of ``seed``, discards
    ``burn_in`` iterates, and returns the next ``count`` points.
    """
    if count < 0:
        raise ValueError("count must be >= 0")
    if burn_in < 0:
        raise ValueError("burn_in must be >= 0")
    gen = SplitMix64(seed)
    n = ifs.n
    z = ifs.maps[0].p
    for _ in range(burn_in):
        z = ifs.maps[gen.index(n)].apply(z)
    if ifs.dim == 2:
        out = np.empty(count, dtype=complex)
        for i in range(count):
            z = ifs.maps[gen.index(n)].apply(z)
            out[i] = z
        return out
    out = np.empty((count, 3), dtype=float)
    for i in range(count):
        z = ifs.maps[gen.index(n)].apply(z)
        out[i] = z
    return out
