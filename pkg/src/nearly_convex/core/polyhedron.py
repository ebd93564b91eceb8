"""Planar polyhedra in V-representation: conv(vertices) + cone(rays)."""

import itertools
import math
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator

from nearly_convex.core.constants import TOL_DEDUP, TOL_EQ
from nearly_convex.core.interval import INF, Interval


class Vec2(BaseModel):
    """A point or direction of R^2."""

    model_config = ConfigDict(frozen=True)

    x: float
    y: float

    @field_validator("x", "y")
    @classmethod
    def _finite(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("Vec2 components must be finite")
        return value

    @classmethod
    def of(cls, x: float, y: float) -> "Vec2":
        return cls(x=x, y=y)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y], dtype=float)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(x=self.x + other.x, y=self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(x=self.x - other.x, y=self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(x=-self.x, y=-self.y)


def _dedup(points: Iterable[Vec2], tol: float = TOL_DEDUP) -> Tuple[Vec2, ...]:
    kept: List[Vec2] = []
    for p in points:
        if not any(abs(p.x - q.x) <= tol and abs(p.y - q.y) <= tol for q in kept):
            kept.append(p)
    return tuple(kept)


class VPolyhedron2(BaseModel):
    """The set conv(vertices) + cone(rays) in R^2.

    Membership and slicing go through a finite family of candidate normals
    (edge normals, edge directions and the coordinate axes). In the plane
    every facet of such a set is a segment between two vertices or a ray
    leaving a vertex, so testing the support inequality on that family is
    exact.
    """

    model_config = ConfigDict(frozen=True)

    vertices: Tuple[Vec2, ...]
    rays: Tuple[Vec2, ...] = ()

    @field_validator("vertices")
    @classmethod
    def _check_vertices(cls, value: Tuple[Vec2, ...]) -> Tuple[Vec2, ...]:
        if not value:
            raise ValueError("a polyhedron needs at least one vertex")
        return _dedup(value)

    @field_validator("rays")
    @classmethod
    def _check_rays(cls, value: Tuple[Vec2, ...]) -> Tuple[Vec2, ...]:
        for r in value:
            if r.x == 0.0 and r.y == 0.0:
                raise ValueError("rays must be nonzero")
        unit = []
        for r in value:
            norm = math.hypot(r.x, r.y)
            # unit rays are kept bit for bit
            unit.append(r if abs(norm - 1.0) <= 1e-12 else Vec2(x=r.x / norm, y=r.y / norm))
        return _dedup(unit)

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_points(cls, vertices: Iterable[Tuple[float, float]],
                    rays: Iterable[Tuple[float, float]] = ()) -> "VPolyhedron2":
        return cls(
            vertices=tuple(Vec2(x=a, y=b) for a, b in vertices),
            rays=tuple(Vec2(x=a, y=b) for a, b in rays),
        )

    @classmethod
    def box(cls, x_lo: float, x_hi: float, y_lo: float, y_hi: float) -> "VPolyhedron2":
        return cls.from_points([(x_lo, y_lo), (x_hi, y_lo), (x_hi, y_hi), (x_lo, y_hi)])

    # ------------------------------------------------------------------
    # Arrays
    # ------------------------------------------------------------------
    @cached_property
    def vertex_array(self) -> np.ndarray:
        return np.array([[v.x, v.y] for v in self.vertices], dtype=float)

    @cached_property
    def ray_array(self) -> np.ndarray:
        if not self.rays:
            return np.zeros((0, 2))
        return np.array([[r.x, r.y] for r in self.rays], dtype=float)

    @cached_property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.vertex_array))))

    # ------------------------------------------------------------------
    # Support function
    # ------------------------------------------------------------------
    def support(self, w: Vec2) -> float:
        """sigma_P(w): +inf when some ray has positive product with w."""
        return float(self.support_many(np.array([[w.x, w.y]]))[0])

    def support_many(self, ws: np.ndarray) -> np.ndarray:
        """Vectorized support function over an (n, 2) array of directions."""
        ws = np.atleast_2d(np.asarray(ws, dtype=float))
        values = np.max(ws @ self.vertex_array.T, axis=1)
        if len(self.rays):
            ray_products = ws @ self.ray_array.T
            norms = np.linalg.norm(ws, axis=1, keepdims=True)
            unbounded = np.any(ray_products > TOL_DEDUP * np.maximum(norms, 1.0), axis=1)
            values = np.where(unbounded, INF, values)
        return values

    @cached_property
    def candidate_normals(self) -> np.ndarray:
        """Unit normals with finite support that cut out the set."""
        directions = [np.array([1.0, 0.0]), np.array([0.0, 1.0])]
        verts = self.vertex_array
        for i in range(len(verts)):
            for j in range(i + 1, len(verts)):
                directions.append(verts[j] - verts[i])
        directions.extend(self.ray_array)
        normals = []
        for d in directions:
            n = float(np.hypot(d[0], d[1]))
            if n <= TOL_DEDUP:
                continue
            d = d / n
            perp = np.array([-d[1], d[0]])
            normals.extend([d, -d, perp, -perp])
        arr = np.unique(np.round(np.array(normals), 12), axis=0)
        finite = np.isfinite(self.support_many(arr))
        return arr[finite]

    @cached_property
    def _candidate_support(self) -> np.ndarray:
        return self.support_many(self.candidate_normals) if len(self.candidate_normals) else np.zeros(0)

    # ------------------------------------------------------------------
    # Membership and slices
    # ------------------------------------------------------------------
    def contains(self, q: Vec2, tol: float = TOL_EQ) -> bool:
        if not len(self.candidate_normals):
            return True
        lhs = self.candidate_normals @ np.array([q.x, q.y])
        return bool(np.all(lhs <= self._candidate_support + tol * self.scale))

    @cached_property
    def _hull_mask(self) -> np.ndarray:
        """Candidate normals whose supporting line contains the whole set."""
        normals = self.candidate_normals
        if not len(normals):
            return np.zeros(0, dtype=bool)
        opposite = self.support_many(-normals)
        return np.isfinite(opposite) & (np.abs(self._candidate_support + opposite) <= TOL_EQ * self.scale)

    def in_relative_interior(self, q: Vec2, tol: float = TOL_EQ) -> bool:
        """q in ri(P): inside, and strictly inside every non-hull constraint."""
        if not self.contains(q, tol):
            return False
        normals = self.candidate_normals
        if not len(normals):
            return True
        lhs = normals @ np.array([q.x, q.y])
        strict = lhs < self._candidate_support - tol * self.scale
        return bool(np.all(strict | self._hull_mask))

    def x_range(self) -> Interval:
        """Projection of the set on the first axis."""
        hi = self.support(Vec2(x=1.0, y=0.0))
        lo = -self.support(Vec2(x=-1.0, y=0.0))
        return Interval(lo=lo, hi=hi)

    def slice_at(self, x: float, tol: float = TOL_EQ) -> Interval:
        """The vertical section {y : (x, y) in P} as a closed interval."""
        if not self.x_range().contains(x, tol * self.scale):
            return Interval.empty()
        normals = self.candidate_normals
        sigma = self._candidate_support
        lo, hi = -INF, INF
        for (w1, w2), s in zip(normals, sigma):
            if abs(w2) <= 1e-15:
                continue
            bound = (s - w1 * x) / w2
            if w2 > 0:
                hi = min(hi, bound)
            else:
                lo = max(lo, bound)
        if lo > hi and lo - hi <= tol * self.scale:
            mid = 0.5 * (lo + hi)
            lo = hi = mid
        return Interval(lo=lo, hi=hi)

    def sample_points(self) -> List[Vec2]:
        """Vertices, the centroid, midpoints and centroid-plus-ray points."""
        verts = self.vertex_array
        centroid = verts.mean(axis=0)
        pts = [centroid, *verts]
        for i in range(len(verts)):
            pts.append(0.5 * (verts[i] + centroid))
        for r in self.ray_array:
            pts.append(centroid + r)
            pts.append(verts[0] + 2.0 * r)
        if len(self.ray_array):
            pts.append(centroid + self.ray_array.sum(axis=0))
        return [Vec2(x=float(p[0]), y=float(p[1])) for p in pts]

    def relative_interior_point(self) -> Vec2:
        """A point of ri(P): the average of the sample points."""
        pts = np.array([[p.x, p.y] for p in self.sample_points()])
        avg = pts.mean(axis=0)
        return Vec2(x=float(avg[0]), y=float(avg[1]))

    def translate(self, shift: Vec2) -> "VPolyhedron2":
        return VPolyhedron2(vertices=tuple(v + shift for v in self.vertices), rays=self.rays)


def support_polyhedron(polyhedron: VPolyhedron2, w: Vec2) -> float:
    """Support function sigma_P(w) = sup{<w, p> : p in P}."""
    return polyhedron.support(w)


def common_relative_interior_point(polyhedra: Sequence[VPolyhedron2]) -> Optional[Vec2]:
    """A sampled point lying in ri of every polyhedron, or None.

    Candidates are every sample point, every pairwise midpoint of the ri
    points and their average.
    """
    centers = [p.relative_interior_point() for p in polyhedra]
    samples: List[Vec2] = list(centers)
    for p in polyhedra:
        samples.extend(p.sample_points())
    for a, b in itertools.combinations(centers, 2):
        samples.append(Vec2(x=0.5 * (a.x + b.x), y=0.5 * (a.y + b.y)))
    samples.append(Vec2(x=float(np.mean([c.x for c in centers])), y=float(np.mean([c.y for c in centers]))))
    for q in samples:
        if all(p.in_relative_interior(q) for p in polyhedra):
            return q
    return None
