"""
Geometry value types for the space-form toolkit
Points, tangent vectors, lines, circles, digons, triangles and polygons
"""

import json
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Tuple

import numpy as np

from config import EPS_MEM
from spaceform.errors import DomainError
from spaceform.kappa_kernel import Kappa, to_kappa

# Diagonal of the bilinear form <.,.>_kappa on embedded 3-vectors
METRIC_SIGNATURE = {
    Kappa.SPHERICAL: np.array([1.0, 1.0, 1.0]),
    Kappa.EUCLIDEAN: np.array([1.0, 1.0, 1.0]),
    Kappa.HYPERBOLIC: np.array([1.0, 1.0, -1.0]),
}


def bilinear(k: Kappa, a, b) -> float:
    return float(np.dot(METRIC_SIGNATURE[k] * np.asarray(a, dtype=float), np.asarray(b, dtype=float)))


def membership_residual(k: Kappa, vec) -> float:
    """How far an embedded vector is from the model surface"""
    x, y, z = (float(c) for c in vec)
    if k == Kappa.SPHERICAL:
        return abs(x * x + y * y + z * z - 1.0)
    if k == Kappa.HYPERBOLIC:
        return abs(x * x + y * y - z * z + 1.0)
    return abs(z - 1.0)


@dataclass(frozen=True)
class SurfacePoint:
    """A point of the model surface in embedded coordinates"""
    x: float
    y: float
    z: float
    kappa: Kappa

    def __post_init__(self):
        k = to_kappa(self.kappa)
        object.__setattr__(self, "kappa", k)
        for name in ("x", "y", "z"):
            object.__setattr__(self, name, float(getattr(self, name)))
        if not all(math.isfinite(c) for c in (self.x, self.y, self.z)):
            raise DomainError(f"SurfacePoint: non-finite coordinates ({self.x}, {self.y}, {self.z})")
        if k == Kappa.EUCLIDEAN:
            if self.z != 1.0:
                raise DomainError(f"SurfacePoint: plane points need z = 1, got z = {self.z}")
            return
        scale = max(1.0, self.x * self.x + self.y * self.y + self.z * self.z)
        if membership_residual(k, self.vector) > EPS_MEM * scale:
            raise DomainError(f"SurfacePoint: ({self.x}, {self.y}, {self.z}) is not on the kappa={int(k)} surface")
        if k == Kappa.HYPERBOLIC and self.z <= 0.0:
            raise DomainError(f"SurfacePoint: hyperboloid points need z > 0, got z = {self.z}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def to_list(self) -> List[float]:
        return [self.x, self.y, self.z]

    def to_dict(self) -> Dict[str, Any]:
        return {"x": self.x, "y": self.y, "z": self.z, "kappa": int(self.kappa)}


@dataclass(frozen=True)
class TangentVector:
    """A vector tangent to the surface at its base point"""
    base: SurfacePoint
    u: float
    v: float
    w: float

    def __post_init__(self):
        for name in ("u", "v", "w"):
            object.__setattr__(self, name, float(getattr(self, name)))
        k = self.base.kappa
        if k == Kappa.EUCLIDEAN:
            if abs(self.w) > EPS_MEM:
                raise DomainError(f"TangentVector: plane tangents need w = 0, got w = {self.w}")
            return
        scale = max(1.0, float(np.linalg.norm(self.vector) * np.linalg.norm(self.base.vector)))
        if abs(bilinear(k, self.vector, self.base.vector)) > EPS_MEM * scale:
            raise DomainError(f"TangentVector: ({self.u}, {self.v}, {self.w}) is not tangent at {self.base.to_list()}")

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.u, self.v, self.w])

    @property
    def kappa(self) -> Kappa:
        return self.base.kappa

    def norm(self) -> float:
        squared = bilinear(self.kappa, self.vector, self.vector)
        return math.sqrt(squared) if squared > 0.0 else 0.0


@dataclass(frozen=True)
class Line:
    """Geodesic line {x : <x, n> = 0}; for kappa=0 the plane slice z=1 is used"""
    normal: Tuple[float, float, float]
    kappa: Kappa

    def __post_init__(self):
        k = to_kappa(self.kappa)
        object.__setattr__(self, "kappa", k)
        n = tuple(float(c) for c in self.normal)
        object.__setattr__(self, "normal", n)
        if k == Kappa.EUCLIDEAN:
            planar = math.hypot(n[0], n[1])
            if abs(planar - 1.0) > EPS_MEM:
                raise DomainError(f"Line: plane normals need unit (n1, n2), got {n}")
        elif k == Kappa.SPHERICAL:
            if abs(float(np.linalg.norm(n)) - 1.0) > EPS_MEM:
                raise DomainError(f"Line: sphere normals must be Euclidean unit vectors, got {n}")
        elif abs(bilinear(k, n, n) - 1.0) > EPS_MEM:
            raise DomainError(f"Line: hyperboloid normals must be spacelike with <n,n> = 1, got {n}")

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.normal)

    def to_dict(self) -> Dict[str, Any]:
        return {"normal": list(self.normal), "kappa": int(self.kappa)}


@dataclass(frozen=True)
class Circle:
    """Geodesic circle of radius r about a center"""
    center: SurfacePoint
    radius: float

    def __post_init__(self):
        r = float(self.radius)
        object.__setattr__(self, "radius", r)
        if not math.isfinite(r) or r <= 0.0:
            raise DomainError(f"Circle: radius must be positive, got {r}")
        if self.kappa == Kappa.SPHERICAL and r >= math.pi:
            raise DomainError(f"Circle: spherical radius must be below pi, got {r}")

    @property
    def kappa(self) -> Kappa:
        return self.center.kappa


@dataclass(frozen=True)
class Digon:
    """Spherical lune bounded by two half great circles meeting at the apex"""
    apex: SurfacePoint
    angle: float

    def __post_init__(self):
        if self.apex.kappa != Kappa.SPHERICAL:
            raise DomainError("Digon: digons exist on the sphere only")
        angle = float(self.angle)
        object.__setattr__(self, "angle", angle)
        if not 0.0 <= angle <= math.pi:
            raise DomainError(f"Digon: angle must lie in [0, pi], got {angle}")


@dataclass(frozen=True)
class Triangle:
    """Triangle with vertices P, Q, R; side a is opposite P (angle alpha)"""
    P: SurfacePoint
    Q: SurfacePoint
    R: SurfacePoint
    a: float
    b: float
    c: float
    alpha: float
    beta: float
    gamma: float
    area: float
    kappa: Kappa

    @property
    def sides(self) -> Tuple[float, float, float]:
        return (self.a, self.b, self.c)

    @property
    def angles(self) -> Tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    @property
    def vertices(self) -> Tuple[SurfacePoint, SurfacePoint, SurfacePoint]:
        return (self.P, self.Q, self.R)

    @property
    def semiperimeter(self) -> float:
        return (self.a + self.b + self.c) / 2.0

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "kappa": int(self.kappa),
            "vertices": [p.to_list() for p in self.vertices],
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "alpha": self.alpha,
            "beta": self.beta,
            "gamma": self.gamma,
            "area": self.area,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class GeodesicPolygon:
    """Cyclically ordered vertices of a positively oriented geodesic polygon"""
    vertices: Tuple[SurfacePoint, ...]
    kappa: Kappa

    def __post_init__(self):
        object.__setattr__(self, "kappa", to_kappa(self.kappa))
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if len(self.vertices) < 3:
            raise DomainError(f"GeodesicPolygon: need at least 3 vertices, got {len(self.vertices)}")
        if any(p.kappa != self.kappa for p in self.vertices):
            raise DomainError("GeodesicPolygon: all vertices must lie on the same surface")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def coordinates(self) -> np.ndarray:
        return np.array([p.to_list() for p in self.vertices])

    def to_dict(self) -> Dict[str, Any]:
        return {"kappa": int(self.kappa), "vertices": [p.to_list() for p in self.vertices]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class RegularNGon:
    """Regular n-gon inscribed in the circle of radius r about the base point"""
    n: int
    r: float
    side: float
    angle: float
    area: float
    kappa: Kappa
    vertices: Tuple[SurfacePoint, ...] = field(default=())

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "kappa": int(self.kappa),
            "n": int(self.n),
            "r": self.r,
            "side": self.side,
            "angle": self.angle,
            "area": self.area,
            "vertices": [p.to_list() for p in self.vertices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)
