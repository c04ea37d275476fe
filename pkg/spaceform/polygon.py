"""
Geodesic polygons
Construction and validation, perimeter, vertex angles, convexity, angle-sum
area, digons, Cauchy's arm lemma and the cyclic chain solver
"""

import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import brentq
from shapely.geometry import LinearRing, LineString, Polygon

from config import EPS_CONV, EPS_DOM, EPS_MEM, EPS_TURN, ROOT_RTOL, ROOT_XTOL
from spaceform.errors import DegenerateInputError, DomainError, InfeasibleError, UsageError
from spaceform.kappa_kernel import Kappa, as_kappa, s_kappa, to_kappa
from spaceform.models.geometry_models import Circle, Digon, GeodesicPolygon, SurfacePoint
from spaceform.surface import (
    base_point,
    direction_at,
    distance,
    geodesic,
    hemisphere_containing,
    point_on_circle,
    rotate_tangent,
    segment_direction,
    vertex_turn,
)

logger = logging.getLogger(__name__)


def chart_coordinates(points: Sequence[SurfacePoint], witness: Optional[np.ndarray] = None) -> np.ndarray:
    """Map points to a plane chart in which geodesics are straight lines

    Plane: (x, y). Hyperboloid: the projective chart (x/z, y/z). Sphere: the
    central projection from the hemisphere centered at ``witness``. All three
    charts preserve orientation.
    """
    k = points[0].kappa
    P = np.array([p.to_list() for p in points])
    if k == Kappa.EUCLIDEAN:
        return P[:, :2].copy()
    if k == Kappa.HYPERBOLIC:
        return P[:, :2] / P[:, 2:3]
    if witness is None:
        witness = hemisphere_containing(points)
        if witness is None:
            raise InfeasibleError("spherical points do not fit in an open hemisphere")
    n = np.asarray(witness, dtype=float)
    seed = np.array([1.0, 0.0, 0.0]) if abs(n[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = seed - np.dot(seed, n) * n
    e1 = e1 / np.linalg.norm(e1)
    e2 = np.cross(n, e1)
    depth = P @ n
    return np.column_stack([(P @ e1) / depth, (P @ e2) / depth])


def make_polygon(points: Sequence[SurfacePoint]) -> GeodesicPolygon:
    """Validate a closed vertex list and orient it positively"""
    points = list(points)
    if len(points) < 3:
        raise DomainError(f"make_polygon: need at least 3 vertices, got {len(points)}")
    k = points[0].kappa
    if any(p.kappa != k for p in points):
        raise DomainError("make_polygon: vertices lie on different surfaces")

    n = len(points)
    for i in range(n):
        p, q = points[i], points[(i + 1) % n]
        if float(np.abs(p.vector - q.vector).max()) <= EPS_MEM:
            raise DegenerateInputError(f"make_polygon: vertices {i} and {(i + 1) % n} coincide")

    witness = None
    if k == Kappa.SPHERICAL:
        for i in range(n):
            for j in range(i + 1, n):
                if float(np.abs(points[i].vector + points[j].vector).max()) <= EPS_MEM:
                    raise InfeasibleError(f"make_polygon: vertices {i} and {j} are antipodal")
        witness = hemisphere_containing(points)
        if witness is None:
            raise InfeasibleError("make_polygon: spherical polygon does not fit in an open hemisphere")

    ring = LinearRing(chart_coordinates(points, witness))
    if not ring.is_simple:
        raise InfeasibleError("make_polygon: boundary segments intersect")
    if not ring.is_ccw:
        points = points[::-1]
    return GeodesicPolygon(tuple(points), k)


def side_lengths(p: GeodesicPolygon) -> List[float]:
    n = p.n
    return [distance(p.vertices[i], p.vertices[(i + 1) % n]) for i in range(n)]


def perimeter(p: GeodesicPolygon) -> float:
    """Sum of the geodesic side lengths"""
    return float(sum(side_lengths(p)))


def vertex_angles(p: GeodesicPolygon) -> List[float]:
    """Interior angle at each vertex, in (0, 2 pi)"""
    n = p.n
    angles = []
    for i in range(n):
        prev, cur, nxt = p.vertices[i - 1], p.vertices[i], p.vertices[(i + 1) % n]
        turn = vertex_turn(cur, segment_direction(cur, nxt), segment_direction(cur, prev))
        if abs(turn) < EPS_TURN:
            raise DegenerateInputError(f"vertex_angles: incident sides at vertex {i} overlap")
        angles.append(turn if turn > 0.0 else turn + 2.0 * math.pi)
    return angles


def is_convex(p: GeodesicPolygon, eps_conv: float = EPS_CONV) -> bool:
    return all(theta < math.pi - eps_conv for theta in vertex_angles(p))


def area(p: GeodesicPolygon) -> float:
    """Enclosed area: shoelace in the plane, angle sum otherwise"""
    if p.kappa == Kappa.EUCLIDEAN:
        return float(Polygon(chart_coordinates(p.vertices)).area)
    angles = vertex_angles(p)
    if not all(theta < math.pi for theta in angles):
        raise UsageError("area: curved-surface area is only available for convex polygons; triangulate first")
    return p.kappa * (sum(angles) - (p.n - 2) * math.pi)


def digon_area(d: Digon) -> float:
    return 2.0 * d.angle


def split_by_diagonal(p: GeodesicPolygon, i: int, j: int) -> Tuple[GeodesicPolygon, GeodesicPolygon]:
    """Cut a polygon along the diagonal between vertices i and j"""
    n = p.n
    i, j = sorted((i % n, j % n))
    if j - i < 2 or (i == 0 and j == n - 1):
        raise UsageError(f"split_by_diagonal: vertices {i} and {j} are adjacent")
    first = p.vertices[i:j + 1]
    second = p.vertices[j:] + p.vertices[:i + 1]
    return make_polygon(first), make_polygon(second)


def _check_chain(k: Kappa, sides: Sequence[float], angles: Sequence[float]) -> None:
    if len(sides) < 2 or len(angles) != len(sides) - 1:
        raise UsageError(f"a chain of {len(sides)} sides needs {len(sides) - 1} interior angles, got {len(angles)}")
    if any(not math.isfinite(a) or a <= 0.0 for a in sides):
        raise DomainError(f"chain sides must be positive, got {list(sides)}")
    if any(not 0.0 < alpha < math.pi for alpha in angles):
        raise DomainError(f"chain angles must lie in (0, pi), got {list(angles)}")
    if k == Kappa.SPHERICAL and sum(sides) >= 2.0 * math.pi:
        raise DomainError(f"spherical chain length {sum(sides)} must be below 2 pi")


def chain_vertices(k, sides: Sequence[float], angles: Sequence[float]) -> List[SurfacePoint]:
    """Lay out a chain from p0 along the first coordinate geodesic, turning left at each joint"""
    k = to_kappa(k)
    _check_chain(k, sides, angles)
    vertices = [base_point(k)]
    heading = direction_at(vertices[0], 0.0)
    for index, side in enumerate(sides):
        vertices.append(geodesic(vertices[-1], heading, side))
        if index < len(angles):
            back = segment_direction(vertices[-1], vertices[-2])
            heading = rotate_tangent(back, -angles[index])
    return vertices


def arm_closing_length(k, sides: Sequence[float], angles: Sequence[float]) -> float:
    """Distance between the two ends of a convex chain"""
    k = to_kappa(k)
    vertices = chain_vertices(k, sides, angles)
    if not LineString(chart_coordinates(vertices)).is_simple:
        raise InfeasibleError("arm_closing_length: the chain intersects itself")
    return distance(vertices[0], vertices[-1])


def _central_angles(k: Kappa, sides: Sequence[float], r: float) -> float:
    ratio = np.array([s_kappa(k, a / 2.0) for a in sides]) / s_kappa(k, r)
    return float(np.sum(2.0 * as_kappa(Kappa.SPHERICAL, ratio)))


def cyclic_chain_radius(k, sides: Sequence[float]) -> float:
    """Radius of the circle carrying the chain with its closing side as a diameter"""
    k = to_kappa(k)
    sides = [float(a) for a in sides]
    if not sides or any(not math.isfinite(a) or a <= 0.0 for a in sides):
        raise DomainError(f"cyclic_chain_radius: sides must be positive, got {sides}")
    low = max(sides) / 2.0
    excess = lambda r: _central_angles(k, sides, r) - math.pi

    if k == Kappa.SPHERICAL:
        high = math.pi / 2.0
        total = sum(sides)
        if total > math.pi + EPS_DOM:
            raise InfeasibleError(f"cyclic_chain_radius: spherical chain length {total} exceeds pi")
        if abs(total - math.pi) <= EPS_DOM:
            return high
    else:
        high = 2.0 * low
        while excess(high) > 0.0:
            high *= 2.0
            if high > 1e6:
                raise InfeasibleError("cyclic_chain_radius: no radius closes the chain")

    if excess(low) <= 0.0:
        return low
    return brentq(excess, low, high, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)


def cyclic_chain_vertices(k, sides: Sequence[float]) -> List[SurfacePoint]:
    """Chain vertices on the circle from cyclic_chain_radius, first and last diametrically opposite"""
    k = to_kappa(k)
    r = cyclic_chain_radius(k, sides)
    circle = Circle(base_point(k), r)
    vertices = [point_on_circle(circle, 0.0)]
    polar = 0.0
    for a in sides:
        polar += 2.0 * float(as_kappa(Kappa.SPHERICAL, s_kappa(k, a / 2.0) / s_kappa(k, r)))
        vertices.append(point_on_circle(circle, polar))
    return vertices
