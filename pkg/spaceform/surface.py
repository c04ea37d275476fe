"""
Embedded model surfaces
Sphere x^2+y^2+z^2=1, upper hyperboloid x^2+y^2-z^2=-1 and the plane z=1:
distance, geodesics, lines, reflections, circles, hemispheres and isometries
"""

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import linprog

from config import EPS_ISO, EPS_MEM
from spaceform.errors import DegenerateInputError, DomainError, InfeasibleError, UsageError
from spaceform.kappa_kernel import Kappa, ac_kappa, c_kappa, s_kappa, to_kappa
from spaceform.models.geometry_models import (
    METRIC_SIGNATURE,
    Circle,
    Line,
    SurfacePoint,
    TangentVector,
    bilinear,
)

logger = logging.getLogger(__name__)

# images closer than this to their target are left alone by the bisector construction
_SKIP_DISTANCE = 1e-11


def base_point(k) -> SurfacePoint:
    """The point p0 = (0, 0, 1) common to all three surfaces"""
    return SurfacePoint(0.0, 0.0, 1.0, to_kappa(k))


def inner(k, a, b) -> float:
    """Dot product for kappa in {0, 1}, Lorentz form (+,+,-) for kappa = -1"""
    return bilinear(to_kappa(k), a, b)


def project(k, vec) -> SurfacePoint:
    """Renormalize an embedded vector back onto the model surface"""
    k = to_kappa(k)
    v = np.asarray(vec, dtype=float)
    if k == Kappa.SPHERICAL:
        norm = float(np.linalg.norm(v))
        if norm == 0.0:
            raise DegenerateInputError("project: zero vector has no spherical projection")
        v = v / norm
        return SurfacePoint(v[0], v[1], v[2], k)
    if k == Kappa.HYPERBOLIC:
        return SurfacePoint(v[0], v[1], math.sqrt(1.0 + v[0] * v[0] + v[1] * v[1]), k)
    return SurfacePoint(v[0], v[1], 1.0, k)


def _same_surface(*points: SurfacePoint) -> Kappa:
    k = points[0].kappa
    if any(p.kappa != k for p in points):
        raise DomainError("points lie on different model surfaces")
    return k


def distance(p: SurfacePoint, q: SurfacePoint, eps_dom: Optional[float] = None) -> float:
    """Geodesic distance d_kappa(p, q)"""
    k = _same_surface(p, q)
    if k == Kappa.EUCLIDEAN:
        return math.hypot(p.x - q.x, p.y - q.y)
    # AC_kappa domain check on the closed-form argument
    ac_kappa(k, k * inner(k, p.vector, q.vector), eps_dom=eps_dom)
    if k == Kappa.SPHERICAL:
        cross = float(np.linalg.norm(np.cross(p.vector, q.vector)))
        return math.atan2(cross, float(np.dot(p.vector, q.vector)))
    diff = p.vector - q.vector
    chord = max(inner(k, diff, diff), 0.0)
    return 2.0 * math.asinh(math.sqrt(chord) / 2.0)


def tangent_at(p: SurfacePoint, vec) -> TangentVector:
    """Project an arbitrary 3-vector onto the tangent plane at p"""
    k = p.kappa
    v = np.asarray(vec, dtype=float)
    if k == Kappa.EUCLIDEAN:
        return TangentVector(p, v[0], v[1], 0.0)
    v = v - k * inner(k, v, p.vector) * p.vector
    return TangentVector(p, v[0], v[1], v[2])


def _unit(t: TangentVector) -> np.ndarray:
    norm = t.norm()
    if norm <= EPS_MEM:
        raise DegenerateInputError(f"null tangent vector ({t.u}, {t.v}, {t.w})")
    return t.vector / norm


def tangent_frame(p: SurfacePoint) -> Tuple[np.ndarray, np.ndarray]:
    """Positively oriented orthonormal basis of the tangent plane at p"""
    k = p.kappa
    if k == Kappa.EUCLIDEAN:
        return np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])
    seed = tangent_at(p, [1.0, 0.0, 0.0])
    if seed.norm() < 1e-3:
        seed = tangent_at(p, [0.0, 1.0, 0.0])
    e1 = _unit(seed)
    e2 = METRIC_SIGNATURE[k] * np.cross(p.vector, e1)
    e2 = e2 / math.sqrt(inner(k, e2, e2))
    return e1, e2


def direction_at(p: SurfacePoint, phi: float) -> TangentVector:
    """Unit tangent at p making angle phi with the first frame vector"""
    e1, e2 = tangent_frame(p)
    v = math.cos(phi) * e1 + math.sin(phi) * e2
    return TangentVector(p, v[0], v[1], v[2])


def rotate_tangent(v: TangentVector, phi: float) -> TangentVector:
    """Rotate a tangent vector counterclockwise by phi within its tangent plane"""
    p, k = v.base, v.kappa
    if k == Kappa.EUCLIDEAN:
        normal = np.array([-v.v, v.u, 0.0])
    else:
        normal = METRIC_SIGNATURE[k] * np.cross(p.vector, v.vector)
    rotated = math.cos(phi) * v.vector + math.sin(phi) * normal
    return tangent_at(p, rotated)


def geodesic(p: SurfacePoint, v: TangentVector, t: float) -> SurfacePoint:
    """Unit-speed geodesic C(t)^|kappa| p + S(t) v/|v| evaluated at t"""
    k = _same_surface(p, v.base)
    if not np.allclose(p.vector, v.base.vector, rtol=0.0, atol=EPS_MEM * max(1.0, float(np.abs(p.vector).max()))):
        raise DomainError("geodesic: tangent vector is based at a different point")
    u = _unit(v)
    point = c_kappa(k, t) ** abs(int(k)) * p.vector + s_kappa(k, t) * u
    return project(k, point)


def segment_direction(x: SurfacePoint, y: SurfacePoint) -> TangentVector:
    """Unit tangent at x pointing along the geodesic segment [x, y]"""
    k = _same_surface(x, y)
    if float(np.abs(x.vector - y.vector).max()) <= EPS_MEM:
        raise DegenerateInputError(f"segment_direction: coincident points {x.to_list()}")
    if k == Kappa.SPHERICAL and float(np.abs(x.vector + y.vector).max()) <= EPS_MEM:
        raise DegenerateInputError(f"segment_direction: antipodal points {x.to_list()} and {y.to_list()}")
    v = y.vector - k * inner(k, y.vector, x.vector) * x.vector + (abs(int(k)) - 1) * x.vector
    u = _unit(tangent_at(x, v))
    return TangentVector(x, u[0], u[1], u[2])


def vertex_turn(p: SurfacePoint, u: TangentVector, v: TangentVector) -> float:
    """Signed angle in (-pi, pi] from u to v in the tangent plane at p"""
    k = p.kappa
    det = float(np.linalg.det(np.array([p.vector, u.vector, v.vector])))
    return math.atan2(det, inner(k, u.vector, v.vector))


def angle_at(vertex: SurfacePoint, q: SurfacePoint, r: SurfacePoint) -> float:
    """Unsigned angle at vertex between the segments towards q and r"""
    return abs(vertex_turn(vertex, segment_direction(vertex, q), segment_direction(vertex, r)))


def make_line(k, normal) -> Line:
    """Normalize a raw normal vector into a Line for the given surface"""
    k = to_kappa(k)
    n = np.asarray(normal, dtype=float)
    if k == Kappa.EUCLIDEAN:
        planar = math.hypot(n[0], n[1])
        if planar <= EPS_MEM:
            raise DegenerateInputError(f"make_line: plane line needs (n1, n2) != 0, got {n.tolist()}")
        return Line(tuple(n / planar), k)
    if k == Kappa.SPHERICAL:
        norm = float(np.linalg.norm(n))
        if norm <= EPS_MEM:
            raise DegenerateInputError("make_line: zero normal")
        return Line(tuple(n / norm), k)
    squared = inner(k, n, n)
    if squared <= 0.0:
        raise DomainError(f"make_line: hyperboloid normal {n.tolist()} is not spacelike")
    norm = math.sqrt(squared)
    if norm <= EPS_MEM:
        raise DegenerateInputError(f"make_line: hyperboloid normal {n.tolist()} is too short")
    return Line(tuple(n / norm), k)


def line_through(p: SurfacePoint, q: SurfacePoint) -> Line:
    """The line containing two distinct, non-antipodal points"""
    k = _same_surface(p, q)
    if k == Kappa.EUCLIDEAN:
        dx, dy = q.x - p.x, q.y - p.y
        length = math.hypot(dx, dy)
        if length <= EPS_MEM:
            raise DegenerateInputError(f"line_through: coincident points {p.to_list()}")
        n1, n2 = -dy / length, dx / length
        return Line((n1, n2, -(n1 * p.x + n2 * p.y)), k)
    cross = np.cross(p.vector, q.vector)
    if float(np.linalg.norm(cross)) <= EPS_MEM:
        raise DegenerateInputError(f"line_through: points {p.to_list()} and {q.to_list()} do not span a line")
    return make_line(k, METRIC_SIGNATURE[k] * cross)


def perpendicular_bisector(p: SurfacePoint, q: SurfacePoint) -> Line:
    """The line of points equidistant from p and q"""
    k = _same_surface(p, q)
    diff = q.vector - p.vector
    if float(np.abs(diff).max()) <= EPS_MEM:
        raise DegenerateInputError(f"perpendicular_bisector: coincident points {p.to_list()}")
    if k == Kappa.EUCLIDEAN:
        length = math.hypot(diff[0], diff[1])
        n1, n2 = diff[0] / length, diff[1] / length
        mid_x, mid_y = (p.x + q.x) / 2.0, (p.y + q.y) / 2.0
        return Line((n1, n2, -(n1 * mid_x + n2 * mid_y)), k)
    return make_line(k, diff)


def _line_value(line: Line, p: SurfacePoint) -> float:
    n = line.vector
    if line.kappa == Kappa.EUCLIDEAN:
        return n[0] * p.x + n[1] * p.y + n[2]
    return inner(line.kappa, p.vector, n)


def half_space_side(line: Line, p: SurfacePoint, eps: float = EPS_MEM) -> int:
    """+1 or -1 for the open half-space containing p, 0 on the line"""
    if p.kappa != line.kappa:
        raise DomainError("half_space_side: point and line lie on different surfaces")
    value = _line_value(line, p)
    if abs(value) <= eps * max(1.0, float(np.abs(p.vector).max())):
        return 0
    return 1 if value > 0 else -1


def reflect(line: Line, p: SurfacePoint) -> SurfacePoint:
    """Reflection r(x) = x - 2 <x, n> n through a line"""
    k = line.kappa
    if p.kappa != k:
        raise DomainError("reflect: point and line lie on different surfaces")
    n = line.vector
    if k == Kappa.EUCLIDEAN:
        image = p.vector - 2.0 * _line_value(line, p) * np.array([n[0], n[1], 0.0])
    else:
        image = p.vector - 2.0 * inner(k, p.vector, n) * n
    return project(k, image)


@dataclass(frozen=True)
class Isometry:
    """Composition of reflections, applied in order"""
    kappa: Kappa
    reflections: Tuple[Line, ...] = ()

    def apply(self, p: SurfacePoint) -> SurfacePoint:
        for line in self.reflections:
            p = reflect(line, p)
        return p

    def __len__(self) -> int:
        return len(self.reflections)

    def to_dict(self) -> Dict[str, Any]:
        return {"kappa": int(self.kappa), "reflections": [line.to_dict() for line in self.reflections]}


def isometry_from_correspondence(pairs: Sequence[Tuple[SurfacePoint, SurfacePoint]],
                                 eps_iso: float = EPS_ISO) -> Isometry:
    """Reflections mapping each A_i to B_i, at most one per pair"""
    if not pairs:
        raise UsageError("isometry_from_correspondence: at least one point pair is required")
    k = _same_surface(*[p for pair in pairs for p in pair])

    for (i, (a_i, b_i)), (j, (a_j, b_j)) in combinations(enumerate(pairs), 2):
        source, target = distance(a_i, a_j), distance(b_i, b_j)
        if abs(source - target) > eps_iso:
            raise InfeasibleError(
                f"isometry_from_correspondence: d(A{i},A{j}) = {source:.12g} but d(B{i},B{j}) = {target:.12g}")

    images = [a for a, _ in pairs]
    reflections: List[Line] = []
    for i, (_, target) in enumerate(pairs):
        if distance(images[i], target) <= _SKIP_DISTANCE:
            continue
        mirror = perpendicular_bisector(images[i], target)
        images = [reflect(mirror, x) for x in images]
        reflections.append(mirror)

    logger.debug(f"isometry from {len(pairs)} pairs uses {len(reflections)} reflections")
    return Isometry(k, tuple(reflections))


def circle_area(c: Circle) -> float:
    """Area 4 pi S(r/2)^2 of the ball bounded by the circle"""
    return 4.0 * math.pi * s_kappa(c.kappa, c.radius / 2.0) ** 2


def circle_perimeter(c: Circle) -> float:
    """Length 2 pi S(r) of the circle"""
    return 2.0 * math.pi * s_kappa(c.kappa, c.radius)


def point_on_circle(c: Circle, phi: float) -> SurfacePoint:
    """Point of the circle at polar angle phi about its center"""
    return geodesic(c.center, direction_at(c.center, phi), c.radius)


def hemisphere_containing(points: Iterable[SurfacePoint], margin: float = 1e-12) -> Optional[np.ndarray]:
    """Unit n with <p, n> > 0 for every point, or None if no open hemisphere holds them all"""
    points = list(points)
    if not points:
        raise UsageError("hemisphere_containing: point list is empty")
    if any(p.kappa != Kappa.SPHERICAL for p in points):
        raise UsageError("hemisphere_containing: only defined on the sphere (kappa = 1)")
    P = np.array([p.to_list() for p in points])

    total = P.sum(axis=0)
    norm = float(np.linalg.norm(total))
    if norm > 0.0:
        candidate = total / norm
        if np.all(P @ candidate > 0.0):
            return candidate

    # maximize t subject to <p_i, n> >= t, |n_j| <= 1
    m = len(points)
    result = linprog(
        c=[0.0, 0.0, 0.0, -1.0],
        A_ub=np.hstack([-P, np.ones((m, 1))]),
        b_ub=np.zeros(m),
        bounds=[(-1.0, 1.0)] * 3 + [(None, 1.0)],
        method="highs",
    )
    if result.status != 0 or -result.fun <= margin:
        logger.debug(f"no open hemisphere contains the {m} points (lp status {result.status})")
        return None
    witness = result.x[:3] / float(np.linalg.norm(result.x[:3]))
    if np.all(P @ witness > 0.0):
        return witness
    return None
