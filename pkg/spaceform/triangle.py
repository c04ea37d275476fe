"""
Triangle solvers
Laws of cosine and sine, three area formulas, half-angle formulas, congruence,
isosceles constructions and the area maximizer with two fixed sides
"""

import logging
import math
from itertools import permutations
from typing import Tuple

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from config import EPS_CONG, GOLDEN_DELTA, GOLDEN_TOL, ROOT_RTOL, ROOT_XTOL
from spaceform.errors import DomainError, InfeasibleError, UsageError
from spaceform.kappa_kernel import Kappa, ac_kappa, as_kappa, at_kappa, c_kappa, ct_kappa, s_kappa, t_kappa, to_kappa
from spaceform.models.geometry_models import SurfacePoint, Triangle
from spaceform.surface import angle_at, base_point, direction_at, distance, geodesic

logger = logging.getLogger(__name__)

HALF_ANGLE_TAGS = ("B-1", "B-2", "B-3", "B-4", "B-5", "B-6", "B-7", "B-8")
CRITERIA = ("SSS", "SAS", "ASA", "AAA")


def _check_sides(k: Kappa, a: float, b: float, c: float) -> None:
    sides = (a, b, c)
    if not all(math.isfinite(x) for x in sides):
        raise DomainError(f"non-finite side lengths {sides}")
    if min(sides) <= 0.0:
        raise InfeasibleError(f"side lengths must be positive, got {sides}")
    if a >= b + c or b >= a + c or c >= a + b:
        raise InfeasibleError(f"sides {sides} violate the strict triangle inequality")
    if k == Kappa.SPHERICAL and a + b + c >= 2.0 * math.pi:
        raise InfeasibleError(f"spherical triangle perimeter {a + b + c} must be below 2 pi")


def _check_angle(name: str, angle: float) -> None:
    if not math.isfinite(angle) or not 0.0 < angle < math.pi:
        raise DomainError(f"{name} must lie in (0, pi), got {angle}")


def _check_two_sides(k: Kappa, a: float, b: float) -> None:
    if not (math.isfinite(a) and math.isfinite(b)) or a <= 0.0 or b <= 0.0:
        raise DomainError(f"sides must be positive, got ({a}, {b})")
    if k == Kappa.SPHERICAL and (a >= math.pi or b >= math.pi):
        raise DomainError(f"spherical sides must be below pi, got ({a}, {b})")


def side_from_sas(k, a: float, b: float, gamma: float) -> float:
    """Side c opposite the included angle gamma between sides a and b"""
    k = to_kappa(k)
    _check_two_sides(k, a, b)
    _check_angle("gamma", gamma)
    # half-chord form of the law of cosines: S(c/2)^2 = S((a-b)/2)^2 + S(a) S(b) sin^2(gamma/2)
    half = s_kappa(k, (a - b) / 2.0) ** 2 + s_kappa(k, a) * s_kappa(k, b) * math.sin(gamma / 2.0) ** 2
    return 2.0 * as_kappa(k, math.sqrt(half))


def angles_from_sss(k, a: float, b: float, c: float) -> Tuple[float, float, float]:
    """Angles (alpha, beta, gamma) opposite sides (a, b, c)"""
    k = to_kappa(k)
    _check_sides(k, a, b, c)
    s = (a + b + c) / 2.0
    S = lambda t: s_kappa(k, t)

    def half_angle(opposite: float, x: float, y: float) -> float:
        return 2.0 * math.atan2(math.sqrt(S(s - x) * S(s - y)), math.sqrt(S(s) * S(s - opposite)))

    return half_angle(a, b, c), half_angle(b, a, c), half_angle(c, a, b)


def angle_from_sides_cos(k, a: float, b: float, c: float) -> float:
    """Angle gamma opposite c from the cosine rule solved for the angle"""
    k = to_kappa(k)
    _check_sides(k, a, b, c)
    if k == Kappa.EUCLIDEAN:
        cosine = (a * a + b * b - c * c) / (2.0 * a * b)
    else:
        cosine = (c_kappa(k, c) - c_kappa(k, a) * c_kappa(k, b)) / (k * s_kappa(k, a) * s_kappa(k, b))
    return ac_kappa(Kappa.SPHERICAL, cosine)


def area_heron(k, a: float, b: float, c: float) -> float:
    """Area from three sides via the generalized Heron formula"""
    k = to_kappa(k)
    _check_sides(k, a, b, c)
    s = (a + b + c) / 2.0
    product = (t_kappa(k, s / 2.0) * t_kappa(k, (s - a) / 2.0)
               * t_kappa(k, (s - b) / 2.0) * t_kappa(k, (s - c) / 2.0))
    return 4.0 * at_kappa(abs(int(k)), math.sqrt(product))


def area_sas(k, a: float, b: float, gamma: float) -> float:
    """Area from two sides and the included angle"""
    k = to_kappa(k)
    _check_two_sides(k, a, b)
    _check_angle("gamma", gamma)
    sin_g = math.sin(gamma)
    weight = sin_g ** 2 if k == Kappa.EUCLIDEAN else 1.0
    cot_half = (ct_kappa(k, a / 2.0) * ct_kappa(k, b / 2.0) * weight + k * math.cos(gamma)) / sin_g
    if k == Kappa.EUCLIDEAN:
        return 2.0 * cot_half
    return 2.0 * math.atan2(1.0, cot_half)


def area_from_angles(k, alpha: float, beta: float, gamma: float) -> float:
    """Angle excess (sphere) or defect (hyperbolic plane)"""
    k = to_kappa(k)
    if k == Kappa.EUCLIDEAN:
        raise UsageError("area_from_angles: a planar triangle's area is not determined by its angles")
    area = k * (alpha + beta + gamma - math.pi)
    if area <= 0.0:
        raise DomainError(f"area_from_angles: angle sum {alpha + beta + gamma} is on the wrong side of pi for kappa={int(k)}")
    return area


def _place(k: Kappa, b: float, c: float, alpha: float) -> Tuple[SurfacePoint, SurfacePoint, SurfacePoint]:
    """P at p0, Q along the first coordinate geodesic, R turned left by alpha"""
    P = base_point(k)
    Q = geodesic(P, direction_at(P, 0.0), c)
    R = geodesic(P, direction_at(P, alpha), b)
    return P, Q, R


def triangle_from_vertices(P: SurfacePoint, Q: SurfacePoint, R: SurfacePoint) -> Triangle:
    """Measure sides, angles and area of the triangle PQR"""
    k = P.kappa
    a, b, c = distance(Q, R), distance(P, R), distance(P, Q)
    _check_sides(k, a, b, c)
    alpha = angle_at(P, Q, R)
    beta = angle_at(Q, R, P)
    gamma = angle_at(R, P, Q)
    return Triangle(P, Q, R, a, b, c, alpha, beta, gamma, area_heron(k, a, b, c), k)


def triangle_from_sss(k, a: float, b: float, c: float) -> Triangle:
    k = to_kappa(k)
    alpha, beta, gamma = angles_from_sss(k, a, b, c)
    P, Q, R = _place(k, b, c, alpha)
    return Triangle(P, Q, R, a, b, c, alpha, beta, gamma, area_heron(k, a, b, c), k)


def triangle_from_sas(k, a: float, b: float, gamma: float) -> Triangle:
    """Triangle with sides a, b enclosing angle gamma at R"""
    k = to_kappa(k)
    c = side_from_sas(k, a, b, gamma)
    alpha, beta, _ = angles_from_sss(k, a, b, c)
    P, Q, R = _place(k, b, c, alpha)
    return Triangle(P, Q, R, a, b, c, alpha, beta, gamma, area_sas(k, a, b, gamma), k)


def triangle_from_asa(k, alpha: float, c: float, beta: float) -> Triangle:
    """Triangle with angles alpha at P and beta at Q on the side PQ = c"""
    k = to_kappa(k)
    _check_angle("alpha", alpha)
    _check_angle("beta", beta)
    if not math.isfinite(c) or c <= 0.0 or (k == Kappa.SPHERICAL and c >= math.pi):
        raise DomainError(f"side c out of range: {c}")

    if k == Kappa.EUCLIDEAN:
        gamma = math.pi - alpha - beta
        if gamma <= 0.0:
            raise InfeasibleError(f"planar angles {alpha} + {beta} leave no room for a third angle")
        a = c * math.sin(alpha) / math.sin(gamma)
        b = c * math.sin(beta) / math.sin(gamma)
    else:
        cos_gamma = -math.cos(alpha) * math.cos(beta) + math.sin(alpha) * math.sin(beta) * c_kappa(k, c)
        if not -1.0 < cos_gamma < 1.0:
            raise InfeasibleError(f"no kappa={int(k)} triangle has angles {alpha}, {beta} on a side of length {c}")
        gamma = math.acos(cos_gamma)
        sin_gamma = math.sin(gamma)
        sa = s_kappa(k, c) * math.sin(alpha) / sin_gamma
        sb = s_kappa(k, c) * math.sin(beta) / sin_gamma
        ca = (math.cos(alpha) + math.cos(beta) * cos_gamma) / (math.sin(beta) * sin_gamma)
        cb = (math.cos(beta) + math.cos(alpha) * cos_gamma) / (math.sin(alpha) * sin_gamma)
        if k == Kappa.SPHERICAL:
            a, b = math.atan2(sa, ca), math.atan2(sb, cb)
        else:
            a, b = math.asinh(sa), math.asinh(sb)

    _check_sides(k, a, b, c)
    P, Q, R = _place(k, b, c, alpha)
    area = area_sas(k, a, b, gamma)
    return Triangle(P, Q, R, a, b, c, alpha, beta, gamma, area, k)


def law_of_sines_ratios(tri: Triangle) -> Tuple[float, float, float, float]:
    """sin(angle)/S(side) for the three vertices, and the closed form they share"""
    k = tri.kappa
    a, b, c = tri.sides
    s = tri.semiperimeter
    S = lambda t: s_kappa(k, t)
    closed = 2.0 * math.sqrt(S(s) * S(s - a) * S(s - b) * S(s - c)) / (S(a) * S(b) * S(c))
    return (math.sin(tri.alpha) / S(a), math.sin(tri.beta) / S(b), math.sin(tri.gamma) / S(c), closed)


def half_angle_residual(tag: str, tri: Triangle) -> float:
    """LHS - RHS of a half-angle formula evaluated on a triangle"""
    if tag not in HALF_ANGLE_TAGS:
        raise UsageError(f"unknown half-angle tag {tag!r}; expected one of {', '.join(HALF_ANGLE_TAGS)}")
    k = tri.kappa
    if tag in ("B-4", "B-5", "B-6", "B-7") and k == Kappa.EUCLIDEAN:
        raise UsageError(f"{tag} is stated for kappa = +1 or -1 only")
    a, b, c = tri.sides
    alpha, beta, gamma = tri.angles
    s = tri.semiperimeter
    S = lambda t: s_kappa(k, t)
    C = lambda t: c_kappa(k, t)

    if tag == "B-1":
        return math.sin(gamma / 2) - math.sqrt(S(s - a) * S(s - b) / (S(a) * S(b)))
    if tag == "B-2":
        return math.cos(gamma / 2) - math.sqrt(S(s) * S(s - c) / (S(a) * S(b)))
    if tag == "B-3":
        *ratios, closed = law_of_sines_ratios(tri)
        deviations = [r - closed for r in ratios]
        return max(deviations, key=abs)
    if tag == "B-4":
        return math.sin((alpha + beta) / 2) - math.cos(gamma / 2) * C((a - b) / 2) / C(c / 2)
    if tag == "B-5":
        return math.sin((alpha - beta) / 2) - math.cos(gamma / 2) * S((a - b) / 2) / S(c / 2)
    if tag == "B-6":
        return math.cos((alpha + beta) / 2) - math.sin(gamma / 2) * C((a + b) / 2) / C(c / 2)
    if tag == "B-7":
        return math.cos((alpha - beta) / 2) - math.sin(gamma / 2) * S((a + b) / 2) / S(c / 2)
    if k == Kappa.EUCLIDEAN:
        return math.cos(gamma) - (a * a + b * b - c * c) / (2 * a * b)
    return math.cos(gamma) - (C(c) - C(a) * C(b)) / (k * S(a) * S(b))


def sas_area_identity_residual(tri: Triangle) -> float:
    """Largest deviation in sin(A/2) C(c/2) = S(a/2) S(b/2) sin(gamma) and its cosine companion"""
    k = tri.kappa
    if k == Kappa.EUCLIDEAN:
        raise UsageError("sas_area_identity_residual is stated for kappa = +1 or -1 only")
    a, b, c = tri.sides
    S = lambda t: s_kappa(k, t)
    C = lambda t: c_kappa(k, t)
    half = tri.area / 2.0
    sine_form = math.sin(half) * C(c / 2) - S(a / 2) * S(b / 2) * math.sin(tri.gamma)
    cosine_form = (math.cos(half) * C(c / 2)
                   - (C(a / 2) * C(b / 2) + k * S(a / 2) * S(b / 2) * math.cos(tri.gamma)))
    return max(abs(sine_form), abs(cosine_form))


def _criterion_matches(criterion: str, sides1, angles1, sides2, angles2, eps: float) -> bool:
    close = lambda x, y: abs(x - y) <= eps
    if criterion == "SSS":
        return all(close(x, y) for x, y in zip(sides1, sides2))
    if criterion == "AAA":
        return all(close(x, y) for x, y in zip(angles1, angles2))
    if criterion == "SAS":
        # angle at the first vertex and its two adjacent sides
        return close(angles1[0], angles2[0]) and close(sides1[1], sides2[1]) and close(sides1[2], sides2[2])
    # angles at the first two vertices and the side between them
    return close(angles1[0], angles2[0]) and close(angles1[1], angles2[1]) and close(sides1[2], sides2[2])


def congruence_decide(t1: Triangle, t2: Triangle, criterion: str, eps: float = EPS_CONG) -> bool:
    """True iff the named data agree under one of the six vertex correspondences"""
    criterion = criterion.upper()
    if criterion not in CRITERIA:
        raise UsageError(f"unknown congruence criterion {criterion!r}; expected one of {', '.join(CRITERIA)}")
    if t1.kappa != t2.kappa:
        raise DomainError("congruence_decide: triangles lie on different surfaces")
    if criterion == "AAA" and t1.kappa == Kappa.EUCLIDEAN:
        raise UsageError("congruence_decide: AAA does not decide congruence in the plane")

    for perm in permutations(range(3)):
        sides2 = [t2.sides[i] for i in perm]
        angles2 = [t2.angles[i] for i in perm]
        if _criterion_matches(criterion, t1.sides, t1.angles, sides2, angles2, eps):
            return True
    return False


def isosceles_max_base_angle(k, a: float) -> float:
    """Supremum of base angles of isosceles triangles with base a"""
    k = to_kappa(k)
    if not math.isfinite(a) or a <= 0.0 or (k == Kappa.SPHERICAL and a >= math.pi):
        raise DomainError(f"isosceles_max_base_angle: base out of range: {a}")
    if k == Kappa.EUCLIDEAN:
        return math.pi / 2.0
    if k == Kappa.SPHERICAL:
        return math.pi
    return math.acos(math.tanh(a / 2.0))


def _isosceles(k: Kappa, a: float, alpha: float, slant: float) -> Triangle:
    P = base_point(k)
    Q = geodesic(P, direction_at(P, 0.0), a)
    R = geodesic(P, direction_at(P, alpha), slant)
    return triangle_from_vertices(P, Q, R)


def isosceles_from_base_and_slant(k, a: float, s: float) -> Triangle:
    """Isosceles triangle with base a and both legs s - a/2 (perimeter 2s)"""
    k = to_kappa(k)
    if not (math.isfinite(a) and math.isfinite(s)) or not 0.0 < a < s:
        raise InfeasibleError(f"isosceles_from_base_and_slant: need 0 < a < s, got a={a}, s={s}")
    if k == Kappa.SPHERICAL and s >= math.pi:
        raise InfeasibleError(f"isosceles_from_base_and_slant: spherical semiperimeter must be below pi, got {s}")
    slant = s - a / 2.0
    if k == Kappa.EUCLIDEAN:
        ratio = (a / 2.0) / slant
    else:
        ratio = (s_kappa(k, a / 2.0) * c_kappa(k, slant)) / (c_kappa(k, a / 2.0) * s_kappa(k, slant))
    if not -1.0 < ratio < 1.0:
        raise InfeasibleError(f"isosceles_from_base_and_slant: no triangle with base {a} and legs {slant}")
    return _isosceles(k, a, math.acos(ratio), slant)


def isosceles_from_base_and_angle(k, a: float, alpha: float) -> Triangle:
    """Isosceles triangle with base a and base angles alpha"""
    k = to_kappa(k)
    limit = isosceles_max_base_angle(k, a)
    if not 0.0 < alpha < limit:
        raise InfeasibleError(f"isosceles_from_base_and_angle: base angle must lie in (0, {limit}), got {alpha}")
    if k == Kappa.SPHERICAL:
        slant = math.atan2(math.tan(a / 2.0), math.cos(alpha))
    else:
        slant = at_kappa(k, t_kappa(k, a / 2.0) / math.cos(alpha))
    return _isosceles(k, a, alpha, slant)


def max_area_triangle_two_sides(k, a: float, b: float, tol: float = GOLDEN_TOL,
                                delta: float = GOLDEN_DELTA) -> Tuple[float, float, Triangle]:
    """Included angle maximizing the area for fixed sides a and b"""
    k = to_kappa(k)
    _check_two_sides(k, a, b)
    if k == Kappa.SPHERICAL and a + b >= math.pi:
        raise DomainError(f"max_area_triangle_two_sides: spherical sides need a + b < pi, got {a + b}")

    low, high = delta, math.pi - delta
    search = minimize_scalar(lambda g: -area_sas(k, a, b, g),
                             bracket=(low, math.pi / 2.0, high), method="golden", tol=tol)
    gamma_star = float(np.clip(search.x, low, high))

    # stationarity of cot(A/2): kappa + CT(a/2) CT(b/2) cos(gamma) = 0
    weight = ct_kappa(k, a / 2.0) * ct_kappa(k, b / 2.0)
    slope = lambda g: k + weight * math.cos(g)
    left, right = max(low, gamma_star - 1e-4), min(high, gamma_star + 1e-4)
    if slope(left) * slope(right) < 0.0:
        polished = brentq(slope, left, right, xtol=ROOT_XTOL, rtol=ROOT_RTOL)
        logger.debug(f"golden-section gamma {gamma_star!r} polished to {polished!r}")
        gamma_star = polished

    tri = triangle_from_sas(k, a, b, gamma_star)
    return gamma_star, tri.area, tri


def isosceles_dominates_area(k, a: float, s0: float, b: float, c: float, eps: float = EPS_CONG) -> bool:
    """The isosceles triangle with base a and perimeter 2 s0 has the larger area"""
    k = to_kappa(k)
    if abs(b + c - (2.0 * s0 - a)) > eps:
        raise InfeasibleError(f"isosceles_dominates_area: b + c = {b + c} differs from 2 s0 - a = {2.0 * s0 - a}")
    _check_sides(k, a, b, c)
    leg = s0 - a / 2.0
    _check_sides(k, a, leg, leg)
    return area_heron(k, a, b, c) <= area_heron(k, a, leg, leg) + 1e-12
