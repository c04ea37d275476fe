"""
Regular n-gons inscribed in a circle about p0
Side, angle and area as functions of (n, r), their inverses, and the
circle limit as n grows
"""

import logging
import math
from typing import Optional, Tuple

from scipy.optimize import brentq

from config import EPS_BOUNDARY, N_CAP, ROOT_RTOL, ROOT_XTOL
from spaceform.errors import DomainError, InfeasibleError, UsageError
from spaceform.kappa_kernel import Kappa, ac_kappa, as_kappa, c_kappa, s_kappa, to_kappa
from spaceform.models.geometry_models import Circle, RegularNGon
from spaceform.surface import base_point, point_on_circle

logger = logging.getLogger(__name__)

_TINY_RADIUS = 1e-300


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 3:
        raise DomainError(f"a regular polygon needs an integer n >= 3, got {n!r}")
    if n > N_CAP:
        raise DomainError(f"n = {n} exceeds the cap {N_CAP}")
    return int(n)


def _check_radius(k: Kappa, r: float) -> None:
    if not math.isfinite(r) or r <= 0.0:
        raise DomainError(f"circumradius must be positive, got {r}")
    if k == Kappa.SPHERICAL and r > math.pi / 2.0:
        raise DomainError(f"spherical circumradius must not exceed pi/2, got {r}")


def area_range(k, n: int) -> Tuple[float, float]:
    """Open interval of areas attained by convex n-gons"""
    k = to_kappa(k)
    n = _check_n(n)
    if k == Kappa.SPHERICAL:
        return 0.0, 2.0 * math.pi
    if k == Kappa.HYPERBOLIC:
        return 0.0, (n - 2) * math.pi
    return 0.0, math.inf


def side_length(k, n: int, r: float) -> float:
    k = to_kappa(k)
    return 2.0 * as_kappa(k, s_kappa(k, r) * math.sin(math.pi / n))


def _half_angle(k: Kappa, n: int, r: float) -> float:
    # arctan(cot(pi/n) / C(r)), written with atan2 so that C(r) = 0 gives pi/2
    return math.atan2(1.0 / math.tan(math.pi / n), c_kappa(k, r))


def vertex_angle(k, n: int, r: float) -> float:
    k = to_kappa(k)
    if k == Kappa.EUCLIDEAN:
        return (n - 2) * math.pi / n
    return 2.0 * _half_angle(k, n, r)


def ngon_area(k, n: int, r: float) -> float:
    k = to_kappa(k)
    if k == Kappa.EUCLIDEAN:
        return n * r * r / 2.0 * math.sin(2.0 * math.pi / n)
    return k * (2.0 * n * _half_angle(k, n, r) - (n - 2) * math.pi)


def build(k, n: int, r: float) -> RegularNGon:
    """Regular n-gon with vertices equally spaced on the circle of radius r about p0"""
    k = to_kappa(k)
    n = _check_n(n)
    _check_radius(k, r)
    circle = Circle(base_point(k), r)
    vertices = tuple(point_on_circle(circle, 2.0 * math.pi * i / n) for i in range(n))
    return RegularNGon(
        n=n,
        r=float(r),
        side=side_length(k, n, r),
        angle=vertex_angle(k, n, r),
        area=ngon_area(k, n, r),
        kappa=k,
        vertices=vertices,
    )


def radius_from_side(k, n: int, a: float) -> float:
    """Circumradius of the regular n-gon with side a"""
    k = to_kappa(k)
    n = _check_n(n)
    if not math.isfinite(a) or a <= 0.0:
        raise InfeasibleError(f"radius_from_side: side must be positive, got {a}")
    if k == Kappa.SPHERICAL and a >= 2.0 * math.pi / n:
        raise InfeasibleError(f"radius_from_side: spherical {n}-gon sides must be below 2 pi/{n}, got {a}")
    try:
        return as_kappa(k, s_kappa(k, a / 2.0) / math.sin(math.pi / n))
    except DomainError as e:
        raise InfeasibleError(f"radius_from_side: side {a} is not attainable for n = {n}") from e


def radius_from_angle(k, n: int, theta: float) -> float:
    """Circumradius of the regular n-gon with vertex angle theta (kappa != 0)"""
    k = to_kappa(k)
    n = _check_n(n)
    if k == Kappa.EUCLIDEAN:
        raise UsageError("radius_from_angle: in the plane the vertex angle does not determine the radius")
    if not math.isfinite(theta) or not 0.0 < theta <= math.pi:
        raise InfeasibleError(f"radius_from_angle: angle must lie in (0, pi], got {theta}")
    argument = (1.0 / math.tan(math.pi / n)) / math.tan(theta / 2.0)
    try:
        r = ac_kappa(k, argument)
    except DomainError as e:
        side = "above" if k == Kappa.SPHERICAL else "below"
        raise InfeasibleError(
            f"radius_from_angle: kappa={int(k)} regular {n}-gon angles must lie {side} {(n - 2) * math.pi / n}, got {theta}") from e
    if r <= 0.0:
        raise InfeasibleError(f"radius_from_angle: angle {theta} is the flat angle and gives a degenerate polygon")
    return r


def _check_area(k: Kappa, n: int, A: float) -> None:
    low, high = area_range(k, n)
    if not math.isfinite(A) or A <= low:
        raise InfeasibleError(f"area must be positive, got {A}")
    if k == Kappa.SPHERICAL and A > high:
        raise InfeasibleError(f"spherical area must not exceed 2 pi, got {A}")
    if k == Kappa.HYPERBOLIC and A >= high - EPS_BOUNDARY:
        raise InfeasibleError(f"hyperbolic {n}-gon area must stay below {(n - 2)} pi - {EPS_BOUNDARY}, got {A}")


def radius_from_area(k, n: int, A: float) -> float:
    """Circumradius of the regular n-gon with area A"""
    k = to_kappa(k)
    n = _check_n(n)
    _check_area(k, n, A)
    if k == Kappa.EUCLIDEAN:
        return math.sqrt(2.0 * A / (n * math.sin(2.0 * math.pi / n)))

    low, high = area_range(k, n)
    if k == Kappa.SPHERICAL and A == high:
        return math.pi / 2.0
    if A - low < EPS_BOUNDARY or high - A < EPS_BOUNDARY:
        r_max = math.pi / 2.0 if k == Kappa.SPHERICAL else _hyperbolic_radius_bound(n, A)
        excess = lambda r: ngon_area(k, n, r) - A
        if excess(r_max) <= 0.0:
            return r_max
        if excess(_TINY_RADIUS) < 0.0:
            logger.debug(f"radius_from_area: A={A} near the range boundary, solving the forward map")
            return brentq(excess, _TINY_RADIUS, r_max, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=500)

    argument = (1.0 / math.tan(math.pi / n)) * math.tan((2.0 * math.pi - k * A) / (2.0 * n))
    return ac_kappa(k, argument)


def _hyperbolic_radius_bound(n: int, A: float) -> float:
    r = 1.0
    while ngon_area(Kappa.HYPERBOLIC, n, r) < A:
        r *= 2.0
    return r


def solve(k, n: int, r: Optional[float] = None, side: Optional[float] = None,
          angle: Optional[float] = None, area: Optional[float] = None) -> RegularNGon:
    """Build the regular n-gon fixed by exactly one of r, side, angle, area"""
    given = {name: value for name, value in (("r", r), ("side", side), ("angle", angle), ("area", area))
             if value is not None}
    if len(given) != 1:
        raise UsageError(f"give exactly one of r, side, angle, area; got {sorted(given) or 'none'}")
    if side is not None:
        r = radius_from_side(k, n, side)
    elif angle is not None:
        r = radius_from_angle(k, n, angle)
    elif area is not None:
        r = radius_from_area(k, n, area)
    return build(k, n, r)


def circle_limit(k, A_target: float, n: int) -> Tuple[float, float]:
    """Circumradius and perimeter of the regular n-gon of area A_target"""
    k = to_kappa(k)
    r_n = radius_from_area(k, n, A_target)
    return r_n, n * side_length(k, n, r_n)
