"""
Isoperimetric engine
Optimal circles, polygon deficits, the regular n-gon as perimeter minimizer,
multi-component reduction and a seeded local search that rediscovers it
"""

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
import psutil
from scipy.optimize import brentq, minimize

from config import (
    EPS_MEM,
    INITIAL_STEP,
    MAX_ITERATIONS,
    N_CAP,
    POLISH_MAX_ITERATIONS,
    POLISH_ROUNDS,
    POLISH_STEP,
    RADIAL_PERTURBATION,
    ROOT_RTOL,
    ROOT_XTOL,
    TOL_PERIMETER_REL,
    TOL_REG,
    TOL_STEP,
)
from spaceform.errors import DomainError, InfeasibleError, SpaceFormError
from spaceform.kappa_kernel import Kappa, as_kappa, c_kappa, s_kappa, to_kappa
from spaceform.models.geometry_models import Circle, GeodesicPolygon, SurfacePoint
from spaceform.models.report_models import IsoperimetricReport, MinimizerResult
from spaceform.polygon import area, make_polygon, perimeter, vertex_angles
from spaceform.regular import circle_limit, radius_from_area, side_length
from spaceform.surface import base_point, circle_area, distance, perpendicular_bisector, project, reflect

logger = logging.getLogger(__name__)

_HEMISPHERE_RADIUS = math.pi / 2.0 * (1.0 - 1e-9)
_HYPERBOLIC_RADIUS_CAP = 30.0
_MAX_SAMPLE_ATTEMPTS = 10000
_MIN_POLISH_RADIUS = 1e-9


# Closed forms

def _check_area(k: Kappa, A: float) -> None:
    if not math.isfinite(A) or A <= 0.0:
        raise DomainError(f"area must be positive, got {A}")
    if k == Kappa.SPHERICAL and A > 2.0 * math.pi:
        raise DomainError(f"spherical area must not exceed 2 pi, got {A}")


def optimal_radius(k, A: float) -> float:
    """Radius of the geodesic circle enclosing area A"""
    k = to_kappa(k)
    _check_area(k, A)
    # 4 pi S(r/2)^2 = A, equivalent to S(r) = sqrt(A (4 pi - kappa A)) / (2 pi)
    return 2.0 * float(as_kappa(k, math.sqrt(A / (4.0 * math.pi))))


def optimal_perimeter(k, A: float) -> float:
    """Least length of a closed curve enclosing area A"""
    k = to_kappa(k)
    _check_area(k, A)
    return math.sqrt(A * (4.0 * math.pi - k * A))


def _deficit(k: Kappa, length: float, A: float) -> float:
    return length * length - 4.0 * math.pi * A + k * A * A


def optimal_circle(k, A: float) -> IsoperimetricReport:
    k = to_kappa(k)
    r0 = optimal_radius(k, A)
    L = optimal_perimeter(k, A)
    enclosed = circle_area(Circle(base_point(k), r0))
    if abs(enclosed - A) > 1e-10 * max(1.0, A):
        logger.warning(f"optimal_circle: circle of radius {r0} encloses {enclosed}, expected {A}")
    return IsoperimetricReport(kappa=k, area=A, perimeter=L, deficit=0.0, optimal_radius=r0, optimal_perimeter=L)


def deficit(p: GeodesicPolygon) -> IsoperimetricReport:
    """Isoperimetric deficit of a convex polygon"""
    k = p.kappa
    A = area(p)
    length = perimeter(p)
    return IsoperimetricReport(
        kappa=k,
        area=A,
        perimeter=length,
        deficit=_deficit(k, length, A),
        optimal_radius=optimal_radius(k, A),
        optimal_perimeter=optimal_perimeter(k, A),
    )


def polygon_min_perimeter(k, n: int, A: float) -> float:
    """Perimeter of the regular n-gon of area A, the least among all n-gons of that area"""
    k = to_kappa(k)
    r = radius_from_area(k, n, A)
    return n * side_length(k, n, r)


def max_area_for_perimeter(k, L: float) -> Tuple[float, float]:
    """Largest area enclosed by a curve of length L, and the radius of the circle attaining it"""
    k = to_kappa(k)
    if not math.isfinite(L) or L <= 0.0:
        raise DomainError(f"max_area_for_perimeter: length must be positive, got {L}")
    if k == Kappa.SPHERICAL and L > 2.0 * math.pi:
        raise DomainError(f"max_area_for_perimeter: spherical curves of length {L} > 2 pi enclose no smaller cap")
    # smaller root of kappa A^2 - 4 pi A + L^2 = 0, written without cancellation
    A = L * L / (2.0 * math.pi + math.sqrt(max(4.0 * math.pi ** 2 - k * L * L, 0.0)))
    return A, optimal_radius(k, A)


def circle_deficit(k, r: float) -> float:
    """Deficit of the geodesic circle of radius r; zero up to rounding"""
    k = to_kappa(k)
    circle = Circle(base_point(k), r)
    return _deficit(k, 2.0 * math.pi * s_kappa(k, r), circle_area(circle))


def regular_deficit(k, n: int, A: float) -> float:
    k = to_kappa(k)
    return _deficit(k, polygon_min_perimeter(k, n, A), A)


def multi_component_optimum(k, areas: Sequence[float]) -> Tuple[float, float, float]:
    """Single merged circle against one circle per component

    Returns the merged radius, the total perimeter of separate optimal
    circles and the perimeter of the single merged circle.
    """
    k = to_kappa(k)
    areas = [float(a) for a in areas]
    if not areas:
        raise DomainError("multi_component_optimum: no component areas given")
    for a in areas:
        _check_area(k, a)
    total = sum(areas)
    if k == Kappa.SPHERICAL and total > 2.0 * math.pi:
        raise DomainError(f"multi_component_optimum: spherical total area {total} exceeds 2 pi")
    separate = sum(optimal_perimeter(k, a) for a in areas)
    return optimal_radius(k, total), separate, optimal_perimeter(k, total)


def deficit_decay_constant(k, A: float, ns: Optional[Iterable[int]] = None) -> float:
    """Least-squares C in deficit(regular n-gon) ~ C / n^2"""
    k = to_kappa(k)
    ns = np.array(list(ns) if ns is not None else [16 * 2 ** j for j in range(7)], dtype=float)
    deficits = np.array([regular_deficit(k, int(n), A) for n in ns])
    x = 1.0 / ns ** 2
    return float(np.dot(x, deficits) / np.dot(x, x))


def convergence_table(k, A: float, n_max: int) -> pd.DataFrame:
    """Regular n-gons of area A over n = 3, 6, 12, ... up to n_max"""
    k = to_kappa(k)
    if isinstance(n_max, bool) or int(n_max) != n_max or not 3 <= n_max <= N_CAP:
        raise DomainError(f"convergence_table: n_max must be an integer in [3, {N_CAP}], got {n_max!r}")
    ns = []
    n = 3
    while n < n_max:
        ns.append(n)
        n *= 2
    ns.append(int(n_max))

    rows = []
    for n in ns:
        r_n, perimeter_n = circle_limit(k, A, n)
        rows.append({"n": n, "r_n": r_n, "perimeter_n": perimeter_n, "deficit_n": _deficit(k, perimeter_n, A)})
    return pd.DataFrame(rows, columns=["n", "r_n", "perimeter_n", "deficit_n"])


# Polygons in geodesic polar coordinates (rho_i, phi_i) about p0

def _embed(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> np.ndarray:
    S = s_kappa(k, rho)
    z = np.ones_like(rho) if k == Kappa.EUCLIDEAN else c_kappa(k, rho)
    return np.column_stack([S * np.cos(phi), S * np.sin(phi), z])


def _polar(k: Kappa, P: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    planar = np.hypot(P[:, 0], P[:, 1])
    if k == Kappa.SPHERICAL:
        rho = np.arctan2(planar, P[:, 2])
    elif k == Kappa.HYPERBOLIC:
        rho = np.arcsinh(planar)
    else:
        rho = planar
    return rho, np.arctan2(P[:, 1], P[:, 0])


def _gaps(phi: np.ndarray) -> np.ndarray:
    return np.mod(np.roll(phi, -1) - phi, 2.0 * math.pi)


def _fan_area(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> float:
    """Sum of the triangles (p0, v_i, v_i+1); the polygon area when p0 is inside"""
    a, b, gap = rho, np.roll(rho, -1), _gaps(phi)
    if k == Kappa.EUCLIDEAN:
        return float(0.5 * np.sum(a * b * np.sin(gap)))
    Sa, Sb = s_kappa(k, a / 2.0), s_kappa(k, b / 2.0)
    num = Sa * Sb * np.sin(gap)
    den = c_kappa(k, a / 2.0) * c_kappa(k, b / 2.0) + k * Sa * Sb * np.cos(gap)
    return float(2.0 * np.sum(np.arctan2(num, den)))


def _perimeter(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> float:
    a, b, gap = rho, np.roll(rho, -1), _gaps(phi)
    half = s_kappa(k, (a - b) / 2.0) ** 2 + s_kappa(k, a) * s_kappa(k, b) * np.sin(gap / 2.0) ** 2
    return float(2.0 * np.sum(as_kappa(k, np.sqrt(half))))


def _strictly_convex(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> bool:
    """Convex, positively oriented and winding once around p0"""
    gaps = _gaps(phi)
    if np.any(gaps <= 0.0) or np.any(gaps >= math.pi) or abs(gaps.sum() - 2.0 * math.pi) > 1e-9:
        return False
    P = _embed(k, rho, phi)
    # plane, Klein or gnomonic chart: geodesics are straight
    Q = P[:, :2] if k == Kappa.EUCLIDEAN else P[:, :2] / P[:, 2:3]
    edges = np.roll(Q, -1, axis=0) - Q
    turns = edges[:, 0] * np.roll(edges, -1, axis=0)[:, 1] - edges[:, 1] * np.roll(edges, -1, axis=0)[:, 0]
    return bool(np.all(turns > 0.0))


def _radius_cap(k: Kappa, rho: np.ndarray) -> float:
    if k == Kappa.SPHERICAL:
        return _HEMISPHERE_RADIUS / float(rho.max())
    return _HYPERBOLIC_RADIUS_CAP / float(rho.max())


def _rescale(k: Kappa, rho: np.ndarray, phi: np.ndarray, A: float) -> Optional[np.ndarray]:
    """Radii scaled about p0 so that the polygon encloses area A, or None"""
    if k == Kappa.EUCLIDEAN:
        return rho * math.sqrt(A / _fan_area(k, rho, phi))

    excess = lambda s: _fan_area(k, s * rho, phi) - A
    at_one = excess(1.0)
    if at_one == 0.0:
        return rho
    cap = _radius_cap(k, rho)
    width = max(abs(at_one) / A, 1e-12)
    if at_one < 0.0:
        low, high = 1.0, min(1.0 + width, cap)
        while excess(high) < 0.0:
            if high >= cap:
                return None
            width *= 2.0
            high = min(1.0 + width, cap)
    else:
        low, high = 1.0 / (1.0 + width), 1.0
        while excess(low) > 0.0:
            width *= 2.0
            low = 1.0 / (1.0 + width)
    return rho * brentq(excess, low, high, xtol=ROOT_XTOL, rtol=ROOT_RTOL, maxiter=200)


def _random_polar(k: Kappa, n: int, A: float, rng: np.random.Generator) -> Tuple[np.ndarray, np.ndarray]:
    base = radius_from_area(k, n, A)
    for attempt in range(_MAX_SAMPLE_ATTEMPTS):
        phi = np.sort(rng.uniform(0.0, 2.0 * math.pi, n))
        rho = base * rng.uniform(1.0 - RADIAL_PERTURBATION, 1.0 + RADIAL_PERTURBATION, n)
        if np.any(_gaps(phi) >= math.pi):
            continue
        scaled = _rescale(k, rho, phi, A)
        if scaled is not None and _strictly_convex(k, scaled, phi):
            return scaled, phi
    raise InfeasibleError(f"no convex {n}-gon of area {A} found in {_MAX_SAMPLE_ATTEMPTS} attempts (kappa={int(k)})")


def _to_points(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> List[SurfacePoint]:
    return [SurfacePoint(x, y, z, k) for x, y, z in _embed(k, rho, phi)]


def random_convex_polygon(k, n: int, A: float, rng: np.random.Generator) -> GeodesicPolygon:
    """Convex n-gon of area A: jittered radii on random polar angles about p0, rescaled radially"""
    k = to_kappa(k)
    rho, phi = _random_polar(k, n, A, rng)
    return make_polygon(_to_points(k, rho, phi))


# Perimeter-minimizing local search

def _move(k: Kappa, rho: np.ndarray, phi: np.ndarray, i: int, heading: float, step: float, A: float):
    """Slide vertex i a geodesic distance step along heading, then restore the area"""
    S, C = float(s_kappa(k, rho[i])), float(c_kappa(k, rho[i]))
    cos_phi, sin_phi = math.cos(phi[i]), math.sin(phi[i])
    p = np.array([S * cos_phi, S * sin_phi, C if k != Kappa.EUCLIDEAN else 1.0])
    radial = np.array([C * cos_phi, C * sin_phi, -k * S])
    angular = np.array([-sin_phi, cos_phi, 0.0])
    u = math.cos(heading) * radial + math.sin(heading) * angular
    moved = float(c_kappa(k, step)) ** abs(int(k)) * p + float(s_kappa(k, step)) * u
    if k == Kappa.SPHERICAL:
        moved = moved / np.linalg.norm(moved)
        if moved[2] <= 0.0:
            return None
    new_rho, new_phi = _polar(k, moved[np.newaxis, :])

    rho, phi = rho.copy(), phi.copy()
    rho[i], phi[i] = new_rho[0], new_phi[0]
    if rho[i] <= 0.0 or np.any(_gaps(phi) >= math.pi) or np.any(_gaps(phi) <= 0.0):
        return None
    rho = _rescale(k, rho, phi, A)
    if rho is None or not _strictly_convex(k, rho, phi):
        return None
    return rho, phi


def _centroid(k: Kappa, P: np.ndarray) -> SurfacePoint:
    m = P.mean(axis=0)
    if k == Kappa.SPHERICAL:
        m = m / np.linalg.norm(m)
    elif k == Kappa.HYPERBOLIC:
        m = m / math.sqrt(m[2] * m[2] - m[0] * m[0] - m[1] * m[1])
    return project(k, m)


def _recenter(k: Kappa, rho: np.ndarray, phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Reflect the polygon so that its centroid lands on p0"""
    P = _embed(k, rho, phi)
    center, p0 = _centroid(k, P), base_point(k)
    if float(np.abs(center.vector - p0.vector).max()) <= EPS_MEM:
        return rho, phi
    mirror = perpendicular_bisector(center, p0)
    images = [reflect(mirror, v) for v in _to_points(k, rho, phi)][::-1]
    return _polar(k, np.array([v.to_list() for v in images]))


def regularity_residual(p: GeodesicPolygon) -> float:
    """Largest deviation of circumradii and vertex angles from their means"""
    center = _centroid(p.kappa, p.coordinates())
    radii = np.array([distance(center, v) for v in p.vertices])
    angles = np.array(vertex_angles(p))
    return float(max(np.abs(radii - radii.mean()).max(), np.abs(angles - angles.mean()).max()))


def _polish(k: Kappa, rho: np.ndarray, phi: np.ndarray, A: float, tol_step: float,
            max_iterations: int) -> Tuple[np.ndarray, np.ndarray, int]:
    """SLSQP on (rho, phi) with the fan area held at A; keeps the input unless the perimeter drops"""
    n = len(rho)
    cap = None if k == Kappa.EUCLIDEAN else _HEMISPHERE_RADIUS if k == Kappa.SPHERICAL else _HYPERBOLIC_RADIUS_CAP
    bounds = [(_MIN_POLISH_RADIUS, cap)] * n + [(None, None)] * n
    best = _perimeter(k, rho, phi)
    try:
        result = minimize(
            lambda x: _perimeter(k, x[:n], x[n:]),
            np.concatenate([rho, phi]),
            method="SLSQP",
            bounds=bounds,
            constraints=[{"type": "eq", "fun": lambda x: _fan_area(k, x[:n], x[n:]) - A}],
            options={"ftol": tol_step, "maxiter": max_iterations},
        )
    except SpaceFormError as e:
        logger.debug(f"polish abandoned: {e}")
        return rho, phi, 0
    candidate_phi = result.x[n:]
    if not np.all(np.isfinite(result.x)) or not _strictly_convex(k, result.x[:n], candidate_phi):
        return rho, phi, int(result.nit)
    candidate_rho = _rescale(k, result.x[:n], candidate_phi, A)
    if candidate_rho is None or not _strictly_convex(k, candidate_rho, candidate_phi):
        return rho, phi, int(result.nit)
    if _perimeter(k, candidate_rho, candidate_phi) >= best:
        return rho, phi, int(result.nit)
    return candidate_rho, np.mod(candidate_phi, 2.0 * math.pi), int(result.nit)


def minimize_polygon(k, n: int, A: float, seed: int, tol_step: float = TOL_STEP, tol_reg: float = TOL_REG,
                     tol_perimeter: float = TOL_PERIMETER_REL, max_iterations: int = MAX_ITERATIONS,
                     initial_step: float = INITIAL_STEP, polish_step: float = POLISH_STEP,
                     polish: bool = True) -> MinimizerResult:
    """Seeded search for the least-perimeter n-gon of area A

    Random single-vertex geodesic moves shrink their step down to polish_step,
    then a constrained SLSQP polish on the polar coordinates finishes the job.
    """
    k = to_kappa(k)
    target = polygon_min_perimeter(k, n, A)
    rng = np.random.default_rng(seed)
    rho, phi = _random_polar(k, n, A, rng)
    best = _perimeter(k, rho, phi)
    step = initial_step
    min_step = max(math.sqrt(tol_step), polish_step)
    iterations = 0

    while iterations < max_iterations:
        improvement, accepted = 0.0, 0
        for i in range(n):
            iterations += 1
            candidate = _move(k, rho, phi, i, rng.uniform(0.0, 2.0 * math.pi), step, A)
            if candidate is None:
                continue
            length = _perimeter(k, *candidate)
            if length < best:
                improvement += best - length
                best = length
                rho, phi = candidate
                accepted += 1
        if improvement >= tol_step:
            if accepted == n:
                step = min(2.0 * step, initial_step)
            continue
        if step <= min_step:
            break
        step *= 0.5
        centered_rho, centered_phi = _recenter(k, rho, phi)
        rescaled = _rescale(k, centered_rho, centered_phi, A)
        if rescaled is not None and _strictly_convex(k, rescaled, centered_phi):
            rho, phi = rescaled, centered_phi
            best = _perimeter(k, rho, phi)

    for _ in range(POLISH_ROUNDS if polish else 0):
        centered_rho, centered_phi = _recenter(k, rho, phi)
        rescaled = _rescale(k, centered_rho, centered_phi, A)
        if rescaled is not None and _strictly_convex(k, rescaled, centered_phi):
            rho, phi = rescaled, centered_phi
        before = _perimeter(k, rho, phi)
        rho, phi, steps = _polish(k, rho, phi, A, tol_step, POLISH_MAX_ITERATIONS)
        iterations += steps
        if before - _perimeter(k, rho, phi) < tol_step:
            break

    polygon = make_polygon(_to_points(k, rho, phi))
    residual = regularity_residual(polygon)
    length = perimeter(polygon)
    gap = abs(length - target) / target
    logger.debug(f"minimize_polygon kappa={int(k)} n={n} seed={seed}: perimeter {length:.15g} "
                 f"(regular {target:.15g}, relative gap {gap:.3g}) after {iterations} steps, residual {residual:.3g}")
    return MinimizerResult(
        polygon=polygon,
        perimeter=length,
        target_area=A,
        iterations=iterations,
        converged=residual <= tol_reg and gap <= tol_perimeter,
        regularity_residual=residual,
    )


def _restart(job: tuple) -> MinimizerResult:
    k, n, A, seed, options = job
    return minimize_polygon(k, n, A, seed, **options)


def run_restarts(k, n: int, A: float, seeds: Iterable[int], workers: Optional[int] = None,
                 **options) -> List[MinimizerResult]:
    """Independent searches, one per seed, returned in seed order"""
    k = to_kappa(k)
    seeds = sorted(int(s) for s in seeds)
    if not seeds:
        raise DomainError("run_restarts: at least one seed is required")
    jobs = [(k, n, A, seed, options) for seed in seeds]
    if workers is None:
        workers = psutil.cpu_count(logical=False) or 1
    workers = max(1, min(int(workers), len(seeds)))
    if workers == 1:
        return [_restart(job) for job in jobs]
    logger.info(f"running {len(seeds)} restarts on {workers} workers")
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_restart, jobs))


def best_result(results: Sequence[MinimizerResult]) -> MinimizerResult:
    """Least perimeter among converged runs, or among all runs if none converged"""
    if not results:
        raise DomainError("best_result: no results")
    pool = [r for r in results if r.converged] or list(results)
    return min(pool, key=lambda r: r.perimeter)
