"""
Verification Suites
Seeded property checks over the kernel, triangle, polygon, regular and
isoperimetric modules; every suite returns (SuiteResult, per-sample table)
"""

import logging
import math
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np
import pandas as pd

from config import DEFAULT_SAMPLES, EPS_DEF, TOL_PERIMETER_REL, TOL_REG
from spaceform.errors import SpaceFormError
from spaceform.isoperimetric import (
    best_result,
    deficit,
    deficit_decay_constant,
    optimal_circle,
    optimal_perimeter,
    optimal_radius,
    polygon_min_perimeter,
    random_convex_polygon,
    regular_deficit,
    run_restarts,
)
from spaceform.kappa_kernel import IDENTITY_TAGS, Kappa, identity_residual, identity_scale
from spaceform.models.geometry_models import Circle, Digon
from spaceform.models.report_models import SuiteResult, VerificationReport
from spaceform.polygon import (
    area,
    arm_closing_length,
    chain_vertices,
    digon_area,
    is_convex,
    make_polygon,
    perimeter,
    vertex_angles,
)
from spaceform.regular import (
    build,
    circle_limit,
    ngon_area,
    radius_from_angle,
    radius_from_area,
    radius_from_side,
    side_length,
    vertex_angle,
)
from spaceform.surface import (
    Isometry,
    base_point,
    circle_area,
    direction_at,
    distance,
    geodesic,
    isometry_from_correspondence,
    perpendicular_bisector,
)
from spaceform.triangle import (
    HALF_ANGLE_TAGS,
    area_from_angles,
    area_heron,
    area_sas,
    half_angle_residual,
    triangle_from_sas,
    triangle_from_sss,
)

logger = logging.getLogger(__name__)

KAPPAS = (Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL)
CURVED = (Kappa.HYPERBOLIC, Kappa.SPHERICAL)
TABLE_COLUMNS = ["suite", "kappa", "check", "residual", "tolerance", "passed"]

# one area per curvature for the polygon corpora
CORPUS_AREA = {Kappa.HYPERBOLIC: 1.0, Kappa.EUCLIDEAN: 1.0, Kappa.SPHERICAL: 1.0}
LIMIT_AREAS = {
    Kappa.HYPERBOLIC: (0.5, 1.0, 2.0),
    Kappa.EUCLIDEAN: (0.5, math.pi, 10.0),
    Kappa.SPHERICAL: (0.5, 2.0, 2.0 * math.pi),
}

SuiteOutput = Tuple[SuiteResult, pd.DataFrame]


def _frame(suite: str, k, check: str, residuals: Iterable[float], tolerance: float) -> pd.DataFrame:
    residuals = np.asarray(list(residuals) if not isinstance(residuals, np.ndarray) else residuals, dtype=float)
    return pd.DataFrame({
        "suite": suite,
        "kappa": int(k),
        "check": check,
        "residual": residuals,
        "tolerance": tolerance,
        "passed": residuals <= tolerance,
    }, columns=TABLE_COLUMNS)


def _summarize(name: str, samples: int, frames: List[pd.DataFrame], extra_failures: int = 0,
               details: Optional[Dict[str, float]] = None) -> SuiteOutput:
    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=TABLE_COLUMNS)
    failures = int((~table["passed"].astype(bool)).sum()) + extra_failures
    if details is None:
        details = {f"{check}@{kappa}": float(group.max())
                   for (kappa, check), group in table.groupby(["kappa", "check"], sort=False)["residual"]}
    result = SuiteResult(
        name=name,
        samples=samples,
        max_residual=float(table["residual"].max()) if len(table) else 0.0,
        tolerance=float(table["tolerance"].min()) if len(table) else 0.0,
        passed=failures == 0,
        failures=failures,
        details=details,
    )
    logger.debug(f"suite {name}: {len(table)} checks, {failures} failures, max residual {result.max_residual:.3g}")
    return result, table


def _random_triangle(k: Kappa, rng: np.random.Generator):
    a, b = rng.uniform(0.1, 1.5, 2)
    return triangle_from_sas(k, float(a), float(b), float(rng.uniform(0.1, math.pi - 0.1)))


def _random_point(k: Kappa, rng: np.random.Generator, max_radius: float = 1.5):
    p0 = base_point(k)
    return geodesic(p0, direction_at(p0, rng.uniform(0.0, 2.0 * math.pi)), rng.uniform(0.1, max_radius))


def identities_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Addition formulas on random (a, b), relative residual"""
    frames = []
    for k in CURVED:
        a = rng.uniform(-2.0, 2.0, samples)
        b = rng.uniform(-2.0, 2.0, samples)
        for tag in IDENTITY_TAGS:
            residual = np.abs(identity_residual(tag, k, a, b)) / identity_scale(tag, k, a, b)
            frames.append(_frame("identities", k, tag, residual, 1e-12))
    return _summarize("identities", samples, frames)


def halfangle_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Half-angle formulas, the sine rule and the cosine rule on random triangles"""
    frames = []
    for k in KAPPAS:
        triangles = [_random_triangle(k, rng) for _ in range(samples)]
        for tag in HALF_ANGLE_TAGS:
            if k == Kappa.EUCLIDEAN and tag in ("B-4", "B-5", "B-6", "B-7"):
                continue
            frames.append(_frame("halfangle", k, tag, [abs(half_angle_residual(tag, t)) for t in triangles], 1e-10))
    return _summarize("halfangle", samples, frames)


def areas_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Heron, two-sides-and-angle and angle-sum areas agree; closed-form point values"""
    frames = []
    for k in KAPPAS:
        triangles = [_random_triangle(k, rng) for _ in range(samples)]
        heron = [area_heron(k, *t.sides) for t in triangles]
        frames.append(_frame("areas", k, "heron-vs-sas",
                             [abs(h - area_sas(k, t.a, t.b, t.gamma)) for h, t in zip(heron, triangles)], 1e-10))
        if k != Kappa.EUCLIDEAN:
            frames.append(_frame("areas", k, "heron-vs-angles",
                                 [abs(h - area_from_angles(k, *t.angles)) for h, t in zip(heron, triangles)], 1e-9))

    half_pi = math.pi / 2.0
    octant = triangle_from_sss(Kappa.SPHERICAL, half_pi, half_pi, half_pi)
    frames.append(_frame("areas", Kappa.SPHERICAL, "octant", [abs(octant.area - half_pi)], 1e-12))
    frames.append(_frame("areas", Kappa.SPHERICAL, "octant-heron",
                         [abs(area_heron(Kappa.SPHERICAL, half_pi, half_pi, half_pi) - half_pi)], 1e-12))
    disk = Circle(base_point(Kappa.HYPERBOLIC), 2.0 * math.asinh(0.5))
    frames.append(_frame("areas", Kappa.HYPERBOLIC, "disk-area-pi", [abs(circle_area(disk) - math.pi)], 1e-12))
    lune = Digon(base_point(Kappa.SPHERICAL), math.pi)
    frames.append(_frame("areas", Kappa.SPHERICAL, "digon-2pi", [abs(digon_area(lune) - 2.0 * math.pi)], 1e-12))
    great = optimal_circle(Kappa.SPHERICAL, 2.0 * math.pi)
    frames.append(_frame("areas", Kappa.SPHERICAL, "great-circle",
                         [abs(great.optimal_radius - half_pi), abs(great.optimal_perimeter - 2.0 * math.pi)], 1e-12))
    return _summarize("areas", samples, frames)


def _radius_range(k: Kappa) -> Tuple[float, float]:
    if k == Kappa.SPHERICAL:
        return 0.05, math.pi / 2.0 - 0.05
    if k == Kappa.HYPERBOLIC:
        return 0.05, 2.5
    return 0.05, 3.0


def regular_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Circumradius round trips through side, angle and area; built polygons are regular"""
    frames = []
    for k in KAPPAS:
        low, high = _radius_range(k)
        ns = rng.integers(3, 13, samples)
        rs = rng.uniform(low, high, samples)
        side_trip, angle_trip, area_trip = [], [], []
        for n, r in zip(ns, rs):
            n, r = int(n), float(r)
            side_trip.append(abs(radius_from_side(k, n, side_length(k, n, r)) - r) / r)
            area_trip.append(abs(radius_from_area(k, n, ngon_area(k, n, r)) - r) / r)
            if k != Kappa.EUCLIDEAN:
                angle_trip.append(abs(radius_from_angle(k, n, vertex_angle(k, n, r)) - r) / r)
        frames.append(_frame("regular", k, "r-side-r", side_trip, 1e-10))
        frames.append(_frame("regular", k, "r-area-r", area_trip, 1e-10))
        if angle_trip:
            frames.append(_frame("regular", k, "r-angle-r", angle_trip, 1e-10))

        sides = np.linspace(0.01, 2.0 * math.pi / 6.0 - 0.01, 50) if k == Kappa.SPHERICAL else np.linspace(0.01, 3.0, 50)
        radii = np.array([radius_from_side(k, 6, float(a)) for a in sides])
        frames.append(_frame("regular", k, "side-monotone", [max(0.0, -float(np.diff(radii).min()))], 0.0))

        for n, r in zip(ns[:10], rs[:10]):
            polygon = build(k, int(n), float(r))
            p0 = base_point(k)
            radial = [abs(distance(p0, v) - polygon.r) for v in polygon.vertices]
            chords = [distance(polygon.vertices[i], polygon.vertices[(i + 1) % polygon.n]) for i in range(polygon.n)]
            angles = vertex_angles(make_polygon(polygon.vertices))
            frames.append(_frame("regular", k, "built-radius", radial, 1e-12))
            frames.append(_frame("regular", k, "built-sides", [max(chords) - min(chords)], 1e-12))
            frames.append(_frame("regular", k, "built-angles", [max(angles) - min(angles)], 1e-10))

    square = build(Kappa.EUCLIDEAN, 4, 1.0)
    frames.append(_frame("regular", Kappa.EUCLIDEAN, "unit-square",
                         [abs(square.side - math.sqrt(2.0)), abs(square.angle - math.pi / 2.0), abs(square.area - 2.0)],
                         1e-14))
    return _summarize("regular", samples, frames)


def isometry_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Rebuild random compositions of reflections from three point pairs"""
    frames = []
    extra = 0
    for k in KAPPAS:
        errors = []
        for _ in range(samples):
            mirrors = tuple(perpendicular_bisector(_random_point(k, rng), _random_point(k, rng))
                            for _ in range(int(rng.integers(1, 4))))
            known = Isometry(k, mirrors)
            sources = [_random_point(k, rng) for _ in range(3)]
            pairs = [(a, known.apply(a)) for a in sources]
            rebuilt = isometry_from_correspondence(pairs)
            if len(rebuilt) > 3:
                extra += 1
            errors.append(max(distance(rebuilt.apply(a), b) for a, b in pairs))
        frames.append(_frame("isometry", k, "three-pairs", errors, 1e-10))
    return _summarize("isometry", samples, frames, extra_failures=extra)


def _closes_convex(k: Kappa, sides, angles) -> bool:
    return is_convex(make_polygon(chain_vertices(k, sides, angles)))


def armlemma_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Opening one angle of a convex chain never shortens the closing side"""
    frames = []
    strict_failures = 0
    smallest_gain = math.inf
    for k in KAPPAS:
        shortfalls = []
        attempts = 0
        while len(shortfalls) < samples and attempts < 20 * samples:
            attempts += 1
            m = int(rng.integers(2, 6))
            sides = rng.uniform(0.1, 0.8, m)
            turns = rng.uniform(0.05, math.pi / m, m - 1)
            angles = math.pi - turns
            j = int(rng.integers(0, m - 1))
            if turns[j] <= 2e-3:
                continue
            opened = angles.copy()
            opened[j] += rng.uniform(1e-3, turns[j] - 1e-3)
            try:
                if not (_closes_convex(k, sides, angles) and _closes_convex(k, sides, opened)):
                    continue
                before = arm_closing_length(k, sides, angles)
                after = arm_closing_length(k, sides, opened)
            except SpaceFormError:
                continue
            gain = after - before
            smallest_gain = min(smallest_gain, gain)
            if gain < 1e-12:
                strict_failures += 1
            shortfalls.append(max(0.0, -gain))
        frames.append(_frame("armlemma", k, "closing-length", shortfalls, 0.0))
    return _summarize("armlemma", samples, frames, extra_failures=strict_failures,
                      details={"smallest_gain": float(smallest_gain)})


def perimeter_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Convex spherical polygons have perimeter below 2 pi"""
    excess = []
    for _ in range(samples):
        n = int(rng.integers(3, 9))
        polygon = random_convex_polygon(Kappa.SPHERICAL, n, float(rng.uniform(0.1, 4.0)), rng)
        excess.append(max(0.0, perimeter(polygon) - (2.0 * math.pi - 1e-12)))
    return _summarize("perimeter", samples, [_frame("perimeter", Kappa.SPHERICAL, "below-2pi", excess, 0.0)])


def _corpus(k: Kappa, n: int, samples: int, rng: np.random.Generator):
    return [random_convex_polygon(k, n, CORPUS_AREA[k], rng) for _ in range(samples)]


def dominance_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Random convex n-gons never beat the regular n-gon of the same area"""
    frames = []
    for k in KAPPAS:
        for n in range(3, 9):
            shortfall = []
            for polygon in _corpus(k, n, samples, rng):
                bound = polygon_min_perimeter(k, n, area(polygon))
                shortfall.append(max(0.0, bound - perimeter(polygon)))
            frames.append(_frame("dominance", k, f"n={n}", shortfall, 1e-9))
    return _summarize("dominance", samples, frames)


def deficit_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Deficit non-negative on random polygons, decreasing to zero on regular ones"""
    frames = []
    details = {}
    for k in KAPPAS:
        negative = []
        for n in range(3, 9):
            negative.extend(max(0.0, -deficit(p).deficit) for p in _corpus(k, n, samples, rng))
        frames.append(_frame("deficit", k, "non-negative", negative, EPS_DEF))

        A = CORPUS_AREA[k]
        regular = np.array([regular_deficit(k, n, A) for n in range(3, 65)])
        frames.append(_frame("deficit", k, "regular-positive", [max(0.0, -float(regular.min()))], 0.0))
        frames.append(_frame("deficit", k, "regular-decreasing", [max(0.0, float(np.diff(regular).max()))], 0.0))
        L = optimal_perimeter(k, A)
        frames.append(_frame("deficit", k, "regular-1e4", [max(0.0, regular_deficit(k, 10 ** 4, A) - 1e-5 * L * L)], 0.0))
        details[f"decay_constant@{int(k)}"] = deficit_decay_constant(k, A)
    result, table = _summarize("deficit", samples, frames)
    result.details.update(details)
    return result, table


def limit_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Regular n-gons of fixed area converge to the optimal circle"""
    frames = []
    for k in KAPPAS:
        for A in LIMIT_AREAS[k]:
            r0, L = optimal_radius(k, A), optimal_perimeter(k, A)
            r_big, perimeter_big = circle_limit(k, A, 10 ** 4)
            frames.append(_frame("limit", k, f"radius@A={A:.6g}", [abs(r_big - r0)], 1e-4))
            frames.append(_frame("limit", k, f"perimeter@A={A:.6g}", [abs(perimeter_big - L)], 1e-4))
            rows = np.array([circle_limit(k, A, n) for n in range(3, 2049)])
            frames.append(_frame("limit", k, f"monotone@A={A:.6g}",
                                 [max(0.0, float(np.diff(rows[:, 0]).max()), float(np.diff(rows[:, 1]).max()))],
                                 1e-13))
    return _summarize("limit", samples, frames)


MINIMIZER_SIZES = (3, 4, 5, 6)


def minimizer_suite(samples: int, rng: np.random.Generator) -> SuiteOutput:
    """Seeded restarts of the local search land on the regular n-gon; samples is the restart count"""
    frames = []
    for k in KAPPAS:
        A = CORPUS_AREA[k]
        errors, spreads = [], []
        for n in MINIMIZER_SIZES:
            seeds = rng.integers(0, 2 ** 31 - 1, samples).tolist()
            best = best_result(run_restarts(k, n, A, seeds))
            target = polygon_min_perimeter(k, n, A)
            errors.append(abs(best.perimeter - target) / target)
            spreads.append(best.regularity_residual)
        frames.append(_frame("minimizer", k, "perimeter-relative", errors, TOL_PERIMETER_REL))
        frames.append(_frame("minimizer", k, "regularity", spreads, TOL_REG))
    return _summarize("minimizer", samples, frames)


SUITES: Dict[str, Callable[[int, np.random.Generator], SuiteOutput]] = {
    "identities": identities_suite,
    "halfangle": halfangle_suite,
    "areas": areas_suite,
    "regular": regular_suite,
    "limit": limit_suite,
    "dominance": dominance_suite,
    "deficit": deficit_suite,
    "isometry": isometry_suite,
    "armlemma": armlemma_suite,
    "perimeter": perimeter_suite,
    "minimizer": minimizer_suite,
}

SUITE_DEFAULTS = {
    "identities": DEFAULT_SAMPLES,
    "halfangle": DEFAULT_SAMPLES,
    "areas": DEFAULT_SAMPLES,
    "regular": 200,
    "limit": 1,
    "dominance": 200,
    "deficit": 200,
    "isometry": 100,
    "armlemma": 500,
    "perimeter": DEFAULT_SAMPLES,
    "minimizer": 8,
}


def run_suites(names: Iterable[str], seed: int, samples: Optional[int] = None) -> Tuple[VerificationReport, pd.DataFrame]:
    """Run suites in order, each with its own generator seeded from seed"""
    names = list(names)
    results, tables = [], []
    for name in names:
        rng = np.random.default_rng(seed)
        count = samples if samples is not None else SUITE_DEFAULTS[name]
        logger.info(f"running suite {name} with {count} samples (seed {seed})")
        result, table = SUITES[name](count, rng)
        results.append(result)
        tables.append(table)
    table = pd.concat(tables, ignore_index=True) if tables else pd.DataFrame(columns=TABLE_COLUMNS)
    return VerificationReport(seed=seed, suites=results), table
