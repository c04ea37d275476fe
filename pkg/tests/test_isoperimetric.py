"""
Test optimal circles, deficits, random convex polygons and the perimeter-minimizing search
"""
import sys
import os
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import json
import math

import numpy as np
import pytest

from config import TOL_PERIMETER_REL, TOL_REG
from spaceform.errors import DomainError
from spaceform.isoperimetric import (
    _recenter,
    best_result,
    circle_deficit,
    convergence_table,
    deficit,
    deficit_decay_constant,
    max_area_for_perimeter,
    minimize_polygon,
    multi_component_optimum,
    optimal_circle,
    optimal_perimeter,
    optimal_radius,
    polygon_min_perimeter,
    random_convex_polygon,
    regular_deficit,
    regularity_residual,
    run_restarts,
)
from spaceform.kappa_kernel import Kappa
from spaceform.models.geometry_models import SurfacePoint
from spaceform.polygon import area, is_convex, make_polygon, perimeter
from spaceform.regular import build
from spaceform.surface import base_point

KAPPAS = [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL]


def test_optimal_circle_closed_forms():
    assert optimal_radius(0, math.pi) == pytest.approx(1.0, abs=1e-15)
    assert optimal_perimeter(0, math.pi) == pytest.approx(2.0 * math.pi, abs=1e-14)
    assert optimal_radius(-1, math.pi) == pytest.approx(2.0 * math.asinh(0.5), abs=1e-15)
    assert optimal_perimeter(-1, math.pi) == pytest.approx(math.pi * math.sqrt(5.0), abs=1e-13)
    great = optimal_circle(1, 2.0 * math.pi)
    assert great.optimal_radius == pytest.approx(math.pi / 2.0, abs=1e-12)
    assert great.perimeter == pytest.approx(2.0 * math.pi, abs=1e-12)
    assert great.deficit == 0.0
    print(f"✅ Great circle: r={great.optimal_radius:.15f}, L={great.perimeter:.15f}")


def test_area_domain():
    with pytest.raises(DomainError):
        optimal_radius(0, 0.0)
    with pytest.raises(DomainError):
        optimal_radius(1, 7.0)
    with pytest.raises(DomainError):
        optimal_perimeter(-1, -1.0)


def test_dual_problem():
    A, r = max_area_for_perimeter(0, 2.0 * math.pi)
    assert A == pytest.approx(math.pi, abs=1e-14)
    assert r == pytest.approx(1.0, abs=1e-14)
    A, r = max_area_for_perimeter(1, 2.0 * math.pi)
    assert A == pytest.approx(2.0 * math.pi, abs=1e-14)
    assert r == pytest.approx(math.pi / 2.0, abs=1e-12)
    for k in KAPPAS:
        A, _ = max_area_for_perimeter(k, 3.0)
        assert optimal_perimeter(k, A) == pytest.approx(3.0, abs=1e-12)
    with pytest.raises(DomainError):
        max_area_for_perimeter(1, 7.0)


def test_polygon_deficits():
    square = make_polygon([SurfacePoint(x, y, 1.0, 0) for x, y in [(0, 0), (1, 0), (1, 1), (0, 1)]])
    report = deficit(square)
    assert report.deficit == pytest.approx(16.0 - 4.0 * math.pi, abs=1e-13)
    assert report.area == pytest.approx(1.0, abs=1e-15)

    octant = make_polygon([base_point(1), SurfacePoint(1.0, 0.0, 0.0, 1), SurfacePoint(0.0, 1.0, 0.0, 1)])
    assert deficit(octant).deficit == pytest.approx(math.pi ** 2 / 2.0, abs=1e-11)
    payload = json.loads(deficit(octant).to_json())
    assert payload["kappa"] == 1


@pytest.mark.parametrize("k", KAPPAS)
def test_circles_have_zero_deficit(k):
    for r in (0.3, 1.0, 1.5):
        assert abs(circle_deficit(k, r)) <= 1e-12 * max(1.0, optimal_perimeter(k, 1.0) ** 2, math.sinh(r) ** 2)


@pytest.mark.parametrize("k", KAPPAS)
def test_regular_deficit_decreases_to_zero(k):
    deficits = [regular_deficit(k, n, 1.0) for n in range(3, 40)]
    assert min(deficits) > 0.0
    assert all(later < earlier for earlier, later in zip(deficits, deficits[1:]))
    assert regular_deficit(k, 10 ** 4, 1.0) <= 1e-5 * optimal_perimeter(k, 1.0) ** 2
    assert deficit_decay_constant(k, 1.0) > 0.0


def test_regular_polygon_beats_the_square_of_the_same_area():
    assert polygon_min_perimeter(0, 4, 1.0) == pytest.approx(4.0, abs=1e-14)
    assert polygon_min_perimeter(0, 3, math.sqrt(3.0) / 4.0) == pytest.approx(3.0, abs=1e-14)


@pytest.mark.parametrize("k", KAPPAS)
def test_merging_components_shortens_the_boundary(k):
    merged_radius, separate, merged = multi_component_optimum(k, [1.0, 1.0])
    assert merged < separate
    assert merged_radius == pytest.approx(optimal_radius(k, 2.0), abs=1e-15)
    with pytest.raises(DomainError):
        multi_component_optimum(k, [])


def test_convergence_table_rows():
    table = convergence_table(0, math.pi, 48)
    assert list(table.columns) == ["n", "r_n", "perimeter_n", "deficit_n"]
    assert table["n"].tolist() == [3, 6, 12, 24, 48]
    assert convergence_table(0, math.pi, 50)["n"].tolist()[-2:] == [48, 50]
    assert table["perimeter_n"].is_monotonic_decreasing
    assert (table["deficit_n"] > 0.0).all()
    with pytest.raises(DomainError):
        convergence_table(0, math.pi, 2)


@pytest.mark.parametrize("k", KAPPAS)
def test_random_convex_polygons_hit_the_target_area(k, rng):
    for n in (3, 5, 8):
        polygon = random_convex_polygon(k, n, 1.0, rng)
        assert polygon.n == n
        assert is_convex(polygon)
        assert area(polygon) == pytest.approx(1.0, abs=1e-9)
        assert perimeter(polygon) >= polygon_min_perimeter(k, n, 1.0) - 1e-9


def test_regularity_residual_of_a_regular_polygon():
    for k in KAPPAS:
        assert regularity_residual(make_polygon(build(k, 6, 0.7).vertices)) <= 1e-12


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.SPHERICAL])
def test_recentering_skips_rounding_level_offsets(k):
    rho = np.full(4, 0.7)
    rho[0] += 1e-12
    phi = np.arange(4) * math.pi / 2.0
    centered_rho, centered_phi = _recenter(k, rho, phi)
    assert np.array_equal(centered_rho, rho)
    assert np.array_equal(centered_phi, phi)


def test_minimizer_finds_the_equilateral_triangle():
    result = minimize_polygon(0, 3, math.sqrt(3.0) / 4.0, seed=1)
    assert result.perimeter == pytest.approx(3.0, rel=TOL_PERIMETER_REL)
    assert result.perimeter >= 3.0 - 1e-9
    assert result.target_area == pytest.approx(math.sqrt(3.0) / 4.0)
    assert area(result.polygon) == pytest.approx(math.sqrt(3.0) / 4.0, abs=1e-9)
    print(f"✅ Minimizer: perimeter {result.perimeter:.12f} after {result.iterations} proposals")


@pytest.mark.parametrize("k, n", [(Kappa.HYPERBOLIC, 5), (Kappa.EUCLIDEAN, 4), (Kappa.SPHERICAL, 4), (Kappa.SPHERICAL, 6)])
def test_minimizer_reaches_the_regular_polygon(k, n):
    best = best_result(run_restarts(k, n, 1.0, [0, 1, 2], workers=1))
    target = polygon_min_perimeter(k, n, 1.0)
    assert abs(best.perimeter - target) / target <= TOL_PERIMETER_REL
    assert best.regularity_residual <= TOL_REG
    assert best.converged
    assert area(best.polygon) == pytest.approx(1.0, abs=1e-9)


def test_convergence_requires_the_regular_perimeter():
    rough = minimize_polygon(1, 5, 1.0, seed=4, tol_reg=math.inf, max_iterations=5, polish=False)
    assert abs(rough.perimeter - polygon_min_perimeter(1, 5, 1.0)) > TOL_PERIMETER_REL
    assert not rough.converged


def test_minimizer_is_deterministic_per_seed():
    first = minimize_polygon(-1, 4, 0.5, seed=42, max_iterations=400)
    second = minimize_polygon(-1, 4, 0.5, seed=42, max_iterations=400)
    assert first.perimeter == second.perimeter
    assert first.iterations == second.iterations
    assert first.perimeter >= polygon_min_perimeter(-1, 4, 0.5) - 1e-9


def test_restarts_and_best_result():
    results = run_restarts(1, 4, 0.8, [3, 1, 2], workers=1, max_iterations=200)
    assert len(results) == 3
    best = best_result(results)
    assert best in results
    pool = [r for r in results if r.converged] or results
    assert best.perimeter == min(r.perimeter for r in pool)
    payload = json.loads(best.to_json())
    assert payload["polygon"]["kappa"] == 1
    with pytest.raises(DomainError):
        best_result([])
    with pytest.raises(DomainError):
        run_restarts(1, 4, 0.8, [], workers=1)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
