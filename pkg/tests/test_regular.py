"""
Test regular n-gons: forward maps, inverses and the circle limit
"""
import sys
import os
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import json
import math

import pytest

from config import N_CAP
from spaceform.errors import DomainError, InfeasibleError, UsageError
from spaceform.isoperimetric import optimal_perimeter
from spaceform.kappa_kernel import Kappa
from spaceform.regular import (
    area_range,
    build,
    circle_limit,
    ngon_area,
    radius_from_angle,
    radius_from_area,
    radius_from_side,
    side_length,
    solve,
    vertex_angle,
)
from spaceform.surface import base_point, distance

CURVED = [Kappa.HYPERBOLIC, Kappa.SPHERICAL]


def test_unit_square_from_side():
    square = solve(0, 4, side=1.0)
    assert square.r == pytest.approx(math.sqrt(2.0) / 2.0, abs=1e-15)
    assert square.area == pytest.approx(1.0, abs=1e-14)
    assert square.angle == pytest.approx(math.pi / 2.0, abs=1e-15)
    print(f"✅ Unit square: r={square.r:.15f}")


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL])
def test_radius_round_trips(k):
    for n in (3, 5, 12):
        for r in (0.2, 0.9, 1.4):
            assert radius_from_side(k, n, side_length(k, n, r)) == pytest.approx(r, rel=1e-10)
            assert radius_from_area(k, n, ngon_area(k, n, r)) == pytest.approx(r, rel=1e-10)
            if k != Kappa.EUCLIDEAN:
                assert radius_from_angle(k, n, vertex_angle(k, n, r)) == pytest.approx(r, rel=1e-10)


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL])
def test_built_polygon_is_regular(k):
    ngon = build(k, 7, 0.8)
    p0 = base_point(k)
    assert len(ngon.vertices) == 7
    for v in ngon.vertices:
        assert distance(p0, v) == pytest.approx(0.8, abs=1e-12)
    for i in range(7):
        chord = distance(ngon.vertices[i], ngon.vertices[(i + 1) % 7])
        assert chord == pytest.approx(ngon.side, abs=1e-12)


def test_angle_moves_with_curvature():
    planar = vertex_angle(0, 6, 1.0)
    assert vertex_angle(1, 6, 1.0) > planar > vertex_angle(-1, 6, 1.0)
    assert ngon_area(1, 6, 1.0) > ngon_area(0, 6, 1.0) > ngon_area(-1, 6, 1.0)


def test_hemisphere_boundary():
    """A spherical n-gon inscribed in the equator fills a hemisphere"""
    square = build(1, 4, math.pi / 2.0)
    assert square.area == pytest.approx(2.0 * math.pi, abs=1e-12)
    assert square.angle == pytest.approx(math.pi, abs=1e-12)
    assert radius_from_area(1, 4, 2.0 * math.pi) == pytest.approx(math.pi / 2.0, abs=1e-12)
    with pytest.raises(DomainError):
        build(1, 4, 2.0)


def test_area_inversion_near_the_range_ends():
    assert radius_from_area(1, 3, 2.0 * math.pi) == math.pi / 2.0
    for k, A in [(1, 1e-7), (1, 2.0 * math.pi - 1e-7), (-1, 1e-7), (-1, math.pi - 2e-6)]:
        r = radius_from_area(k, 3, A)
        assert ngon_area(k, 3, r) == pytest.approx(A, abs=1e-10)
    assert radius_from_area(1, 3, 2.0 * math.pi - 1e-7) < math.pi / 2.0


def test_area_ranges():
    assert area_range(-1, 5) == (0.0, 3.0 * math.pi)
    assert area_range(1, 5) == (0.0, 2.0 * math.pi)
    assert area_range(0, 5)[1] == math.inf
    with pytest.raises(InfeasibleError):
        radius_from_area(-1, 3, math.pi)
    with pytest.raises(InfeasibleError):
        radius_from_area(1, 3, 7.0)
    with pytest.raises(InfeasibleError):
        radius_from_area(0, 3, 0.0)
    r = radius_from_area(-1, 3, math.pi - 1e-3)
    assert ngon_area(-1, 3, r) == pytest.approx(math.pi - 1e-3, abs=1e-9)


def test_infeasible_sides_and_angles():
    with pytest.raises(InfeasibleError):
        radius_from_side(1, 6, 2.0 * math.pi / 6.0)
    with pytest.raises(InfeasibleError):
        radius_from_side(0, 6, -1.0)
    with pytest.raises(InfeasibleError):
        radius_from_angle(1, 4, math.pi / 2.0)
    with pytest.raises(InfeasibleError):
        radius_from_angle(-1, 4, math.pi / 2.0 + 0.1)
    with pytest.raises(UsageError):
        radius_from_angle(0, 4, math.pi / 2.0)


def test_solve_needs_exactly_one_datum():
    with pytest.raises(UsageError):
        solve(0, 4)
    with pytest.raises(UsageError):
        solve(0, 4, r=1.0, side=1.0)
    with pytest.raises(DomainError):
        solve(0, 2, r=1.0)
    with pytest.raises(DomainError):
        solve(0, N_CAP + 1, r=1.0)


def test_regular_json():
    payload = json.loads(solve(-1, 5, area=1.0).to_json())
    assert payload["kappa"] == -1
    assert payload["n"] == 5
    assert payload["area"] == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("k, A", [(Kappa.HYPERBOLIC, 1.0), (Kappa.EUCLIDEAN, math.pi), (Kappa.SPHERICAL, 2.0)])
def test_circle_limit(k, A):
    perimeters = [circle_limit(k, A, n)[1] for n in (3, 6, 12, 24, 48, 96)]
    assert all(later < earlier for earlier, later in zip(perimeters, perimeters[1:]))
    _, large = circle_limit(k, A, 10 ** 4)
    assert large == pytest.approx(optimal_perimeter(k, A), abs=1e-4)
    assert large > optimal_perimeter(k, A)


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
