"""
Test the triangle solvers, area formulas, congruence and the two-sides area maximizer
"""
import sys
import os
parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.append(parent_dir)

import json
import math

import pytest

from spaceform.errors import DomainError, InfeasibleError, UsageError
from spaceform.kappa_kernel import Kappa, ct_kappa
from spaceform.surface import distance
from spaceform.triangle import (
    HALF_ANGLE_TAGS,
    angle_from_sides_cos,
    angles_from_sss,
    area_from_angles,
    area_heron,
    area_sas,
    congruence_decide,
    half_angle_residual,
    isosceles_dominates_area,
    isosceles_from_base_and_angle,
    isosceles_from_base_and_slant,
    isosceles_max_base_angle,
    max_area_triangle_two_sides,
    sas_area_identity_residual,
    side_from_sas,
    triangle_from_asa,
    triangle_from_sas,
    triangle_from_sss,
    triangle_from_vertices,
)

HALF_PI = math.pi / 2.0


def test_spherical_octant():
    """Three right angles and area pi/2"""
    tri = triangle_from_sss(1, HALF_PI, HALF_PI, HALF_PI)
    for angle in tri.angles:
        assert angle == pytest.approx(HALF_PI, abs=1e-14)
    assert tri.area == pytest.approx(HALF_PI, abs=1e-12)
    assert area_from_angles(1, *tri.angles) == pytest.approx(HALF_PI, abs=1e-12)
    print(f"✅ Octant area {tri.area:.15f}")


def test_planar_right_triangle():
    tri = triangle_from_sss(0, 3.0, 4.0, 5.0)
    assert tri.gamma == pytest.approx(HALF_PI, abs=1e-14)
    assert tri.area == pytest.approx(6.0, abs=1e-12)
    assert sum(tri.angles) == pytest.approx(math.pi, abs=1e-14)
    assert side_from_sas(0, 3.0, 4.0, HALF_PI) == pytest.approx(5.0, abs=1e-14)
    assert area_sas(0, 3.0, 4.0, HALF_PI) == pytest.approx(6.0, abs=1e-12)


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL])
def test_placed_vertices_match_sides(k):
    tri = triangle_from_sas(k, 0.8, 1.1, 1.3)
    assert distance(tri.Q, tri.R) == pytest.approx(tri.a, abs=1e-12)
    assert distance(tri.P, tri.R) == pytest.approx(tri.b, abs=1e-12)
    assert distance(tri.P, tri.Q) == pytest.approx(tri.c, abs=1e-12)
    measured = triangle_from_vertices(tri.P, tri.Q, tri.R)
    for x, y in zip(measured.angles, tri.angles):
        assert x == pytest.approx(y, abs=1e-10)


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.SPHERICAL])
def test_three_area_formulas_agree(k):
    tri = triangle_from_sas(k, 0.9, 1.2, 2.0)
    heron = area_heron(k, *tri.sides)
    assert heron == pytest.approx(area_sas(k, tri.a, tri.b, tri.gamma), abs=1e-10)
    assert heron == pytest.approx(area_from_angles(k, *tri.angles), abs=1e-9)
    assert sas_area_identity_residual(tri) <= 1e-10


def test_angle_sum_signs():
    assert sum(triangle_from_sss(1, 1.0, 1.2, 1.4).angles) > math.pi
    assert sum(triangle_from_sss(-1, 1.0, 1.2, 1.4).angles) < math.pi
    with pytest.raises(UsageError):
        area_from_angles(0, 1.0, 1.0, 1.0)


def test_cosine_rule_agrees_with_half_angle_solver():
    for k in (-1, 0, 1):
        _, _, gamma = angles_from_sss(k, 0.7, 0.9, 1.1)
        assert angle_from_sides_cos(k, 0.7, 0.9, 1.1) == pytest.approx(gamma, abs=1e-12)


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL])
def test_asa_recovers_the_triangle(k):
    tri = triangle_from_sss(k, 0.8, 1.0, 1.2)
    rebuilt = triangle_from_asa(k, tri.alpha, tri.c, tri.beta)
    assert rebuilt.a == pytest.approx(tri.a, abs=1e-10)
    assert rebuilt.b == pytest.approx(tri.b, abs=1e-10)
    assert rebuilt.gamma == pytest.approx(tri.gamma, abs=1e-10)


def test_infeasible_inputs():
    with pytest.raises(InfeasibleError):
        triangle_from_sss(0, 1.0, 1.0, 3.0)
    with pytest.raises(InfeasibleError):
        triangle_from_sss(1, 2.5, 2.5, 2.5)
    with pytest.raises(InfeasibleError):
        triangle_from_asa(0, 2.0, 1.0, 2.0)
    with pytest.raises(DomainError):
        triangle_from_sas(0, 1.0, 1.0, math.pi)
    print("✅ Infeasible triangles rejected")


@pytest.mark.parametrize("k", [Kappa.HYPERBOLIC, Kappa.EUCLIDEAN, Kappa.SPHERICAL])
def test_half_angle_formulas(k):
    tri = triangle_from_sas(k, 0.6, 1.3, 1.0)
    for tag in HALF_ANGLE_TAGS:
        if k == Kappa.EUCLIDEAN and tag in ("B-4", "B-5", "B-6", "B-7"):
            with pytest.raises(UsageError):
                half_angle_residual(tag, tri)
            continue
        assert abs(half_angle_residual(tag, tri)) <= 1e-10, tag


def test_congruence_under_relabelling():
    t1 = triangle_from_sss(-1, 0.8, 1.0, 1.2)
    t2 = triangle_from_sss(-1, 1.2, 0.8, 1.0)
    t3 = triangle_from_sss(-1, 0.8, 1.0, 1.3)
    for criterion in ("SSS", "SAS", "ASA", "AAA"):
        assert congruence_decide(t1, t2, criterion)
        assert not congruence_decide(t1, t3, criterion)
    with pytest.raises(UsageError):
        congruence_decide(triangle_from_sss(0, 3, 4, 5), triangle_from_sss(0, 6, 8, 10), "AAA")
    with pytest.raises(UsageError):
        congruence_decide(t1, t2, "SSA")


def test_isosceles_constructions():
    equilateral = isosceles_from_base_and_slant(0, 2.0, 3.0)
    for side in equilateral.sides:
        assert side == pytest.approx(2.0, abs=1e-12)
    tri = isosceles_from_base_and_angle(-1, 1.0, 0.6)
    assert tri.alpha == pytest.approx(tri.beta, abs=1e-10)
    assert tri.b == pytest.approx(tri.a, abs=1e-10)
    assert isosceles_max_base_angle(-1, 1.0) == pytest.approx(math.acos(math.tanh(0.5)), abs=1e-15)
    with pytest.raises(InfeasibleError):
        isosceles_from_base_and_angle(-1, 1.0, 1.5)


def test_isosceles_has_the_larger_area():
    assert isosceles_dominates_area(1, 1.0, 1.2, 0.6, 0.8)
    assert isosceles_dominates_area(-1, 1.0, 1.2, 0.6, 0.8)
    with pytest.raises(InfeasibleError):
        isosceles_dominates_area(0, 1.0, 1.2, 0.6, 0.9)


def test_max_area_with_two_fixed_sides():
    gamma, area, tri = max_area_triangle_two_sides(0, 2.0, 3.0)
    assert gamma == pytest.approx(HALF_PI, abs=1e-8)
    assert area == pytest.approx(3.0, abs=1e-12)

    for k in (Kappa.SPHERICAL, Kappa.HYPERBOLIC):
        gamma, area, tri = max_area_triangle_two_sides(k, 1.0, 1.0)
        stationary = k + ct_kappa(k, 0.5) ** 2 * math.cos(gamma)
        assert abs(stationary) <= 1e-8
        assert area >= area_sas(k, 1.0, 1.0, gamma + 1e-3)
        assert area >= area_sas(k, 1.0, 1.0, gamma - 1e-3)
    assert max_area_triangle_two_sides(1, 1.0, 1.0)[0] > HALF_PI
    assert max_area_triangle_two_sides(-1, 1.0, 1.0)[0] < HALF_PI


def test_triangle_json():
    payload = json.loads(triangle_from_sss(0, 3.0, 4.0, 5.0).to_json())
    assert payload["kappa"] == 0
    assert payload["area"] == pytest.approx(6.0)
    assert len(payload["vertices"]) == 3


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
