"""
Space-Form Geometry Package

Geometry of the three simply connected surfaces of constant curvature
kappa in {-1, 0, +1}: hyperbolic plane, Euclidean plane and unit sphere.

Modules:
- kappa_kernel: generalized trigonometric functions and the identity suite
- surface: embedded model points, distance, geodesics, reflections, isometries
- triangle: triangle solvers, area formulas, congruence, extremal triangles
- polygon: geodesic polygons, angle-sum area, Cauchy arm lemma, cyclic chains
- regular: regular n-gon closed forms and inverse solvers
- isoperimetric: optimal circles, deficits and the perimeter minimizer
- models: dataclass value and report types
"""
