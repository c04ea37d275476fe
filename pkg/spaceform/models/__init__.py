"""
Data models for the space-form toolkit
"""

from spaceform.models.geometry_models import (
    Circle,
    Digon,
    GeodesicPolygon,
    Line,
    RegularNGon,
    SurfacePoint,
    TangentVector,
    Triangle,
)
from spaceform.models.report_models import (
    IsoperimetricReport,
    MinimizerResult,
    RunConfig,
    SuiteResult,
    VerificationReport,
)

__all__ = [
    "Circle",
    "Digon",
    "GeodesicPolygon",
    "IsoperimetricReport",
    "Line",
    "MinimizerResult",
    "RegularNGon",
    "RunConfig",
    "SuiteResult",
    "SurfacePoint",
    "TangentVector",
    "Triangle",
    "VerificationReport",
]
