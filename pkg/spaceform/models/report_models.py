"""
Report Models
Structured results returned by the isoperimetric engine, the verification
suites and the CLI
"""

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from spaceform.kappa_kernel import Kappa
from spaceform.models.geometry_models import GeodesicPolygon


@dataclass(frozen=True)
class IsoperimetricReport:
    """Area, perimeter and deficit against the optimal circle of the same area"""
    kappa: Kappa
    area: float
    perimeter: float
    deficit: float          # perimeter^2 - 4 pi A + kappa A^2
    optimal_radius: float
    optimal_perimeter: float

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "kappa": int(self.kappa),
            "area": self.area,
            "perimeter": self.perimeter,
            "deficit": self.deficit,
            "optimal_radius": self.optimal_radius,
            "optimal_perimeter": self.optimal_perimeter,
        }

    def to_json(self) -> str:
        """Convert to JSON string"""
        return json.dumps(self.to_dict(), indent=2)


@dataclass(frozen=True)
class MinimizerResult:
    """Outcome of one perimeter-minimizing search"""
    polygon: GeodesicPolygon
    perimeter: float
    target_area: float
    iterations: int
    converged: bool
    regularity_residual: float  # spread of circumradii and vertex angles

    def to_dict(self) -> Dict[str, Any]:
        return {
            "polygon": self.polygon.to_dict(),
            "perimeter": self.perimeter,
            "target_area": self.target_area,
            "iterations": int(self.iterations),
            "converged": bool(self.converged),
            "regularity_residual": self.regularity_residual,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class SuiteResult:
    """Pass/fail summary of one verification suite"""
    name: str
    samples: int
    max_residual: float
    tolerance: float
    passed: bool
    failures: int = 0
    details: Dict[str, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass
class VerificationReport:
    """All suites run by one `verify` invocation"""
    seed: int
    suites: List[SuiteResult]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON serialization"""
        return {
            "seed": int(self.seed),
            "passed": self.passed,
            "suites": [s.to_dict() for s in self.suites],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


@dataclass
class RunConfig:
    """Parsed command line of one CLI run"""
    command: str
    kappa: Optional[Kappa]
    seed: int
    output_format: str = "json"
    eps_dom: Optional[float] = None
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "kappa": None if self.kappa is None else int(self.kappa),
            "seed": int(self.seed),
            "output_format": self.output_format,
            "eps_dom": self.eps_dom,
            "params": self.params,
        }
