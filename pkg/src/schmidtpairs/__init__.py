"""Schmidt decomposability of compressed unitaries: two-projection theory,
Grassmann geodesics, oblique projections, dilations and Hardy-space models."""

from . import core_linalg, dilations, grassmann, hardy, mmio, oblique, two_projections
from .core_linalg import DEFAULT_TOL, Frame, SchmidtSystem, ToleranceConfig
from .errors import SchmidtPairsError

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "Frame",
    "SchmidtPairsError",
    "SchmidtSystem",
    "ToleranceConfig",
    "core_linalg",
    "dilations",
    "grassmann",
    "hardy",
    "mmio",
    "oblique",
    "two_projections",
]
