"""Distance and angle distributions of uniform nodes in a rectangle.

Closed forms for the joint planar distance/azimuth law seen from an arbitrary
reference node, its 3D extension with antenna heights, a seeded Monte Carlo
oracle, and a few beamforming applications built on top.
"""

from .dist2d import DistributionEval2D, QuadratureError, generic_joint_cdf
from .dist3d import DistributionEval3D, ZenithRange, spherical_from_planar
from .geometry import OffsetSet, Point2, Point3, RectScenario, beta, offsets
from .montecarlo import OracleGrid, SampleSet, ValidationReport, sample_points, validate
from .partition import chi_intervals, mu_intervals
from .scenarios import PRESETS, ConfigError, load_scenario, preset

__all__ = [
    "ConfigError", "DistributionEval2D", "DistributionEval3D", "OffsetSet", "OracleGrid",
    "PRESETS", "Point2", "Point3", "QuadratureError", "RectScenario", "SampleSet",
    "ValidationReport", "ZenithRange", "beta", "chi_intervals", "generic_joint_cdf",
    "load_scenario", "mu_intervals", "offsets", "preset", "sample_points",
    "spherical_from_planar", "validate",
]
