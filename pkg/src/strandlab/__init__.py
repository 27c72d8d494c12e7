"""Exact computational commutative algebra for multigraded rings:
free resolutions, the exterior-algebra correspondence, and strongly
linear strands."""

__version__ = "0.1.0"

from .fields import Field, QQ, default_field, parse_field
from .grading import GradingSpec, find_theta
from .poly import PolyRing, Poly
from .groebner import ModulePresentation, buchberger, krull_dim, \
    minimal_effective_degrees
