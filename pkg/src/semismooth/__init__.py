"""Exact gluing, tangent and T1 computations for semi-smooth surfaces over Q.

The package builds pushouts of affine gluing data as explicit finitely
presented Q-algebras, computes differentials, tangent modules and T^1 with
certified presentations, verifies the tangent-sequence and double-cover
statements on them, and degenerates the constructions over the affine line.
Everything is exact rational arithmetic; every isomorphism the package
reports is backed by a per-instance certificate, not a formula.
"""

from .errors import (
    CompletenessError,
    InputError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SemismoothError,
)
from .fpmod import FPModule, ModuleMap
from .glue import GluingDatum, PushoutPresentation, pushout, verify_cartesian
from .poly import MonomialOrder, PolyRing, Polynomial
from .rings import RingMap, RingPresentation

__version__ = "0.1.0"

__all__ = [
    "CompletenessError",
    "FPModule",
    "GluingDatum",
    "InputError",
    "ModuleMap",
    "MonomialOrder",
    "ParseError",
    "PolyRing",
    "Polynomial",
    "PreconditionError",
    "PushoutPresentation",
    "ResourceLimitError",
    "RingMap",
    "RingPresentation",
    "SemismoothError",
    "pushout",
    "verify_cartesian",
    "__version__",
]
