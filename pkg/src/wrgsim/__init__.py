"""Simulation and numerical verification of weighted recursive graphs."""

from .errors import InvariantError, NumericError, ParameterError, ResourceError, WrgError
from .weightdist import (Atom, BoundedGumbelRV, BoundedTransform, BoundedWeibull, Constant,
                         FrechetPareto, GumbelRaV, GumbelRV, GumbelSV, Regime, WeightFamily)
from .wrg_core import FenwickSampler, GrowthSnapshot, Variant, WrgConfig, grow

__version__ = "0.1.0"

__all__ = [
    "Atom", "BoundedGumbelRV", "BoundedTransform", "BoundedWeibull", "Constant", "FenwickSampler",
    "FrechetPareto", "GrowthSnapshot", "GumbelRV", "GumbelRaV", "GumbelSV", "InvariantError",
    "NumericError", "ParameterError", "Regime", "ResourceError", "Variant", "WeightFamily",
    "WrgConfig", "WrgError", "grow",
]
