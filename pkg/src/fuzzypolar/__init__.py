"""Exact fuzzy polar calculus over finite-dimensional dual pairs."""

__version__ = "0.1.0"

from .errors import FuzzyPolarError  # noqa: E402
from .fuzzyset import StepFuzzySet, construct, crisp  # noqa: E402
from .geometry import DualPair  # noqa: E402
from .polar import bipolar, fuzzy_polar, fuzzy_polar_at, polar_of_family  # noqa: E402

__all__ = [
    "__version__", "FuzzyPolarError", "StepFuzzySet", "construct", "crisp", "DualPair",
    "fuzzy_polar", "fuzzy_polar_at", "bipolar", "polar_of_family",
]
