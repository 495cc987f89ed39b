"""Fuzzy-metric shadowing diagnostics for piecewise-linear interval maps."""

from .fuzzy_metric import (
    Ball,
    FuzzyMetric,
    RatioFuzzyMetric,
    RatioPhiFuzzyMetric,
    StandardFuzzyMetric,
    metric_from_name,
)
from .orbits import IndexSet, OrbitSequence
from .systems import IntervalMap, example43_map, perturbation_g, tent
from .tnorm import TNorm

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "FuzzyMetric",
    "IndexSet",
    "IntervalMap",
    "OrbitSequence",
    "RatioFuzzyMetric",
    "RatioPhiFuzzyMetric",
    "StandardFuzzyMetric",
    "TNorm",
    "example43_map",
    "metric_from_name",
    "perturbation_g",
    "tent",
    "__version__",
]
