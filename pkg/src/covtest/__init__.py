"""Exact tools for testing, reconstructing and refuting coverage set functions."""
from .core import (
    CountingOracle,
    CoverageInstance,
    DenseSetFunction,
    SubsetMask,
    enumerate_subsets,
    eval_instance,
    oracle_eval,
)
from .wtransform import WCoefficients, forward, inverse, is_coverage, probe_coefficient, w_distance

__all__ = [
    "CountingOracle",
    "CoverageInstance",
    "DenseSetFunction",
    "SubsetMask",
    "WCoefficients",
    "enumerate_subsets",
    "eval_instance",
    "forward",
    "inverse",
    "is_coverage",
    "oracle_eval",
    "probe_coefficient",
    "w_distance",
]
