"""Exact computations around Steinberg sections, the Gelfand-Zetlin parametrization
of the lower Borel of GL(n), and the Poisson bracket on its dual group."""

from __future__ import annotations

from .algebra import Dual, Mat, det, leading_block, mat_mul, principal_minor_sums, triangular_inverse
from .gzparam import CharTriangle, StructuredA, pi_inverse, pi_map, simultaneous_quotient
from .poisson import HPoint, bracket, gz_family, h_point
from .roots import Ordering, RootDataA, beta_set
from .steinberg import SteinbergInput, steinberg_beta_form, steinberg_invert, steinberg_section

__version__ = "0.1.0"

__all__ = [
    "CharTriangle",
    "Dual",
    "HPoint",
    "Mat",
    "Ordering",
    "RootDataA",
    "SteinbergInput",
    "StructuredA",
    "beta_set",
    "bracket",
    "det",
    "gz_family",
    "h_point",
    "leading_block",
    "mat_mul",
    "pi_inverse",
    "pi_map",
    "principal_minor_sums",
    "simultaneous_quotient",
    "steinberg_beta_form",
    "steinberg_invert",
    "steinberg_section",
    "triangular_inverse",
]
