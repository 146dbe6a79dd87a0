"""Combinatorics of maximal parabolic quotients of Weyl groups and the pole
data of the associated normalized intertwining operators."""

from .checks import CheckReport, run_checks
from .eisenstein import PoleReport, basic_function_numerator, eisenstein_poles
from .lfactor import LFactorProduct, pole_locus
from .parabolic import ParabolicDatum, level_sets, parabolic_datum
from .quotient import Quotient, enumerate_quotient
from .rootsystem import CartanType, UsageError, build_root_datum
from .words import ReducedWord, canonical_w0_word, coroot_sequence

__all__ = [
    "CartanType",
    "CheckReport",
    "LFactorProduct",
    "ParabolicDatum",
    "PoleReport",
    "Quotient",
    "ReducedWord",
    "UsageError",
    "basic_function_numerator",
    "build_root_datum",
    "canonical_w0_word",
    "coroot_sequence",
    "eisenstein_poles",
    "enumerate_quotient",
    "level_sets",
    "parabolic_datum",
    "pole_locus",
    "run_checks",
]
