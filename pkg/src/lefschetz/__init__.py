"""Positive Dehn twist relations, Lefschetz fibration invariants and divisor pairings."""

from .errors import IllegalMove, LefschetzError, NoSuchFibre, NonDivisible, NonIntegral, ParseError, RefusesVerdict
from .surface import Curve, CurveAlphabet, algebraic_intersection, standard_alphabet, transvection_matrix
from .words import Relation, RewriteMove, Trace, TwistCensus, TwistWord, check_trace, homology_image, verify_relation_homology

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "CurveAlphabet",
    "IllegalMove",
    "LefschetzError",
    "NoSuchFibre",
    "NonDivisible",
    "NonIntegral",
    "ParseError",
    "RefusesVerdict",
    "Relation",
    "RewriteMove",
    "Trace",
    "TwistCensus",
    "TwistWord",
    "algebraic_intersection",
    "check_trace",
    "homology_image",
    "standard_alphabet",
    "transvection_matrix",
    "verify_relation_homology",
]
