"""Exact differentiation of simplicial presentations to Chevalley-Eilenberg algebras."""

__version__ = "0.1.0"

from .cochains import Cochain, cup, delta, reduce_mod_Jhat
from .lie import BRACKET_SIGN, CEAlgebra, ce_algebra, check_d_squared, lie_bracket_constants
from .presentation import FramedPresentation, linear_presentation, validate_presentation

__all__ = [
    "BRACKET_SIGN",
    "CEAlgebra",
    "Cochain",
    "FramedPresentation",
    "ce_algebra",
    "check_d_squared",
    "cup",
    "delta",
    "lie_bracket_constants",
    "linear_presentation",
    "reduce_mod_Jhat",
    "validate_presentation",
]
