"""Exact differential, boomerang and Walsh spectra of power maps over odd-characteristic fields.

The main object of study is ``f(x) = x^(q+2)`` over ``GF(q^2)``; most engines accept
any exponent.
"""

from ffspectra.ff_core import (
    EnumerationCapError,
    FieldCtx,
    FieldParams,
    Felt,
    QuadClass,
    TowerCtx,
    build_field,
    build_tower,
    enumeration_cap,
)
from ffspectra.cycint import CycInt
from ffspectra.spectrum import Spectrum

__all__ = [
    "CycInt",
    "EnumerationCapError",
    "Felt",
    "FieldCtx",
    "FieldParams",
    "QuadClass",
    "Spectrum",
    "TowerCtx",
    "build_field",
    "build_tower",
    "enumeration_cap",
]

__version__ = "0.1.0"
