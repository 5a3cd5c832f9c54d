"""Degeneration combinatorics of string and band families over gentle algebras."""

from .quiver import Arrow, GentleReport, Quiver, QuiverError, WalkError
from .words import BandWord, StringWord, Substring
from .hvectors import Diagramme, HPrimeVector, HVector

__version__ = "0.1.0"

__all__ = [
    "Arrow",
    "BandWord",
    "Diagramme",
    "GentleReport",
    "HPrimeVector",
    "HVector",
    "Quiver",
    "QuiverError",
    "StringWord",
    "Substring",
    "WalkError",
    "__version__",
]
