"""Oriented right-angled Artin groups, Klein-Salvetti complexes and CAT(kappa) tooling."""

__version__ = "0.1.0"

from ._util import InputError, OrartError
from .special_graph import SpecialGraph
from .oraag import Word, normalize, presentation

__all__ = ["InputError", "OrartError", "SpecialGraph", "Word", "normalize", "presentation", "__version__"]
