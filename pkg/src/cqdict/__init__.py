"""Classifier/quantifier dictionary tools.

UW parsing, UNL annotation graphs, a CQ dictionary with classifier
selection, floating-quantifier normalization and phraseme mining.
"""

from .dictionary import Dictionary, load_dictionary, load_seed
from .normalize import normalize
from .phraseme import build_kwic, extract_candidates, filter_by_dictionary
from .selection import disambiguate, insert_dummy_classifier, noun_context, select_existential
from .unl import UnlDocument, parse_unl, serialize_unl, validate
from .uw import UW, format_uw, parse_uw, subsumes

__version__ = "0.1.0"

__all__ = [
    "Dictionary",
    "UW",
    "UnlDocument",
    "build_kwic",
    "disambiguate",
    "extract_candidates",
    "filter_by_dictionary",
    "format_uw",
    "insert_dummy_classifier",
    "load_dictionary",
    "load_seed",
    "normalize",
    "noun_context",
    "parse_unl",
    "parse_uw",
    "select_existential",
    "serialize_unl",
    "subsumes",
    "validate",
]
