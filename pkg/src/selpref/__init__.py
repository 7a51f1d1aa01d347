"""Selectional-preference toolkit: extraction, scoring, evaluation,
annotation pipeline, commonsense matching, and pronoun resolution."""

__version__ = "0.1.0"

from .core import SPPair, SPRelation, parse_relation

__all__ = ["SPPair", "SPRelation", "parse_relation", "__version__"]
