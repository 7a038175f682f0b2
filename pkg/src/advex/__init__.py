"""Optimal exploration of unknown graphs with advice."""

from .advice import OracleAdvice, TapeAdvice, record, replay
from .codec import AdviceTape
from .env import Environment
from .explorer import TABLE_VARIANTS, VariantConfig, explore, parse_variant
from .graph import Digraph, Walk, load_graph, make_graph, parse_graph, profile_of
from .oracle import solve, validate_structure

__all__ = [
    "AdviceTape", "Digraph", "Environment", "OracleAdvice", "TABLE_VARIANTS", "TapeAdvice",
    "VariantConfig", "Walk", "explore", "load_graph", "make_graph", "parse_graph",
    "parse_variant", "profile_of", "record", "replay", "solve", "validate_structure",
]
