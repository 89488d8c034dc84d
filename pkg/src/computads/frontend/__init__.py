"""Surface language, codecs and command line."""

from .elaborate import Environment, elaborate, load
from .syntax import parse, parse_term

__all__ = ["Environment", "elaborate", "load", "parse", "parse_term"]
