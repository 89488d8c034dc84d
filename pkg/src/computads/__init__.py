"""Computads for weak omega-categories: trees, cells, factorizations and plexes."""

from .errors import WcatError
from .tree import Tree, Pos, br, globe, linear
from .computad import Computad, Var, Coh, Sphere, Hom, EMPTY


__all__ = [
    "WcatError", "Tree", "Pos", "br", "globe", "linear",
    "Computad", "Var", "Coh", "Sphere", "Hom", "EMPTY",
]
