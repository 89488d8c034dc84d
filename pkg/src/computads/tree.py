"""Batanin trees and their positions.

A position is stored as a word over {"l", "r"}: the empty word is `here`,
a leading "l" is `inl`, a leading "r" is `inr`.  Its dimension is the number
of "l"s, independent of the tree it lives in.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .errors import ZeroDimensional, WcatSyntaxError

SRC, TGT = "src", "tgt"


@dataclass(frozen=True)
class Tree:
    children: tuple = ()
    dim: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)
    _hash: int = field(default=0, init=False, compare=False, repr=False)

    def __post_init__(self):
        kids = tuple(self.children)
        object.__setattr__(self, "children", kids)
        object.__setattr__(self, "dim", max((c.dim + 1 for c in kids), default=0))
        object.__setattr__(self, "size", 1 + sum(c.size for c in kids))
        object.__setattr__(self, "_hash", hash(("Tree", kids)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Tree) and self._hash == other._hash and self.children == other.children

    def __str__(self):
        return "[" + "".join(str(c) for c in self.children) + "]"

    def __repr__(self):
        return f"Tree({self})"

    def first(self) -> "Tree":
        return self.children[0]

    def rest(self) -> "Tree":
        return Tree(self.children[1:])

    @staticmethod
    def parse(text: str) -> "Tree":
        return parse_tree(text)


def br(*children: Tree) -> Tree:
    return Tree(tuple(children))


def parse_tree(text: str) -> Tree:
    stack: list[list] = []
    result = None
    line, col = 1, 0
    for ch in text:
        col += 1
        if ch == "\n":
            line, col = line + 1, 0
            continue
        if ch.isspace():
            continue
        if result is not None:
            raise WcatSyntaxError("trailing characters after tree literal", line, col, "end of input")
        if ch == "[":
            stack.append([])
        elif ch == "]":
            if not stack:
                raise WcatSyntaxError("unbalanced ']'", line, col, "'['")
            t = Tree(tuple(stack.pop()))
            if stack:
                stack[-1].append(t)
            else:
                result = t
        else:
            raise WcatSyntaxError(f"unexpected character {ch!r} in tree literal", line, col, "'[' or ']'")
    if stack or result is None:
        raise WcatSyntaxError("unterminated tree literal", line, col, "']'")
    return result


@lru_cache(maxsize=None)
def globe(n: int) -> Tree:
    return br() if n == 0 else br(globe(n - 1))


def linear(n: int) -> Tree:
    return Tree((br(),) * n)


@lru_cache(maxsize=None)
def _trees_exact(n: int) -> tuple:
    return tuple(Tree(f) for f in _forests(n - 1))


@lru_cache(maxsize=None)
def _forests(n: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for k in range(1, n + 1):
        for head in _trees_exact(k):
            for tail in _forests(n - k):
                out.append((head,) + tail)
    return tuple(out)


def enumerate_trees(max_nodes: int) -> list:
    """All trees with at most `max_nodes` nodes, smallest first."""
    return [t for n in range(1, max_nodes + 1) for t in _trees_exact(n)]


# positions

@dataclass(frozen=True, order=True)
class Pos:
    path: tuple = ()

    @property
    def dim(self) -> int:
        return self.path.count("l")

    def inl(self) -> "Pos":
        return Pos(("l",) + self.path)

    def inr(self) -> "Pos":
        return Pos(("r",) + self.path)

    def word(self) -> str:
        s = "here"
        for step in reversed(self.path):
            s = ("inl(" if step == "l" else "inr(") + s + ")"
        return s

    __str__ = word

    def __repr__(self):
        return f"Pos({self.word()})"

    @staticmethod
    def parse(word: str) -> "Pos":
        return parse_pos(word)


HERE = Pos()


def inl(p: Pos) -> Pos:
    return p.inl()


def inr(p: Pos) -> Pos:
    return p.inr()


def parse_pos(word: str) -> Pos:
    w = "".join(word.split())
    path = []
    while w != "here":
        if w.startswith("inl(") and w.endswith(")"):
            path.append("l")
        elif w.startswith("inr(") and w.endswith(")"):
            path.append("r")
        else:
            raise WcatSyntaxError(f"bad position word {word!r}", expected="here | inl(...) | inr(...)")
        w = w[4:-1]
    return Pos(tuple(path))


def is_valid(t: Tree, p: Pos) -> bool:
    for step in p.path:
        if not t.children:
            return False
        t = t.children[0] if step == "l" else t.rest()
    return True


@lru_cache(maxsize=None)
def all_positions(t: Tree) -> tuple:
    """Every position of t in canonical order: here, inl-subtree, inr-subtree."""
    if not t.children:
        return (HERE,)
    return ((HERE,) + tuple(p.inl() for p in all_positions(t.first()))
            + tuple(p.inr() for p in all_positions(t.rest())))


@lru_cache(maxsize=None)
def positions(t: Tree, n: int) -> tuple:
    return tuple(p for p in all_positions(t) if p.dim == n)


@lru_cache(maxsize=None)
def position_index(t: Tree) -> dict:
    return {p: i for i, p in enumerate(all_positions(t))}


def _src(path: tuple) -> tuple:
    if path[0] == "r":
        return ("r",) + _src(path[1:])
    rest = path[1:]
    if "l" not in rest:
        return ()
    return ("l",) + _src(rest)


def _tgt(path: tuple) -> tuple:
    if path[0] == "r":
        return ("r",) + _tgt(path[1:])
    rest = path[1:]
    if "l" not in rest:
        return ("r",)
    return ("l",) + _tgt(rest)


def srcpos(p: Pos) -> Pos:
    if p.dim == 0:
        raise ZeroDimensional(f"{p} has dimension 0")
    return Pos(_src(p.path))


def tgtpos(p: Pos) -> Pos:
    if p.dim == 0:
        raise ZeroDimensional(f"{p} has dimension 0")
    return Pos(_tgt(p.path))


def pos_boundary(t: Tree, p: Pos, direction: str) -> Pos:
    if not is_valid(t, p):
        raise ValueError(f"{p} is not a position of {t}")
    return srcpos(p) if direction == SRC else tgtpos(p)


@lru_cache(maxsize=None)
def boundary_tree(t: Tree, k: int) -> Tree:
    if k == 0:
        return br()
    return Tree(tuple(boundary_tree(c, k - 1) for c in t.children))


def _incl(t: Tree, k: int, direction: str, path: tuple) -> tuple:
    if not t.children:
        return path
    if k == 0:
        if direction == SRC:
            return ()
        return ("r",) + _incl(t.rest(), 0, direction, ())
    if not path:
        return ()
    if path[0] == "l":
        return ("l",) + _incl(t.first(), k - 1, direction, path[1:])
    return ("r",) + _incl(t.rest(), k, direction, path[1:])


@dataclass(frozen=True)
class PositionMap:
    source_tree: Tree
    target_tree: Tree
    map: dict = field(compare=False, hash=False)

    def __call__(self, p: Pos) -> Pos:
        return self.map[p]

    def image(self) -> set:
        return set(self.map.values())


@lru_cache(maxsize=None)
def inclusion(t: Tree, k: int, direction: str) -> PositionMap:
    """The source or target inclusion of the k-boundary of t into t."""
    bt = boundary_tree(t, k)
    m = {p: Pos(_incl(t, k, direction, p.path)) for p in all_positions(bt)}
    return PositionMap(bt, t, m)


def _boundary_inductive(t: Tree, direction: str) -> set:
    """All boundary positions (any dimension) by the inductive characterization."""
    if not t.children:
        return {HERE}
    out = set()
    if direction == SRC:
        out.add(HERE)
    out |= {p.inl() for p in _boundary_inductive(t.first(), direction)}
    # inr q is target boundary iff q is; it is source boundary iff q is and
    # q has positive dimension (inr(here) is the target of every inl(p), p a 0-position)
    for q in _boundary_inductive(t.rest(), direction):
        if direction == TGT or q.dim >= 1:
            out.add(q.inr())
    return out


@lru_cache(maxsize=None)
def _boundary_cached(t: Tree, direction: str) -> frozenset:
    return frozenset(_boundary_inductive(t, direction))


def boundary_positions(t: Tree, n: int, direction: str) -> frozenset:
    return frozenset(p for p in _boundary_cached(t, direction) if p.dim == n)


def boundary_positions_bruteforce(t: Tree, n: int, direction: str) -> frozenset:
    face = tgtpos if direction == SRC else srcpos
    hit = {face(q) for q in positions(t, n + 1)}
    return frozenset(p for p in positions(t, n) if p not in hit)


def iter_positions(t: Tree) -> Iterator[Pos]:
    return iter(all_positions(t))
