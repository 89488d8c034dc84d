"""Graphviz rendering of pasting diagrams."""
from __future__ import annotations

from ..glob import pos_globset
from ..tree import Tree, srcpos, tgtpos


def _q(s: str) -> str:
    return '"' + s.replace('"', r'\"') + '"'


def emit_dot(t: Tree, name: str = "pasting") -> str:
    """Vertices and edges are drawn; 2-cells become dashed arrows between
    their edges' midpoints, and anything higher is listed in a comment."""
    g = pos_globset(t)
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=point];"]
    for p in g.cells_of(0):
        lines.append(f"  {_q(p.word())} [xlabel={_q(p.word())}];")
    for p in g.cells_of(1):
        lines.append(f"  {_q(srcpos(p).word())} -> {_q(tgtpos(p).word())} [label={_q(p.word())}];")
    if g.dim >= 2:
        for p in g.cells_of(1):
            lines.append(f"  {_q('mid ' + p.word())} [shape=none, label=\"\", width=0];")
        for p in g.cells_of(2):
            a, b = _q("mid " + srcpos(p).word()), _q("mid " + tgtpos(p).word())
            lines.append(f"  {a} -> {b} [style=dashed, label={_q(p.word())}, constraint=false];")
    for n in range(3, g.dim + 1):
        for p in g.cells_of(n):
            lines.append(f"  // {n}-cell {p.word()}: {srcpos(p).word()} => {tgtpos(p).word()}")
    lines.append("}")
    return "\n".join(lines) + "\n"
