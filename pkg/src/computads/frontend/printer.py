"""Surface syntax for values; `parse` reads everything printed here back."""
from __future__ import annotations

from ..computad import Computad, Hom, Sphere, Var, free_tree
from ..tree import Pos, all_positions
from .syntax import IDENT


def name_text(name) -> str:
    if isinstance(name, Pos):
        return name.word()
    text = str(name)
    if IDENT.fullmatch(text) and text not in ("here",):
        return text
    return f"`{text}`"


def _dims_of(ctx: Computad, name) -> int:
    return sum(1 for n in range(ctx.max_dim + 1) if name in ctx.gens(n))


def print_cell(c, ctx: Computad | None = None) -> str:
    if type(c) is Var:
        if isinstance(c.name, Sphere):
            return "*" if c.name.src is None else f"(* {print_cell(c.name.src)} {print_cell(c.name.tgt)})"
        if ctx is not None and _dims_of(ctx, c.name) == 1:
            return name_text(c.name)
        return f"(var {name_text(c.name)} {c.dim})"
    inner = free_tree(c.tree)
    hom = ", ".join(f"{p.word()} => {print_cell(a, ctx)}" for p, a in zip(all_positions(c.tree), c.args))
    return f"(coh {c.tree} {print_sphere(c.sphere, inner)} {{{hom}}})"


def print_sphere(s: Sphere, ctx: Computad | None = None) -> str:
    if s.src is None:
        return "(sphere)"
    return f"(sphere {print_cell(s.src, ctx)} {print_cell(s.tgt, ctx)})"


def print_computad(name: str, c: Computad) -> str:
    lines = [f"computad {name} := {{"]
    zero = [name_text(v) for v in c.gens(0)]
    if zero:
        lines.append(f"  {' '.join(zero)} : *,")
    for n in range(1, c.max_dim + 1):
        lower = Computad([c.gens(k) for k in range(n)], check=False)
        for v, s in c.gens(n).items():
            lines.append(f"  {name_text(v)} : {print_cell(s.src, lower)} -> {print_cell(s.tgt, lower)},")
    lines.append("}")
    return "\n".join(lines)


def print_hom(name: str, h: Hom, source: str, target: str) -> str:
    body = ", ".join(f"{name_text(v)} => {print_cell(h.images[(n, v)], h.target)}"
                     for n, v in h.source.all_gens())
    return f"hom {name} : {source} -> {target} := {{{body}}}"
