"""Shapes of cells and their representing computads (plexes).

A shape is a cell of the terminal computad.  Its n-generators are the
(n-1)-sphere shapes, so a shape `Var` carries a sphere shape as its name and
the unique 0-shape is Var(0, EMPTY).
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .computad import (EMPTY, INITIAL, Coh, Computad, Hom, Sphere, Var, colimit_var,
                       subst, subst_sphere, ty)
from .errors import DimMismatch, ShapeMismatch, UnknownGenerator
from .tree import all_positions, srcpos, tgtpos


class _Interner:
    def __init__(self):
        self._table: dict = {}
        self._lock = threading.Lock()

    def __call__(self, term):
        hit = self._table.get(term)
        if hit is not None:
            return hit
        with self._lock:
            return self._table.setdefault(term, term)


intern = _Interner()


class TerminalComputad(Computad):
    """The terminal computad, known only through its attaching maps."""

    def __init__(self):
        super().__init__([], check=False)

    def phi(self, n, name):
        if not isinstance(name, Sphere):
            raise UnknownGenerator(f"{name!r} is not a shape generator")
        if name.dim != n - 1:
            raise DimMismatch(f"shape generator of dimension {name.dim + 1} used at {n}")
        return name

    def __repr__(self):
        return "TerminalComputad()"


TOP = TerminalComputad()
STAR = intern(Var(0, EMPTY))


def shape_sphere(ctx: Computad, s: Sphere) -> Sphere:
    if s.src is None:
        return EMPTY
    return intern(Sphere(shape_sphere(ctx, s.lower), shape(ctx, s.src), shape(ctx, s.tgt)))


def shape(ctx: Computad, c):
    def leaf(v):
        return intern(Var(v.dim, shape_sphere(ctx, ctx.phi(v.dim, v.name))))
    return intern(subst(c, leaf))


@dataclass
class Plex:
    computad: Computad
    canonical: object


@lru_cache(maxsize=None)
def plex_of_cell(s) -> Plex:
    if type(s) is Var:
        base = plex_of_sphere(s.name)
        n = s.dim
        gens = [dict(base.computad.gens(k)) for k in range(n)] + [{"v": base.canonical}]
        return Plex(Computad(gens, check=False), Var(n, "v"))
    ps = all_positions(s.tree)
    index = {p: i for i, p in enumerate(ps)}
    parts = [plex_of_cell(a) for a in s.args]
    arrows = []
    for p in ps:
        if p.dim == 0:
            continue
        own = parts[index[p]]
        bd = ty(own.computad, own.canonical)
        for face, cell in ((srcpos(p), bd.src), (tgtpos(p), bd.tgt)):
            arrows.append((index[face], index[p], classify(parts[index[face]], own.computad, cell)))
    colim, cocone = colimit_var([q.computad for q in parts], arrows)
    args = tuple(cocone[i](q.canonical) for i, q in enumerate(parts))
    return Plex(colim, Coh(s.tree, s.sphere, args))


@lru_cache(maxsize=None)
def plex_of_sphere(s: Sphere) -> Plex:
    if s.src is None:
        return Plex(INITIAL, EMPTY)
    low = plex_of_sphere(s.lower)
    pa, pb = plex_of_cell(s.src), plex_of_cell(s.tgt)
    ja = classify_sphere(low, pa.computad, ty(pa.computad, pa.canonical))
    jb = classify_sphere(low, pb.computad, ty(pb.computad, pb.canonical))
    colim, cocone = colimit_var([low.computad, pa.computad, pb.computad], [(0, 1, ja), (0, 2, jb)])
    return Plex(colim, Sphere(cocone[0].apply_sphere(low.canonical), cocone[1](pa.canonical),
                              cocone[2](pb.canonical)))


def _match(src_ctx: Computad, ctx: Computad, pairs: list) -> dict:
    binding: dict = {}
    while pairs:
        pat, val = pairs.pop()
        if isinstance(pat, Sphere):
            if not isinstance(val, Sphere) or pat.dim != val.dim:
                raise ShapeMismatch("sphere dimensions differ")
            if pat.src is not None:
                pairs += [(pat.lower, val.lower), (pat.src, val.src), (pat.tgt, val.tgt)]
        elif type(pat) is Var:
            if type(val) is not Var or val.dim != pat.dim:
                raise ShapeMismatch(f"generator {pat.name} met a composite cell")
            key = (pat.dim, pat.name)
            if key in binding:
                if binding[key] != val.name:
                    raise ShapeMismatch(f"generator {pat.name} bound twice")
                continue
            binding[key] = val.name
            pairs.append((src_ctx.phi(pat.dim, pat.name), ctx.phi(val.dim, val.name)))
        else:
            if type(val) is not Coh or val.tree != pat.tree or val.sphere != pat.sphere:
                raise ShapeMismatch("coherence cells differ")
            pairs += list(zip(pat.args, val.args))
    return binding


def _classify(p: Plex, ctx: Computad, value) -> Hom:
    binding = _match(p.computad, ctx, [(p.canonical, value)])
    missing = [g for g in p.computad.all_gens() if g not in binding]
    if missing:
        raise ShapeMismatch(f"generator {missing[0][1]} of the plex was not reached")
    return Hom(p.computad, ctx, {k: Var(k[0], v) for k, v in binding.items()}, check=False)


def classify(p: Plex, ctx: Computad, c) -> Hom:
    """The generator-preserving hom out of the plex whose value at the canonical cell is c."""
    h = _classify(p, ctx, c)
    if h(p.canonical) != c:
        raise ShapeMismatch("cell does not have the shape of the plex")
    return h


def classify_sphere(p: Plex, ctx: Computad, s: Sphere) -> Hom:
    h = _classify(p, ctx, s)
    if h.apply_sphere(p.canonical) != s:
        raise ShapeMismatch("sphere does not have the shape of the plex")
    return h


def evaluate(h: Hom, p: Plex):
    if isinstance(p.canonical, Sphere):
        return h.apply_sphere(p.canonical)
    return h(p.canonical)


def enumerate_var_homs(c: Computad, d: Computad) -> list:
    """All generator-preserving homs c -> d."""
    by_sphere: dict = {}
    for n, w in d.all_gens():
        by_sphere.setdefault((n, d.phi(n, w)), []).append(w)
    order = list(c.all_gens())
    out = []
    images: dict = {}

    def leaf(v):
        return images[(v.dim, v.name)]

    def go(i):
        if i == len(order):
            out.append(Hom(c, d, dict(images), check=False))
            return
        n, v = order[i]
        want = subst_sphere(c.phi(n, v), leaf)
        for w in by_sphere.get((n, want), ()):
            images[(n, v)] = Var(n, w)
            go(i + 1)
        images.pop((n, v), None)

    go(0)
    return out


def cells_of_shape(ctx: Computad, s, memo: dict | None = None) -> list:
    """Every cell of ctx with shape s, found by structural search."""
    if memo is None:
        memo = {}
    if s in memo:
        return memo[s]
    if type(s) is Var:
        out = [Var(s.dim, w) for w in ctx.gens(s.dim) if shape_sphere(ctx, ctx.phi(s.dim, w)) == s.name]
    else:
        ps = all_positions(s.tree)
        order = sorted(range(len(ps)), key=lambda i: ps[i].dim)
        index = {p: i for i, p in enumerate(ps)}
        cands = [cells_of_shape(ctx, a, memo) for a in s.args]
        args = [None] * len(ps)
        out = []

        def go(j):
            if j == len(order):
                out.append(Coh(s.tree, s.sphere, tuple(args)))
                return
            i = order[j]
            p = ps[i]
            for c in cands[i]:
                if p.dim:
                    sa, ta = args[index[srcpos(p)]], args[index[tgtpos(p)]]
                    if ty(ctx, c) != Sphere(ty(ctx, sa), sa, ta):
                        continue
                args[i] = c
                go(j + 1)
            args[i] = None

        go(0)
    memo[s] = out
    return out
