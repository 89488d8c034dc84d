"""Unbiased composites, grafting and the usual builders on top of them."""
from __future__ import annotations

from functools import lru_cache

from .computad import (EMPTY, Coh, Computad, Hom, Sphere, Var, check_cell,
                       free_computad, free_tree, globe_hom, subst, ty)
from .errors import BoundaryMismatch, DimTooLow, NotComposable
from .glob import GlobSet
from .tree import (SRC, TGT, HERE, Pos, Tree, all_positions, boundary_tree, br, globe,
                   inclusion, linear, srcpos, tgtpos)


def identity_args(b: Tree) -> tuple:
    return tuple(Var(p.dim, p) for p in all_positions(b))


def push(m, c):
    """Free(m)(c) for a position map m."""
    return subst(c, lambda v: Var(v.dim, m.map[v.name]))


def push_sphere(m, s: Sphere) -> Sphere:
    if s.src is None:
        return s
    return Sphere(push_sphere(m, s.lower), push(m, s.src), push(m, s.tgt))


@lru_cache(maxsize=None)
def unbiased_comp(b: Tree, n: int):
    if n < b.dim:
        raise DimTooLow(f"composite of a {b.dim}-dimensional tree needs n >= {b.dim}")
    if b == globe(n):
        return Var(n, Pos(("l",) * n))
    return Coh(b, unbiased_sphere(b, n - 1), identity_args(b))


@lru_cache(maxsize=None)
def unbiased_sphere(b: Tree, n: int) -> Sphere:
    """A_{b,n}: lower boundary of the composite, pushed forward along s and t."""
    if n < 0:
        return EMPTY
    if n == 0:
        return Sphere(EMPTY, Var(0, inclusion(b, 0, SRC).map[HERE]), Var(0, inclusion(b, 0, TGT).map[HERE]))
    inner = unbiased_comp(boundary_tree(b, n), n)
    return Sphere(unbiased_sphere(b, n - 1),
                  push(inclusion(b, n, SRC), inner),
                  push(inclusion(b, n, TGT), inner))


def graft(ctx: Computad, y: GlobSet, d: dict, outer):
    """Substitute the cells d[x] for the generators x of Free(y) in `outer`.

    d is keyed by (dim, cell) pairs of y.
    """
    fy = free_computad(y)
    check_cell(fy, outer)
    for (n, x), c in d.items():
        if c.dim != n:
            raise BoundaryMismatch(f"{x} has dimension {n} but its image has dimension {c.dim}")
        if n >= 1:
            s = ty(ctx, c)
            if s.src != d[(n - 1, y.src[n][x])] or s.tgt != d[(n - 1, y.tgt[n][x])]:
                raise BoundaryMismatch(f"image of {x} does not match the images of its faces")
    return subst(outer, lambda v: d[(v.dim, v.name)])


def _tree_images(ctx: Computad, b: Tree, tops: dict) -> dict:
    """Extend an assignment on some positions to all positions via boundaries."""
    images = dict(tops)
    stack = list(tops)
    while stack:
        p = stack.pop()
        if p.dim == 0:
            continue
        s = ty(ctx, images[p])
        for q, c in ((srcpos(p), s.src), (tgtpos(p), s.tgt)):
            if q in images:
                if images[q] != c:
                    raise NotComposable(f"cells disagree on the shared boundary at {q.word()}")
            else:
                images[q] = c
                stack.append(q)
    missing = [p for p in all_positions(b) if p not in images]
    if missing:
        raise NotComposable(f"no cell determined for {missing[0].word()}")
    return images


def maximal_positions(b: Tree) -> list:
    """Positions which are no face of another position, in canonical order."""
    faces = set()
    for p in all_positions(b):
        if p.dim:
            faces.add(srcpos(p))
            faces.add(tgtpos(p))
    return [p for p in all_positions(b) if p not in faces]


def fill_tree(ctx: Computad, b: Tree, cells: list) -> Hom:
    """Hom Free(b) -> ctx sending the maximal positions of b to `cells`."""
    tops = maximal_positions(b)
    if len(tops) != len(cells):
        raise NotComposable(f"{len(cells)} cells for {len(tops)} maximal positions")
    for p, c in zip(tops, cells):
        check_cell(ctx, c)
        if c.dim != p.dim:
            raise NotComposable(f"cell of dimension {c.dim} where {p.dim} was expected")
    images = _tree_images(ctx, b, dict(zip(tops, cells)))
    return Hom(free_tree(b), ctx, {(p.dim, p): images[p] for p in all_positions(b)})


def composite(ctx: Computad, b: Tree, cells: list, n: int | None = None):
    """comp^b_n grafted onto the pasting diagram given by the maximal cells."""
    h = fill_tree(ctx, b, cells)
    return h(unbiased_comp(b, b.dim if n is None else n))


def id_cell(ctx: Computad, c):
    n = c.dim
    return globe_hom(ctx, c)(unbiased_comp(globe(n), n + 1))


def binary_tree(k: int, m: int) -> Tree:
    t = br(globe(m), globe(m))
    for _ in range(k):
        t = br(t)
    return t


def binary_comp(ctx: Computad, a, b, k: int):
    """Composite of two n-cells along their k-dimensional boundary."""
    n = a.dim
    if b.dim != n or not 0 <= k < n:
        raise NotComposable(f"cannot compose cells of dimensions {a.dim}, {b.dim} along {k}")
    return composite(ctx, binary_tree(k, n - k - 1), [a, b])


def vertical_tree(n: int, count: int) -> Tree:
    """The tree of `count` n-cells composed along their (n-1)-boundary."""
    t = linear(count)
    for _ in range(n - 1):
        t = br(t)
    return t


def comp_cells(ctx: Computad, cells: list):
    """Unbiased composite of n-cells along codimension one (linear(k) for edges)."""
    if not cells:
        raise NotComposable("comp needs at least one cell")
    n = cells[0].dim
    if n == 0 or any(c.dim != n for c in cells):
        raise NotComposable("comp needs cells of one positive dimension")
    return composite(ctx, vertical_tree(n, len(cells)), list(cells))


def _linear_sphere(k: int) -> Sphere:
    b = linear(k)
    return unbiased_sphere(b, 0)


def associator(ctx: Computad, f, g, h):
    b = linear(3)
    fb = free_tree(b)
    e = [Var(1, p) for p in maximal_positions(b)]
    lhs = comp_cells(fb, [e[0], comp_cells(fb, [e[1], e[2]])])
    rhs = comp_cells(fb, [comp_cells(fb, [e[0], e[1]]), e[2]])
    alpha = Coh(b, Sphere(_linear_sphere(3), lhs, rhs), identity_args(b))
    return fill_tree(ctx, b, [f, g, h])(alpha)


def unitor(ctx: Computad, f, g, h):
    """The 2-cell comp(f, g, id, h) => comp(f, g, h) with the identity on tgt g."""
    b = linear(3)
    fb = free_tree(b)
    e = [Var(1, p) for p in maximal_positions(b)]
    d2 = ty(fb, e[1]).tgt
    lhs = comp_cells(fb, [e[0], e[1], id_cell(fb, d2), e[2]])
    rhs = comp_cells(fb, e)
    upsilon = Coh(b, Sphere(_linear_sphere(3), lhs, rhs), identity_args(b))
    return fill_tree(ctx, b, [f, g, h])(upsilon)
