"""Computads, cells, spheres and homomorphisms.

Cells are immutable terms.  A `Coh` stores its hom out of Free(tree) as a tuple
of argument cells aligned with the canonical order of the tree's positions;
the target computad of that hom is whatever context the cell lives in.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Hashable, Iterable

from .errors import (BadHom, DimMismatch, IllFormedCell, NotFull,
                     NotGeneratorPreserving, TypeMismatch, UnknownGenerator)
from .glob import GlobSet, pos_globset
from .tree import (SRC, TGT, Pos, Tree, all_positions, boundary_positions,
                   globe, position_index, srcpos, tgtpos)


class Var:
    __slots__ = ("dim", "name", "_hash")
    depth = 1

    def __init__(self, dim: int, name: Hashable):
        self.dim = dim
        self.name = name
        self._hash = hash(("Var", dim, name))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Var and self._hash == other._hash
                and self.dim == other.dim and self.name == other.name)

    def __repr__(self):
        return f"Var({self.dim}, {self.name!s})"


class Coh:
    __slots__ = ("tree", "sphere", "args", "dim", "depth", "_hash", "_ty")

    def __init__(self, tree: Tree, sphere: "Sphere", args: Iterable):
        self.tree = tree
        self.sphere = sphere
        self.args = tuple(args)
        self.dim = sphere.dim + 1
        self.depth = max((a.depth for a in self.args), default=0) + 2
        self._hash = hash(("Coh", tree, sphere, self.args))
        self._ty = None

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Coh and self._hash == other._hash and self.tree == other.tree
                and self.sphere == other.sphere and self.args == other.args)

    def __repr__(self):
        return f"Coh({self.tree}, {self.sphere!r}, {list(self.args)!r})"

    def arg(self, p: Pos):
        return self.args[position_index(self.tree)[p]]

    def arg_map(self) -> dict:
        return dict(zip(all_positions(self.tree), self.args))


class Sphere:
    __slots__ = ("lower", "src", "tgt", "dim", "_hash")

    def __init__(self, lower, src, tgt):
        self.lower = lower
        self.src = src
        self.tgt = tgt
        self.dim = -1 if src is None else src.dim
        self._hash = hash(("Sphere", lower, src, tgt))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        return (type(other) is Sphere and self._hash == other._hash and self.src == other.src
                and self.tgt == other.tgt and self.lower == other.lower)

    def __repr__(self):
        if self.src is None:
            return "EMPTY"
        return f"Sphere({self.src!r} -> {self.tgt!r})"

    def tower(self) -> list:
        """Lowest sphere first, excluding the empty one."""
        out, s = [], self
        while s.src is not None:
            out.append(s)
            s = s.lower
        return out[::-1]


EMPTY = Sphere(None, None, None)


def sphere(src, tgt, lower=None) -> Sphere:
    """Sphere from two cells; the lower sphere defaults to the empty one for 0-cells."""
    if lower is None:
        if src.dim != 0:
            raise IllFormedCell("lower sphere required for cells of positive dimension")
        lower = EMPTY
    return Sphere(lower, src, tgt)


def depth(x) -> int:
    if isinstance(x, Hom):
        return max((c.depth for c in x.images.values()), default=0) + 1
    return x.depth


# substitution

def subst(cell, leaf: Callable[[Var], object], memo: dict | None = None):
    """Replace every Var leaf (outside coh spheres) using `leaf`."""
    if memo is None:
        memo = {}
    return _subst(cell, leaf, memo)


def _subst(cell, leaf, memo):
    hit = memo.get(cell)
    if hit is not None:
        return hit
    if type(cell) is Var:
        out = leaf(cell)
    else:
        out = Coh(cell.tree, cell.sphere, tuple(_subst(a, leaf, memo) for a in cell.args))
    memo[cell] = out
    return out


def subst_sphere(s: Sphere, leaf, memo: dict | None = None) -> Sphere:
    if s.src is None:
        return s
    if memo is None:
        memo = {}
    return Sphere(subst_sphere(s.lower, leaf, memo), _subst(s.src, leaf, memo), _subst(s.tgt, leaf, memo))


def rename(cell, f: Callable[[int, Hashable], Hashable]):
    return subst(cell, lambda v: Var(v.dim, f(v.dim, v.name)))


def coh_boundary(c: Coh) -> Sphere:
    if c._ty is None:
        m = c.arg_map()
        c._ty = subst_sphere(c.sphere, lambda v: m[v.name])
    return c._ty


# computads

class Computad:
    """gens[n] is an ordered dict from generator names to attaching (n-1)-spheres."""

    def __init__(self, gens: Iterable[dict] = (), check: bool = True, max_dim: int | None = None):
        gens = [dict(g) for g in gens]
        if max_dim is not None:
            gens = gens[:max_dim + 1] + [{} for _ in range(max_dim + 1 - len(gens))]
        self._gens = tuple(gens)
        self._key = tuple(tuple(g.items()) for g in self._gens)
        self._hash = hash(self._key)
        self._ok: set = set()
        self._supp: dict = {}
        if check:
            self.validate()

    @property
    def max_dim(self) -> int:
        return len(self._gens) - 1

    def gens(self, n: int) -> dict:
        return self._gens[n] if 0 <= n < len(self._gens) else {}

    def all_gens(self):
        for n, g in enumerate(self._gens):
            for name in g:
                yield n, name

    def phi(self, n: int, name) -> Sphere:
        g = self.gens(n)
        if name not in g:
            for m, other in enumerate(self._gens):
                if name in other:
                    raise DimMismatch(f"generator {name} has dimension {m}, not {n}")
            raise UnknownGenerator(f"no generator named {name}")
        return g[name]

    def counts(self) -> list:
        return [len(g) for g in self._gens]

    def __eq__(self, other):
        return isinstance(other, Computad) and self._hash == other._hash and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Computad({self.counts()})"

    def validate(self):
        for n, g in enumerate(self._gens):
            for name, s in g.items():
                if s.dim != n - 1:
                    raise DimMismatch(f"attaching sphere of {name} has dimension {s.dim}", ("gen", n, name))
                try:
                    check_sphere(self, s)
                except Exception as e:
                    if hasattr(e, "at"):
                        raise e.at("gen", n, str(name))
                    raise
                for c in (s.src, s.tgt):
                    if c is not None and _max_gen_dim(c) >= n:
                        raise DimMismatch(f"attaching sphere of {name} mentions higher generators")

    def truncate(self, n: int) -> "Computad":
        return Computad(self._gens[:n + 1], check=False)

    def skeleton(self, m: int) -> "Computad":
        return Computad(self._gens, check=False, max_dim=max(m, self.max_dim))


def _max_gen_dim(c) -> int:
    if type(c) is Var:
        return c.dim
    return max((_max_gen_dim(a) for a in c.args), default=-1)


def truncate(c: Computad, n: int) -> Computad:
    return c.truncate(n)


def skeleton(c: Computad, m: int) -> Computad:
    return c.skeleton(m)


def ty(ctx: Computad, c) -> Sphere:
    if type(c) is Var:
        return ctx.phi(c.dim, c.name)
    return coh_boundary(c)


def cell_boundary(ctx: Computad, c) -> Sphere:
    check_cell(ctx, c)
    return ty(ctx, c)


def src_cell(ctx, c):
    return ty(ctx, c).src


def tgt_cell(ctx, c):
    return ty(ctx, c).tgt


def check_sphere(ctx: Computad, s: Sphere, path: tuple = ()):
    if s.src is None:
        return
    for label, c in (("src", s.src), ("tgt", s.tgt)):
        if c.dim != s.dim:
            raise DimMismatch(f"sphere component has dimension {c.dim}, expected {s.dim}", path + (label,))
        check_cell(ctx, c, path + (label,))
        if ty(ctx, c) != s.lower:
            raise TypeMismatch("sphere components are not parallel", path + (label,))


def check_cell(ctx: Computad, c, path: tuple = ()):
    if c in ctx._ok:
        return
    if type(c) is Var:
        try:
            ctx.phi(c.dim, c.name)
        except (UnknownGenerator, DimMismatch) as e:
            raise e.at(*path)
    elif type(c) is Coh:
        _check_coh(ctx, c, path)
    else:
        raise IllFormedCell(f"not a cell: {c!r}", path)
    ctx._ok.add(c)


def _check_coh(ctx: Computad, c: Coh, path: tuple):
    b, s = c.tree, c.sphere
    if s.src is None:
        raise IllFormedCell("coherence needs a sphere of dimension at least 0", path)
    if b.dim > c.dim:
        raise DimMismatch(f"tree of dimension {b.dim} under a {c.dim}-cell", path)
    check_sphere(free_tree(b), s, path + ("sphere",))
    why = fullness_failure(b, s)
    if why:
        raise NotFull(why, path + ("sphere",))
    ps = all_positions(b)
    if len(c.args) != len(ps):
        raise BadHom(f"{len(c.args)} arguments for {len(ps)} positions", path + ("hom",))
    m = dict(zip(ps, c.args))
    for p, a in m.items():
        here = path + ("hom", p.word())
        if a.dim != p.dim:
            raise BadHom(f"argument of dimension {a.dim} at a {p.dim}-position", here)
        check_cell(ctx, a, here)
        if p.dim == 0:
            continue
        sa, ta = m[srcpos(p)], m[tgtpos(p)]
        if ty(ctx, a) != Sphere(ty(ctx, sa), sa, ta):
            raise BadHom(f"argument at {p.word()} does not match its boundary", here)


def is_well_formed(ctx, c) -> bool:
    try:
        check_cell(ctx, c)
        return True
    except Exception:
        return False


# support

def fv(c) -> frozenset:
    """Top-dimensional support."""
    if type(c) is Var:
        return frozenset([c.name])
    n = c.dim
    out: set = set()
    for p, a in zip(all_positions(c.tree), c.args):
        if p.dim == n:
            out |= fv(a)
    return frozenset(out)


def support(ctx: Computad, c, k: int) -> frozenset:
    key = (c, k)
    hit = ctx._supp.get(key)
    if hit is not None:
        return hit
    n = c.dim
    if k > n:
        out = frozenset()
    elif type(c) is Var:
        if k == n:
            out = frozenset([c.name])
        else:
            s = ctx.phi(n, c.name)
            out = support(ctx, s.src, k) | support(ctx, s.tgt, k)
    else:
        acc: set = set()
        for a in c.args:
            acc |= support(ctx, a, k)
        out = frozenset(acc)
    ctx._supp[key] = out
    return out


def sphere_support(ctx, s: Sphere, k: int) -> frozenset:
    out: frozenset = frozenset()
    while s.src is not None:
        out = out | support(ctx, s.src, k) | support(ctx, s.tgt, k)
        s = s.lower
    return out


def fullness_failure(b: Tree, s: Sphere) -> str:
    """Empty string if s is full over b, otherwise a description of the defect."""
    while s.src is not None:
        n = s.dim
        for cell, direction, name in ((s.src, SRC, "source"), (s.tgt, TGT, "target")):
            want = boundary_positions(b, n, direction)
            got = fv(cell)
            if got != want:
                missing = sorted(want - got)
                extra = sorted(got - want)
                if missing:
                    return f"{name} at dim {n} misses boundary position {missing[0].word()}"
                return f"{name} at dim {n} uses non-boundary position {extra[0].word()}"
        s = s.lower
    return ""


def is_full(b: Tree, s: Sphere) -> bool:
    return not fullness_failure(b, s)


# free computads

def pos_sphere(p: Pos) -> Sphere:
    """The attaching sphere of a position in Free(tree)."""
    if p.dim == 0:
        return EMPTY
    s, t = srcpos(p), tgtpos(p)
    return Sphere(pos_sphere(s), Var(s.dim, s), Var(t.dim, t))


def free_computad(x: GlobSet, n: int | None = None) -> Computad:
    top = x.dim if n is None else n
    gens = []
    spheres: dict = {}
    for k in range(top + 1):
        g = {}
        for c in x.cells_of(k):
            if k == 0:
                s = EMPTY
            else:
                a, b = x.src[k][c], x.tgt[k][c]
                s = Sphere(spheres[(k - 1, a)], Var(k - 1, a), Var(k - 1, b))
            spheres[(k, c)] = s
            g[c] = s
        gens.append(g)
    return Computad(gens, check=False)


@lru_cache(maxsize=None)
def free_tree(b: Tree) -> Computad:
    return free_computad(pos_globset(b))


def disk(n: int) -> Computad:
    return free_tree(globe(n))


def sphere_globset(n: int) -> GlobSet:
    """Boundary of the n+1 globe: cells e{k}- and e{k}+ for k <= n."""
    cells = [[f"e{k}-", f"e{k}+"] for k in range(n + 1)]
    src = [{}] + [{f"e{k}-": f"e{k-1}-", f"e{k}+": f"e{k-1}-"} for k in range(1, n + 1)]
    tgt = [{}] + [{f"e{k}-": f"e{k-1}+", f"e{k}+": f"e{k-1}+"} for k in range(1, n + 1)]
    return GlobSet(cells, src, tgt)


def sphere_computad(n: int) -> Computad:
    if n < 0:
        return Computad([])
    return free_computad(sphere_globset(n))


INITIAL = Computad([])


# homomorphisms

class Hom:
    """images maps (dim, generator name) of the source to cells of the target."""

    def __init__(self, source: Computad, target: Computad, images: dict, check: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        self._memo: dict = {}
        if check:
            self.validate()

    def validate(self):
        for n, name in self.source.all_gens():
            key = (n, name)
            where = ("image", n, str(name))
            if key not in self.images:
                raise BadHom(f"no image for generator {name}", where)
            img = self.images[key]
            if img.dim != n:
                raise BadHom(f"image of {name} has dimension {img.dim}", where)
            check_cell(self.target, img, where)
            want = self.apply_sphere(self.source.phi(n, name))
            if ty(self.target, img) != want:
                raise BadHom(f"image of {name} breaks the boundary square", where)
        extra = set(self.images) - set(self.source.all_gens())
        if extra:
            raise BadHom(f"images given for unknown generators {sorted(map(str, extra))}")

    def _leaf(self, v: Var):
        try:
            return self.images[(v.dim, v.name)]
        except KeyError:
            raise TypeMismatch(f"generator {v.name} is not in the source") from None

    def __call__(self, c):
        return _subst(c, self._leaf, self._memo)

    apply = __call__

    def apply_sphere(self, s: Sphere) -> Sphere:
        return subst_sphere(s, self._leaf, self._memo)

    def compose(self, other: "Hom") -> "Hom":
        """self after other."""
        if other.target != self.source:
            raise TypeMismatch("homs are not composable")
        return Hom(other.source, self.target, {k: self(v) for k, v in other.images.items()}, check=False)

    def is_generator_preserving(self) -> bool:
        return all(type(c) is Var for c in self.images.values())

    def __eq__(self, other):
        return (isinstance(other, Hom) and self.source == other.source
                and self.target == other.target and self.images == other.images)

    def __hash__(self):
        return hash((self.source, self.target, frozenset(self.images.items())))

    def __repr__(self):
        return f"Hom({self.source!r} -> {self.target!r})"


def apply_hom(h: Hom, c):
    return h(c)


def compose_hom(g: Hom, h: Hom) -> Hom:
    return g.compose(h)


def identity_hom(c: Computad) -> Hom:
    return Hom(c, c, {(n, v): Var(n, v) for n, v in c.all_gens()}, check=False)


def hom_from_names(source: Computad, target: Computad, m: dict) -> Hom:
    """Generator-preserving hom from a map (dim, name) -> name."""
    return Hom(source, target, {k: Var(k[0], v) for k, v in m.items()})


def coh_hom(ctx: Computad, c: Coh) -> Hom:
    """The hom Free(tree) -> ctx stored inside a coherence cell."""
    return Hom(free_tree(c.tree), ctx, {(p.dim, p): a for p, a in c.arg_map().items()}, check=False)


def tree_hom(ctx: Computad, b: Tree, images: dict, check: bool = True) -> Hom:
    """Hom Free(b) -> ctx from a map position -> cell."""
    return Hom(free_tree(b), ctx, {(p.dim, p): images[p] for p in all_positions(b)}, check=check)


def globe_hom(ctx: Computad, c, check: bool = True) -> Hom:
    """The hom from the n-disk classifying an n-cell."""
    n = c.dim
    top = Pos(("l",) * n)
    images = {top: c}
    stack = [top]
    while stack:
        p = stack.pop()
        if p.dim == 0:
            continue
        s = ty(ctx, images[p])
        for q, cell in ((srcpos(p), s.src), (tgtpos(p), s.tgt)):
            if q not in images:
                images[q] = cell
                stack.append(q)
    return tree_hom(ctx, globe(n), images, check=check)


def top_position(n: int) -> Pos:
    return Pos(("l",) * n)


def sphere_hom(ctx: Computad, s: Sphere) -> Hom:
    """The hom from sphere_computad(n) classifying an n-sphere."""
    images = {}
    for k, layer in enumerate(s.tower()):
        images[(k, f"e{k}-")] = layer.src
        images[(k, f"e{k}+")] = layer.tgt
    return Hom(sphere_computad(s.dim), ctx, images)


def colimit_var(objects: list, arrows: list):
    """Colimit of computads along generator-preserving homs.

    arrows are triples (i, j, hom).  Returns (computad, cocone) with cocone[i]
    a generator-preserving Hom from objects[i].
    """
    for i, j, h in arrows:
        if not h.is_generator_preserving():
            raise NotGeneratorPreserving(f"arrow {i} -> {j} is not generator-preserving")
    parent: dict = {}
    rank: dict = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    top = max((o.max_dim for o in objects), default=-1)
    for i, o in enumerate(objects):
        for k, (n, v) in enumerate(o.all_gens()):
            key = (n, i, v)
            parent[key] = key
            rank[key] = (i, k)
    for i, j, h in arrows:
        for (n, v), img in h.images.items():
            a, b = find((n, i, v)), find((n, j, img.name))
            if a != b:
                if rank[a] <= rank[b]:
                    parent[b] = a
                else:
                    parent[a] = b
    names: dict = {}
    gens = [dict() for _ in range(top + 1)]
    for key in sorted(parent, key=lambda x: (x[0], rank[x])):
        r = find(key)
        if r in names:
            continue
        n, i, v = r
        name = v
        while name in gens[n]:
            name = f"{name}'"
        names[r] = name
        gens[n][name] = None
    cocone = [{} for _ in objects]
    for i, o in enumerate(objects):
        for n, v in o.all_gens():
            cocone[i][(n, v)] = Var(n, names[find((n, i, v))])
    for n in range(top + 1):
        for i, o in enumerate(objects):
            leaf = lambda var, i=i: cocone[i][(var.dim, var.name)]
            for v in o.gens(n):
                name = names[find((n, i, v))]
                s = subst_sphere(o.phi(n, v), leaf)
                if gens[n][name] is None:
                    gens[n][name] = s
                elif gens[n][name] != s:
                    raise BadHom(f"diagram does not commute at generator {v}")
    result = Computad(gens, check=False)
    homs = [Hom(o, result, cocone[i], check=False) for i, o in enumerate(objects)]
    return result, homs
