"""Covers, immersions and the two factorization systems."""
from __future__ import annotations

from dataclasses import dataclass, field

from .computad import (INITIAL, Coh, Computad, Hom, Sphere, Var, check_cell,
                       free_tree, fullness_failure, globe_hom, sphere_hom, subst,
                       subst_sphere, support, ty)
from .errors import (DimTooHigh, NotACover, NotAPastingDiagram, NotFreeSource,
                     NotFreeTarget, NotFull, NotImmersion, NotParallel,
                     SupportNotContained)
from .glob import GlobSet, substitute_with_cocone, tree_from_globset
from .opalg import identity_args, push
from .tree import SRC, TGT, Pos, Tree, all_positions, boundary_tree, globe, inclusion


def hom_support(h: Hom, k: int) -> frozenset:
    out: set = set()
    for c in h.images.values():
        out |= support(h.target, c, k)
    return frozenset(out)


def is_cover(h: Hom) -> bool:
    return all(hom_support(h, k) == frozenset(h.target.gens(k)) for k in range(h.target.max_dim + 1))


def is_immersion(h: Hom) -> bool:
    if not h.is_generator_preserving():
        return False
    for k in range(h.source.max_dim + 1):
        names = [h.images[(k, v)].name for v in h.source.gens(k)]
        if len(set(names)) != len(names):
            return False
    return True


def cell_is_cover(ctx: Computad, c) -> bool:
    return is_cover(globe_hom(ctx, c))


def position_hom(m) -> Hom:
    """Free(m) for a map of positions, as a generator-preserving hom."""
    return Hom(free_tree(m.source_tree), free_tree(m.target_tree),
               {(p.dim, p): Var(p.dim, q) for p, q in m.map.items()}, check=False)


def lift_through_immersion(tau: Hom, sigma: Hom) -> Hom:
    if not is_immersion(sigma):
        raise NotImmersion("lifting needs an immersion")
    if tau.target != sigma.target:
        raise SupportNotContained("the two homs have different targets")
    inverse = {(k, img.name): v for (k, v), img in sigma.images.items()}
    for k in range(tau.target.max_dim + 1):
        for v in sorted(hom_support(tau, k), key=repr):
            if (k, v) not in inverse:
                raise SupportNotContained(f"generator {v} of dimension {k} is outside the immersion",
                                          dim=k, witness=v)
    leaf = lambda var: Var(var.dim, inverse[(var.dim, var.name)])
    memo: dict = {}
    images = {key: subst(c, leaf, memo) for key, c in tau.images.items()}
    return Hom(tau.source, sigma.source, images, check=False)


@dataclass
class CoverImmersion:
    middle: Computad
    cover: Hom
    immersion: Hom
    kind: str = "cover-immersion"


def cover_immersion_factor(h: Hom) -> CoverImmersion:
    d = h.target
    gens = []
    for k in range(d.max_dim + 1):
        keep = hom_support(h, k)
        gens.append({v: s for v, s in d.gens(k).items() if v in keep})
    middle = Computad(gens, check=False)
    immersion = Hom(middle, d, {(k, v): Var(k, v) for k, v in middle.all_gens()}, check=False)
    cover = Hom(h.source, middle, h.images, check=False)
    return CoverImmersion(middle, cover, immersion)


# generic-free factorization

def globset_of_free(c: Computad) -> GlobSet:
    """The globular set a computad is free on; raises ValueError otherwise."""
    cells, src, tgt = [], [], []
    for n in range(c.max_dim + 1):
        cells.append(list(c.gens(n)))
        s_n, t_n = {}, {}
        for v, s in c.gens(n).items():
            if n == 0:
                continue
            if type(s.src) is not Var or type(s.tgt) is not Var:
                raise ValueError(f"generator {v} is attached along a composite")
            if n >= 2 and (s.lower != c.phi(n - 1, s.src.name)):
                raise ValueError(f"generator {v} has an inconsistent boundary")
            s_n[v], t_n[v] = s.src.name, s.tgt.name
        src.append(s_n)
        tgt.append(t_n)
    return GlobSet(cells, src, tgt)


def tree_of_free(c: Computad):
    """(tree, iso) when c is free on a pasting diagram, iso: position -> name."""
    try:
        return tree_from_globset(globset_of_free(c))
    except (ValueError, NotAPastingDiagram) as e:
        raise NotFreeSource(str(e)) from None


@dataclass
class GenericFree:
    tree: Tree
    gen: Hom
    fr: Hom
    kind: str = "generic-free"


class _Factorizer:
    def __init__(self, target: Computad):
        self.x = target
        self.memo: dict = {}

    def cell(self, c):
        """Factor the disk hom classifying c: (tree, gen top cell, fr images)."""
        hit = self.memo.get(c)
        if hit is not None:
            return hit
        n = c.dim
        if type(c) is Var:
            b = globe(n)
            images = globe_hom(self.x, c, check=False).images
            out = (b, Var(n, Pos(("l",) * n)), {p: images[(p.dim, p)].name for _, p in images})
        else:
            b, gen, fr = self.tree(c.tree, c.arg_map())
            top = Coh(c.tree, c.sphere, tuple(gen[p] for p in all_positions(c.tree)))
            out = (b, top, fr)
        self.memo[c] = out
        return out

    def tree(self, b: Tree, args: dict):
        """Factor a hom Free(b) -> X given by position images."""
        parts = {p: self.cell(args[p]) for p in all_positions(b)}
        bs, psi = substitute_with_cocone(b, lambda p: parts[p][0])
        gen, fr = {}, {}
        for p, (bp, top, frp) in parts.items():
            m = psi[p]
            gen[p] = subst(top, lambda v, m=m: Var(v.dim, m[v.name]))
            for q, name in frp.items():
                fr[m[q]] = name
        return bs, gen, fr


def generic_free_factor(sigma: Hom) -> GenericFree:
    b, iso = tree_of_free(sigma.source)
    try:
        globset_of_free(sigma.target)
    except ValueError as e:
        raise NotFreeTarget(str(e)) from None
    args = {p: sigma.images[(p.dim, iso[p])] for p in all_positions(b)}
    bs, gen, fr = _Factorizer(sigma.target).tree(b, args)
    fbs = free_tree(bs)
    gen_hom = Hom(sigma.source, fbs, {(p.dim, iso[p]): gen[p] for p in all_positions(b)}, check=False)
    fr_hom = Hom(fbs, sigma.target, {(q.dim, q): Var(q.dim, fr[q]) for q in all_positions(bs)}, check=False)
    return GenericFree(bs, gen_hom, fr_hom)


# full spheres and covers

def full_to_covers(b: Tree, a: Sphere):
    n = a.dim
    fb = free_tree(b)
    check_cell(fb, a.src)
    check_cell(fb, a.tgt)
    why = fullness_failure(b, a)
    if why:
        raise NotFull(why)
    out = []
    for cell, direction in ((a.src, SRC), (a.tgt, TGT)):
        lifted = lift_through_immersion(globe_hom(fb, cell), position_hom(inclusion(b, n, direction)))
        out.append(lifted.images[(n, Pos(("l",) * n))])
    return tuple(out)


def covers_to_full(b: Tree, a_cov, b_cov) -> Sphere:
    n = a_cov.dim
    bd = boundary_tree(b, n)
    fbd = free_tree(bd)
    for c in (a_cov, b_cov):
        check_cell(fbd, c)
        if not cell_is_cover(fbd, c):
            raise NotACover(f"{c!r} does not cover the {n}-boundary")
    pa = push(inclusion(b, n, SRC), a_cov)
    pb = push(inclusion(b, n, TGT), b_cov)
    fb = free_tree(b)
    if ty(fb, pa) != ty(fb, pb):
        raise NotParallel("included cells are not parallel")
    s = Sphere(ty(fb, pa), pa, pb)
    why = fullness_failure(b, s)
    if why:
        raise NotFull(why)
    return s


def contraction_lift(b: Tree, c, d):
    n = c.dim
    if b.dim > n + 1:
        raise DimTooHigh(f"tree of dimension {b.dim} cannot be filled by an {n + 1}-cell")
    return Coh(b, covers_to_full(b, c, d), identity_args(b))


# skeleton tower

@dataclass
class Stage:
    n: int
    computad: Computad
    sigma: Hom          # previous stage -> this stage
    rho: Hom            # this stage -> target
    new: list = field(default_factory=list)   # (name, attaching sphere, classifying hom)


def skeleton_tower(sigma: Hom) -> list:
    if not is_immersion(sigma):
        raise NotImmersion("skeleton tower needs an immersion")
    c, d = sigma.source, sigma.target
    top = max(c.max_dim, d.max_dim)
    fwd = {key: img.name for key, img in sigma.images.items()}

    def stage(n: int) -> Computad:
        gens = []
        for k in range(top + 1):
            if k <= n:
                gens.append(dict(d.gens(k)))
            else:
                leaf = lambda v: Var(v.dim, fwd[(v.dim, v.name)] if v.dim <= n else v.name)
                gens.append({v: subst_sphere(s, leaf) for v, s in c.gens(k).items()})
        return Computad(gens, check=False)

    stages = []
    prev = Computad(list(c._gens) + [{} for _ in range(top - c.max_dim)], check=False)
    for n in range(top + 1):
        p = stage(n)
        sig = {}
        for k, v in prev.all_gens():
            sig[(k, v)] = Var(k, fwd[(k, v)] if k == n else v)
        rho = {(k, v): Var(k, v if k <= n else fwd[(k, v)]) for k, v in p.all_gens()}
        image = {fwd[key] for key in fwd if key[0] == n}
        new = []
        for v, s in d.gens(n).items():
            if v not in image:
                new.append((v, s, sphere_hom(prev, s)))
        stages.append(Stage(n, p, Hom(prev, p, sig, check=False), Hom(p, d, rho, check=False), new))
        prev = p
    return stages


def present(d: Computad) -> list:
    """Skeleton tower of the initial computad into d."""
    return skeleton_tower(Hom(INITIAL, d, {}, check=False))
