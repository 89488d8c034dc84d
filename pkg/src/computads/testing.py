"""Finite corpora of computads, cells, full spheres and homs for property tests.

Cells of depth at most 3 are generators or coherences whose arguments are
generators, so a cell pool is the generators together with every coherence
over a small tree whose argument hom is generator-preserving.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from .computad import EMPTY, Coh, Computad, Hom, Sphere, Var, disk, free_tree, ty
from .errors import WcatError
from .factor import covers_to_full
from .opalg import comp_cells, identity_args, unbiased_comp, unbiased_sphere
from .plex import enumerate_var_homs, intern, shape, shape_sphere
from .tree import Tree, all_positions, boundary_tree, enumerate_trees, globe, linear


@lru_cache(maxsize=None)
def cover_cells(t: Tree, n: int, rounds: int = 1) -> tuple:
    """n-cells of Free(t) that cover it: the unbiased composite, plus
    contraction lifts built from earlier rounds."""
    out = [unbiased_comp(t, n)]
    if rounds > 0 and n >= 1:
        for s in full_spheres(t, n - 1, rounds - 1):
            c = Coh(t, s, identity_args(t))
            if c not in out:
                out.append(c)
    return tuple(out)


@lru_cache(maxsize=None)
def full_spheres(t: Tree, n: int, rounds: int = 1) -> tuple:
    """Full n-spheres over t generated from pairs of boundary covers."""
    if n < t.dim - 1:
        return ()
    base = unbiased_sphere(t, n)
    out = [base]
    bd = boundary_tree(t, n)
    covers = cover_cells(bd, n, rounds)
    for a, b in product(covers, covers):
        try:
            s = covers_to_full(t, a, b)
        except WcatError:
            continue
        if s not in out:
            out.append(s)
    return tuple(out)


def sphere_corpus(max_nodes: int = 5, max_dim: int = 3, rounds: int = 1) -> list:
    """(tree, full sphere) pairs over trees of bounded size and dimension."""
    out = []
    for t in enumerate_trees(max_nodes):
        if t.dim > max_dim:
            continue
        for n in range(max(t.dim - 1, 0), max_dim + 1):
            for s in full_spheres(t, n, rounds):
                out.append((t, s))
    return out


# cell pools

def coh_templates(max_nodes: int = 4, max_dim: int = 3) -> list:
    """(tree, sphere) pairs used to build coherences of dimension <= max_dim."""
    out = []
    for t in enumerate_trees(max_nodes):
        for n in range(max(t.dim - 1, 0), max_dim):
            for s in full_spheres(t, n, 0):
                out.append((t, s))
    return out


def cell_pool(ctx: Computad, max_nodes: int = 4, max_dim: int = 3, cap: int = 60,
              rng: random.Random | None = None) -> list:
    """Generators plus depth-3 coherences with generator arguments.

    At most `cap` coherences are kept per template, sampled with `rng`.
    """
    rng = rng or random.Random(0)
    out = [Var(n, v) for n, v in ctx.all_gens() if n <= max_dim]
    for t, s in coh_templates(max_nodes, max_dim):
        homs = enumerate_var_homs(free_tree(t), ctx)
        if len(homs) > cap:
            homs = rng.sample(homs, cap)
        for h in homs:
            out.append(Coh(t, s, tuple(h.images[(p.dim, p)] for p in all_positions(t))))
    return out


def index_by_type(ctx: Computad, cells: list) -> dict:
    out: dict = {}
    for c in cells:
        out.setdefault(ty(ctx, c), []).append(c)
    return out


def random_hom(rng: random.Random, source: Computad, target: Computad, pool: dict,
               tries: int = 50) -> Hom | None:
    """A hom picking images from `pool` (cells indexed by type), or None."""
    gens = list(source.all_gens())
    for _ in range(tries):
        probe = Hom(source, target, {}, check=False)
        images = probe.images
        for n, v in gens:
            want = probe.apply_sphere(source.phi(n, v))
            options = pool.get(want)
            if not options:
                break
            images[(n, v)] = rng.choice(options)
            probe._memo.clear()
        else:
            return Hom(source, target, images)
    return None


# a small fixed catalog of computads

def loop_computad() -> Computad:
    """One object, one loop e and a 2-cell m : e.e -> e."""
    base = Computad([{"x": EMPTY}, {"e": Sphere(EMPTY, Var(0, "x"), Var(0, "x"))}])
    ee = comp_cells(base, [Var(1, "e"), Var(1, "e")])
    return Computad(list(base._gens) + [{"m": Sphere(ty(base, ee), ee, Var(1, "e"))}])


def triangle_computad() -> Computad:
    """Vertices x y z, edges f g h and a 2-cell a : f.g -> h."""
    e = EMPTY
    base = Computad([{"x": e, "y": e, "z": e},
                     {"f": Sphere(e, Var(0, "x"), Var(0, "y")), "g": Sphere(e, Var(0, "y"), Var(0, "z")),
                      "h": Sphere(e, Var(0, "x"), Var(0, "z"))}])
    fg = comp_cells(base, [Var(1, "f"), Var(1, "g")])
    return Computad(list(base._gens) + [{"a": Sphere(ty(base, fg), fg, Var(1, "h"))}])


def catalog() -> dict:
    return {
        "disk1": disk(1),
        "disk2": disk(2),
        "linear2": free_tree(linear(2)),
        "globe2x2": free_tree(Tree((globe(1), globe(0)))),
        "loop": loop_computad(),
        "triangle": triangle_computad(),
    }


def pair_corpus(count: int = 1000, seed: int = 0, max_nodes: int = 4):
    """Yield (sigma, tau, cell): sigma : C -> D, tau : D -> E and a cell of C.

    Cells have depth <= 3 and dimension <= 3.
    """
    rng = random.Random(seed)
    cat = catalog()
    names = sorted(cat)
    pools = {k: cell_pool(c, max_nodes, 3, 40, random.Random(seed + i)) for i, (k, c) in enumerate(sorted(cat.items()))}
    typed = {k: index_by_type(cat[k], pools[k]) for k in names}
    made = 0
    while made < count:
        a, b, c = (rng.choice(names) for _ in range(3))
        sigma = random_hom(rng, cat[a], cat[b], typed[b])
        tau = random_hom(rng, cat[b], cat[c], typed[c]) if sigma is not None else None
        if tau is None:
            continue
        cell = rng.choice(pools[a])
        made += 1
        yield sigma, tau, cell


def free_targets() -> dict:
    return {
        "linear2": free_tree(linear(2)),
        "globe2x2": free_tree(Tree((globe(1), globe(0)))),
        "disk2": disk(2),
        "running": free_tree(Tree((Tree((globe(0), globe(0))), globe(0)))),
    }


def free_hom_corpus(count: int = 200, seed: int = 0, max_nodes: int = 4):
    """Yield homs Free(B) -> Free(X) with images drawn from depth-3 pools."""
    rng = random.Random(seed)
    targets = free_targets()
    names = sorted(targets)
    typed = {k: index_by_type(targets[k], cell_pool(targets[k], max_nodes, 3, 40, random.Random(seed + i)))
             for i, k in enumerate(names)}
    sources = [t for t in enumerate_trees(max_nodes)]
    made = 0
    while made < count:
        k = rng.choice(names)
        b = rng.choice(sources)
        h = random_hom(rng, free_tree(b), targets[k], typed[k], tries=10)
        if h is None:
            continue
        made += 1
        yield b, h


def shape_corpus(max_nodes: int = 3, max_dim: int = 3) -> list:
    """Shapes of pool cells in the catalog, generic coherences, and generators attached along them."""
    out = set()
    for c in catalog().values():
        for x in cell_pool(c, max_nodes=max_nodes, max_dim=max_dim):
            out.add(shape(c, x))
    for t, s in coh_templates(max_nodes, max_dim):
        fb = free_tree(t)
        out.add(shape(fb, Coh(t, s, identity_args(t))))
        out.add(intern(Var(s.dim + 1, shape_sphere(fb, s))))
    return sorted(out, key=lambda s: (s.dim, repr(s)))
