"""Finite globular sets, pasting diagrams and tree substitution."""
from __future__ import annotations

from functools import lru_cache
from typing import Callable, Hashable, Sequence

from .errors import (GlobularityViolation, IncompatibleLabeling, MalformedZigzag,
                     NotAPastingDiagram)
from .tree import (SRC, TGT, Pos, Tree, all_positions, boundary_tree, br,
                   inclusion, srcpos, tgtpos)


class GlobSet:
    """cells[n] lists the n-cells; src[n], tgt[n] map n-cells to (n-1)-cells."""

    def __init__(self, cells: Sequence[Sequence[Hashable]], src=None, tgt=None, check=True):
        self.cells = tuple(tuple(cs) for cs in cells)
        self.src = tuple(dict(d) for d in (src or [{} for _ in self.cells]))
        self.tgt = tuple(dict(d) for d in (tgt or [{} for _ in self.cells]))
        if check:
            self.check()

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def cells_of(self, n: int) -> tuple:
        return self.cells[n] if 0 <= n < len(self.cells) else ()

    def size(self) -> int:
        return sum(len(c) for c in self.cells)

    def check(self):
        if not (len(self.src) == len(self.tgt) == len(self.cells)):
            raise GlobularityViolation("src/tgt must be given for every dimension")
        for n, cs in enumerate(self.cells):
            if len(set(cs)) != len(cs):
                raise GlobularityViolation(f"duplicate cell names in dimension {n}")
            if n == 0:
                continue
            lower = set(self.cells[n - 1])
            for c in cs:
                for face in (self.src[n], self.tgt[n]):
                    if c not in face or face[c] not in lower:
                        raise GlobularityViolation(f"cell {c!r} of dim {n} lacks a valid face")
                if n >= 2:
                    s, t = self.src[n][c], self.tgt[n][c]
                    if self.src[n - 1][s] != self.src[n - 1][t] or self.tgt[n - 1][s] != self.tgt[n - 1][t]:
                        raise GlobularityViolation(f"cell {c!r} breaks globularity")

    def truncate(self, n: int) -> "GlobSet":
        return GlobSet(self.cells[:n + 1], self.src[:n + 1], self.tgt[:n + 1], check=False)

    def key(self):
        return (self.cells, tuple(tuple(sorted(d.items(), key=repr)) for d in self.src),
                tuple(tuple(sorted(d.items(), key=repr)) for d in self.tgt))

    def __eq__(self, other):
        return isinstance(other, GlobSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"GlobSet({[len(c) for c in self.cells]})"


class GlobMap:
    def __init__(self, source: GlobSet, target: GlobSet, maps: Sequence[dict], check=True):
        self.source = source
        self.target = target
        self.maps = tuple(dict(m) for m in maps)
        if check:
            self.check()

    def __call__(self, n: int, cell):
        return self.maps[n][cell]

    def check(self):
        for n, cs in enumerate(self.source.cells):
            for c in cs:
                img = self.maps[n].get(c)
                if img not in set(self.target.cells_of(n)):
                    raise GlobularityViolation(f"{c!r} has no image in dimension {n}")
                if n >= 1:
                    if self.target.src[n][img] != self.maps[n - 1][self.source.src[n][c]] or \
                            self.target.tgt[n][img] != self.maps[n - 1][self.source.tgt[n][c]]:
                        raise GlobularityViolation(f"map does not commute with faces at {c!r}")

    def compose(self, other: "GlobMap") -> "GlobMap":
        """self after other."""
        maps = [{c: self.maps[n][other.maps[n][c]] for c in other.source.cells_of(n)}
                for n in range(len(other.source.cells))]
        return GlobMap(other.source, self.target, maps, check=False)


@lru_cache(maxsize=None)
def pos_globset(t: Tree) -> GlobSet:
    ps = all_positions(t)
    cells = [[p for p in ps if p.dim == n] for n in range(t.dim + 1)]
    src = [{}] + [{p: srcpos(p) for p in cells[n]} for n in range(1, t.dim + 1)]
    tgt = [{}] + [{p: tgtpos(p) for p in cells[n]} for n in range(1, t.dim + 1)]
    return GlobSet(cells, src, tgt)


def position_map_globmap(m) -> GlobMap:
    s, t = pos_globset(m.source_tree), pos_globset(m.target_tree)
    maps = [{p: m.map[p] for p in s.cells_of(n)} for n in range(len(s.cells))]
    return GlobMap(s, t, maps, check=False)


# zigzag sequences: br[] is [0]; br[B1..Bn] is (z(B1)+1) 0 (z(B2)+1) ... 0 (z(Bn)+1)

def zigzag_encode(t: Tree) -> list:
    if not t.children:
        return [0]
    out: list = []
    for i, c in enumerate(t.children):
        if i:
            out.append(0)
        out.extend(x + 1 for x in zigzag_encode(c))
    return out


def _valid_zigzag(zs) -> bool:
    if not zs or len(zs) % 2 == 0 or any((not isinstance(z, int)) or z < 0 for z in zs):
        return False
    return all(zs[i] < zs[i - 1] and zs[i] < zs[i + 1] for i in range(1, len(zs), 2))


def zigzag_decode(zs) -> Tree:
    zs = list(zs)
    if not _valid_zigzag(zs):
        raise MalformedZigzag(f"{zs} is not a zigzag sequence")
    return _decode(zs)


def _decode(zs: list) -> Tree:
    if zs == [0]:
        return br()
    chunks, cur = [], []
    for i, z in enumerate(zs):
        if i % 2 == 1 and z == 0:
            chunks.append(cur)
            cur = []
        else:
            cur.append(z - 1)
    chunks.append(cur)
    return Tree(tuple(_decode(c) for c in chunks))


# colimits

class _UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b, rank):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if rank[ra] <= rank[rb]:
            self.parent[rb] = ra
        else:
            self.parent[ra] = rb


def glob_colimit(objects: Sequence[GlobSet], arrows: Sequence[tuple]):
    """Colimit of a finite diagram.

    `arrows` holds triples (i, j, maps) with maps[n] sending n-cells of object i
    to n-cells of object j.  Cells of the colimit are pairs (object index, cell)
    naming the least injected representative.  Returns (colimit, cocone) where
    cocone[i][n] is a dict.
    """
    top = max((o.dim for o in objects), default=-1)
    uf = _UnionFind()
    rank: dict = {}
    for i, o in enumerate(objects):
        for n in range(o.dim + 1):
            for k, c in enumerate(o.cells[n]):
                key = (n, i, c)
                uf.add(key)
                rank[key] = (i, k)
    for i, j, maps in arrows:
        for n in range(objects[i].dim + 1):
            for c in objects[i].cells[n]:
                uf.union((n, i, c), (n, j, maps[n][c]), rank)
    cells = [[] for _ in range(top + 1)]
    seen = set()
    order = sorted(uf.parent, key=lambda k: (k[0], rank[k]))
    for key in order:
        r = uf.find(key)
        if r not in seen:
            seen.add(r)
            cells[key[0]].append((r[1], r[2]))
    cocone = [[{c: (lambda r: (r[1], r[2]))(uf.find((n, i, c))) for c in o.cells[n]}
               for n in range(o.dim + 1)] for i, o in enumerate(objects)]
    src = [{} for _ in range(top + 1)]
    tgt = [{} for _ in range(top + 1)]
    for i, o in enumerate(objects):
        for n in range(1, o.dim + 1):
            for c in o.cells[n]:
                img = cocone[i][n][c]
                s, t = cocone[i][n - 1][o.src[n][c]], cocone[i][n - 1][o.tgt[n][c]]
                if src[n].setdefault(img, s) != s or tgt[n].setdefault(img, t) != t:
                    raise GlobularityViolation("diagram does not commute with faces")
    return GlobSet(cells, src, tgt), cocone


# reading a pasting diagram back as a tree

def tree_from_globset(g: GlobSet):
    """Return (tree, iso) where iso maps positions of the tree to cells of g."""
    levels = [list(g.cells_of(n)) for n in range(g.dim + 1)]
    while levels and not levels[-1] and len(levels) > 1:
        levels.pop()
    tree, iso = _read(levels, g.src, g.tgt, 0)
    ps = all_positions(tree)
    if len(ps) != g.size() or len(set(iso.values())) != len(ps):
        raise NotAPastingDiagram("cell count does not match any tree")
    for p in ps:
        if p.dim >= 1:
            c = iso[p]
            if g.src[p.dim][c] != iso[srcpos(p)] or g.tgt[p.dim][c] != iso[tgtpos(p)]:
                raise NotAPastingDiagram(f"faces of {c!r} disagree with the reconstructed tree")
    return tree, iso


def _read(levels, src, tgt, offset):
    """levels[k] holds cells of absolute dimension k + offset."""
    verts = levels[0] if levels else []
    if not verts:
        raise NotAPastingDiagram("no 0-cells")
    edges = levels[1] if len(levels) > 1 else []
    d1 = offset + 1
    incoming = {v: 0 for v in verts}
    succ: dict = {}
    for e in edges:
        s, t = src[d1][e], tgt[d1][e]
        incoming[t] += 1
        if succ.setdefault(s, t) != t:
            raise NotAPastingDiagram("0-cells are not arranged in a line")
    starts = [v for v in verts if incoming[v] == 0]
    if len(starts) != 1:
        raise NotAPastingDiagram("no unique source 0-cell")
    chain = [starts[0]]
    while chain[-1] in succ:
        chain.append(succ[chain[-1]])
        if len(chain) > len(verts):
            raise NotAPastingDiagram("cycle among 0-cells")
    if len(chain) != len(verts):
        raise NotAPastingDiagram("disconnected 0-cells")
    # assign each cell of dimension >= 1 to the segment starting at its 0-source
    seg_of = {}
    for e in edges:
        seg_of[e] = chain.index(src[d1][e])
    segs = [[[] for _ in range(len(levels) - 1)] for _ in range(len(chain) - 1)]
    for k in range(1, len(levels)):
        for c in levels[k]:
            if k > 1:
                seg_of[c] = seg_of[src[offset + k][c]]
            segs[seg_of[c]][k - 1].append(c)
    children, child_isos = [], []
    for seg in segs:
        while len(seg) > 1 and not seg[-1]:
            seg.pop()
        t, iso = _read(seg, src, tgt, offset + 1)
        children.append(t)
        child_isos.append(iso)
    tree = Tree(tuple(children))
    iso = {}
    for p in all_positions(tree):
        path = p.path
        j = 0
        while j < len(path) and path[j] == "r":
            j += 1
        if j == len(path):
            iso[p] = chain[j]
        else:
            iso[p] = child_isos[j][Pos(path[j + 1:])]
    return tree, iso


# substitution of trees into trees

def substitute_with_cocone(b: Tree, label: Callable[[Pos], Tree]):
    """Glue the pasting diagrams label(p) along boundary inclusions.

    Returns (tree, psi) with psi[p] a dict from positions of label(p) to
    positions of the resulting tree.
    """
    ps = all_positions(b)
    labels = {p: label(p) for p in ps}
    index = {p: i for i, p in enumerate(ps)}
    for p in ps:
        if labels[p].dim > p.dim:
            raise IncompatibleLabeling(f"label at {p} has dimension above {p.dim}")
    arrows = []
    for p in ps:
        if p.dim == 0:
            continue
        lp = labels[p]
        bd = boundary_tree(lp, p.dim - 1)
        for face, direction in ((srcpos(p), SRC), (tgtpos(p), TGT)):
            if labels[face] != bd:
                raise IncompatibleLabeling(f"label at {face} is not the boundary of the label at {p}")
            m = inclusion(lp, p.dim - 1, direction).map
            g = pos_globset(bd)
            arrows.append((index[face], index[p], [{c: m[c] for c in g.cells_of(n)} for n in range(g.dim + 1)]))
    colim, cocone = glob_colimit([pos_globset(labels[p]) for p in ps], arrows)
    tree, iso = tree_from_globset(colim)
    back = {c: p for p, c in iso.items()}
    psi = {}
    for p in ps:
        i = index[p]
        psi[p] = {q: back[cocone[i][q.dim][q]] for q in all_positions(labels[p])}
    return tree, psi


def substitute(b: Tree, label: Callable[[Pos], Tree]) -> Tree:
    return substitute_with_cocone(b, label)[0]


def globular_closure(g: GlobSet, seeds) -> set:
    """Smallest globular subset containing seeds (cells given as (dim, cell))."""
    out = set()
    stack = list(seeds)
    while stack:
        n, c = stack.pop()
        if (n, c) in out:
            continue
        out.add((n, c))
        if n >= 1:
            stack.append((n - 1, g.src[n][c]))
            stack.append((n - 1, g.tgt[n][c]))
    return out
