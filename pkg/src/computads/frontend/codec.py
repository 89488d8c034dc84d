"""JSON encodings of trees, globular sets, cells, computads and homs."""
from __future__ import annotations

from ..computad import EMPTY, Coh, Computad, Hom, Sphere, Var
from ..glob import GlobSet
from ..tree import Pos, Tree, all_positions, parse_pos


def tree_to_json(t: Tree) -> dict:
    return {"children": [tree_to_json(c) for c in t.children]}


def tree_from_json(d: dict) -> Tree:
    return Tree(tuple(tree_from_json(c) for c in d["children"]))


def name_to_json(name):
    if isinstance(name, Pos):
        return {"pos": name.word()}
    if isinstance(name, Sphere):
        return {"shape": sphere_to_json(name)}
    return name


def name_from_json(d):
    if isinstance(d, dict):
        if "pos" in d:
            return parse_pos(d["pos"])
        return sphere_from_json(d["shape"])
    return d


def globset_to_json(g: GlobSet) -> dict:
    def faces(m):
        return [[name_to_json(c), name_to_json(f)] for c, f in m.items()]
    return {"dims": [{"cells": [name_to_json(c) for c in g.cells[n]],
                      "src": faces(g.src[n]), "tgt": faces(g.tgt[n])}
                     for n in range(len(g.cells))]}


def globset_from_json(d: dict) -> GlobSet:
    def faces(pairs):
        return {name_from_json(c): name_from_json(f) for c, f in pairs}
    dims = d["dims"]
    return GlobSet([[name_from_json(c) for c in x["cells"]] for x in dims],
                   [faces(x.get("src", [])) for x in dims], [faces(x.get("tgt", [])) for x in dims])


def cell_to_json(c) -> dict:
    if type(c) is Var:
        return {"var": name_to_json(c.name), "dim": c.dim}
    return {"coh": {"tree": tree_to_json(c.tree), "sphere": sphere_to_json(c.sphere),
                    "hom": {p.word(): cell_to_json(a) for p, a in zip(all_positions(c.tree), c.args)}}}


def cell_from_json(d: dict):
    if "var" in d:
        return Var(d["dim"], name_from_json(d["var"]))
    body = d["coh"]
    t = tree_from_json(body["tree"])
    hom = {parse_pos(k): cell_from_json(v) for k, v in body["hom"].items()}
    return Coh(t, sphere_from_json(body["sphere"]), tuple(hom[p] for p in all_positions(t)))


def sphere_to_json(s: Sphere):
    if s.src is None:
        return None
    return {"lower": sphere_to_json(s.lower), "src": cell_to_json(s.src), "tgt": cell_to_json(s.tgt)}


def sphere_from_json(d) -> Sphere:
    if d is None:
        return EMPTY
    return Sphere(sphere_from_json(d["lower"]), cell_from_json(d["src"]), cell_from_json(d["tgt"]))


def computad_to_json(c: Computad) -> dict:
    return {"dims": [{"generators": [{"name": name_to_json(v), "boundary": sphere_to_json(s)}
                                     for v, s in c.gens(n).items()]}
                     for n in range(c.max_dim + 1)]}


def computad_from_json(d: dict) -> Computad:
    return Computad([{name_from_json(g["name"]): sphere_from_json(g["boundary"]) for g in layer["generators"]}
                     for layer in d["dims"]])


def hom_to_json(h: Hom) -> dict:
    return {"source": computad_to_json(h.source), "target": computad_to_json(h.target),
            "images": [{"dim": n, "name": name_to_json(v), "cell": cell_to_json(c)}
                       for (n, v), c in h.images.items()]}


def hom_from_json(d: dict) -> Hom:
    return Hom(computad_from_json(d["source"]), computad_from_json(d["target"]),
               {(x["dim"], name_from_json(x["name"])): cell_from_json(x["cell"]) for x in d["images"]})
