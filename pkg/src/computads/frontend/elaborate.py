"""Turn parsed declarations into checked values."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..computad import (EMPTY, Coh, Computad, Hom, Sphere, Var, check_cell, disk,
                        free_computad, free_tree, sphere_computad, ty)
from ..errors import (BadHom, DimMismatch, IllFormedCell, TypeMismatch,
                      UnknownGenerator, WcatError, WcatSyntaxError)
from ..glob import GlobSet
from ..opalg import associator, binary_comp, comp_cells, id_cell, unitor
from ..tree import Tree, all_positions, is_valid, parse_pos
from .syntax import Atom, Brace, Declaration, Node, TreeLit, parse


@dataclass
class Scope:
    computad: Computad
    tree: Tree | None = None
    cells: dict = field(default_factory=dict)


@dataclass
class Diagnostic:
    name: str
    kind: str
    line: int
    col: int
    error: WcatError

    def __str__(self):
        return f"{self.line}:{self.col}: {self.kind} {self.name}: {self.error}"


@dataclass
class Environment:
    trees: dict = field(default_factory=dict)
    globsets: dict = field(default_factory=dict)
    computads: dict = field(default_factory=dict)
    cells: dict = field(default_factory=dict)       # name -> (computad name, cell)
    homs: dict = field(default_factory=dict)        # name -> (source name, target name, hom)
    checked: list = field(default_factory=list)

    def scope(self, ctx_name: str) -> Scope:
        if ctx_name not in self.computads:
            raise UnknownGenerator(f"no computad named {ctx_name}")
        cells = {n: c for n, (k, c) in self.cells.items() if k == ctx_name}
        return Scope(self.computads[ctx_name], None, cells)


def _located(e: WcatError, node) -> WcatError:
    if getattr(e, "line", None) is None and node is not None:
        e.line, e.col = node.line, node.col
    return e


def _name_candidates(text: str) -> list:
    out = [text]
    try:
        out.append(parse_pos(text))
    except WcatSyntaxError:
        pass
    return out


def resolve_generator(scope: Scope, atom: Atom, dim: int | None = None):
    if scope.tree is not None and atom.kind == "pos" or (scope.tree is not None and atom.text == "here"):
        p = parse_pos(atom.text)
        if not is_valid(scope.tree, p):
            raise UnknownGenerator(f"{atom.text} is not a position of {scope.tree}")
        return Var(p.dim, p)
    hits = []
    c = scope.computad
    for name in _name_candidates(atom.text):
        for n in range(c.max_dim + 1):
            if name in c.gens(n) and (dim is None or dim == n):
                hits.append((n, name))
    if len(hits) == 1:
        return Var(*hits[0])
    if len(hits) > 1:
        raise DimMismatch(f"{atom.text} names generators in several dimensions; write (var {atom.text} k)")
    if dim is None and atom.text in scope.cells:
        return scope.cells[atom.text]
    raise UnknownGenerator(f"no generator named {atom.text}")


def elab_term(scope: Scope, node, env: Environment | None = None):
    try:
        return _elab(scope, node, env)
    except WcatError as e:
        raise _located(e, node)


def _elab(scope: Scope, node, env):
    if isinstance(node, Atom):
        if node.kind == "int":
            raise IllFormedCell(f"a number is not a cell: {node.text}")
        return resolve_generator(scope, node)
    if not isinstance(node, Node) or not node.items or not isinstance(node.items[0], Atom):
        raise IllFormedCell("expected a cell term")
    head = node.items[0].text
    args = node.items[1:]
    if head == "var":
        if len(args) not in (1, 2) or not isinstance(args[0], Atom):
            raise IllFormedCell("(var NAME [DIM])")
        dim = int(args[1].text) if len(args) == 2 else None
        return resolve_generator(scope, args[0], dim)
    if head == "coh":
        if len(args) != 3:
            raise IllFormedCell("(coh TREE SPHERE HOM)")
        b = tree_value(args[0], env)
        inner = Scope(free_tree(b), b)
        s = sphere_value(inner, args[1], env)
        if not isinstance(args[2], Brace):
            raise IllFormedCell("coherence hom must be written {position => term, ...}")
        given = {}
        for key, val in args[2].entries:
            try:
                p = parse_pos(key.text)
            except WcatSyntaxError as e:
                raise BadHom(str(e))
            if not is_valid(b, p):
                raise BadHom(f"{key.text} is not a position of {b}", ("hom", key.text))
            given[p] = elab_term(scope, val, env)
        missing = [p.word() for p in all_positions(b) if p not in given]
        if missing:
            raise BadHom(f"no image for position {missing[0]}", ("hom", missing[0]))
        c = Coh(b, s, tuple(given[p] for p in all_positions(b)))
        check_cell(scope.computad, c)
        return c
    cells = [elab_term(scope, a, env) for a in args]
    ctx = scope.computad
    if head == "comp":
        return comp_cells(ctx, cells)
    if head == "id" and len(cells) == 1:
        check_cell(ctx, cells[0])
        return id_cell(ctx, cells[0])
    if head == "assoc" and len(cells) == 3:
        return associator(ctx, *cells)
    if head == "unit" and len(cells) == 3:
        return unitor(ctx, *cells)
    if head == "bcomp" and len(args) == 3 and isinstance(args[0], Atom) and args[0].kind == "int":
        return binary_comp(ctx, cells[1], cells[2], int(args[0].text))
    raise IllFormedCell(f"unknown form ({head} ...) with {len(args)} arguments")


def sphere_value(scope: Scope, node, env=None) -> Sphere:
    if not (isinstance(node, Node) and node.items and isinstance(node.items[0], Atom)
            and node.items[0].text == "sphere"):
        raise _located(IllFormedCell("expected (sphere SRC TGT)"), node)
    if len(node.items) == 1:
        return EMPTY
    if len(node.items) != 3:
        raise _located(IllFormedCell("(sphere SRC TGT)"), node)
    a = elab_term(scope, node.items[1], env)
    b = elab_term(scope, node.items[2], env)
    check_cell(scope.computad, a)
    check_cell(scope.computad, b)
    lower = ty(scope.computad, a)
    if a.dim != b.dim or ty(scope.computad, b) != lower:
        raise _located(TypeMismatch("sphere components are not parallel", ("sphere",)), node)
    return Sphere(lower, a, b)


def tree_value(node, env) -> Tree:
    if isinstance(node, TreeLit):
        return node.tree
    if isinstance(node, Atom) and env is not None and node.text in env.trees:
        return env.trees[node.text]
    raise _located(IllFormedCell("expected a tree literal or tree name"), node)


def _computad_from_gens(gens: list, env) -> Computad:
    layers: list = []
    for g in gens:
        if g.src is None:
            for name in g.names:
                if layers and name in layers[0]:
                    raise _located(IllFormedCell(f"duplicate generator {name}"), g)
                if not layers:
                    layers.append({})
                layers[0][name] = EMPTY
            continue
        scope = Scope(Computad(layers, check=False))
        a = elab_term(scope, g.src, env)
        b = elab_term(scope, g.tgt, env)
        if a.dim != b.dim:
            raise _located(DimMismatch(f"{g.names[0]}: source and target differ in dimension"), g)
        if ty(scope.computad, a) != ty(scope.computad, b):
            raise _located(TypeMismatch(f"{g.names[0]}: source and target are not parallel"), g)
        n = a.dim + 1
        while len(layers) <= n:
            layers.append({})
        if g.names[0] in layers[n]:
            raise _located(IllFormedCell(f"duplicate generator {g.names[0]}"), g)
        layers[n][g.names[0]] = Sphere(ty(scope.computad, a), a, b)
    return Computad(layers)


def _atom_name(atom: Atom):
    return parse_pos(atom.text) if atom.kind == "pos" or atom.text == "here" else atom.text


def _globset_from_gens(gens: list) -> GlobSet:
    cells: list = [[]]
    src: list = [{}]
    tgt: list = [{}]
    dims: dict = {}
    for g in gens:
        if g.src is None:
            for name in g.names:
                cells[0].append(name)
                dims[name] = 0
            continue
        if not (isinstance(g.src, Atom) and isinstance(g.tgt, Atom)):
            raise _located(IllFormedCell("globular set faces must be names"), g)
        s, t = _atom_name(g.src), _atom_name(g.tgt)
        if s not in dims or t not in dims or dims[s] != dims[t]:
            raise _located(UnknownGenerator(f"bad faces for {g.names[0]}"), g)
        n = dims[s] + 1
        while len(cells) <= n:
            cells.append([])
            src.append({})
            tgt.append({})
        name = g.names[0]
        cells[n].append(name)
        src[n][name], tgt[n][name] = s, t
        dims[name] = n
    return GlobSet(cells, src, tgt)


def _hom_value(env: Environment, d: Declaration) -> Hom:
    sname, tname = d.extra
    if sname not in env.computads:
        raise UnknownGenerator(f"no computad named {sname}")
    source = env.computads[sname]
    scope = env.scope(tname)
    images = {}
    for key, val in d.body.entries:
        found = None
        for name in _name_candidates(key.text):
            for n in range(source.max_dim + 1):
                if name in source.gens(n):
                    found = (n, name)
        if found is None:
            raise _located(UnknownGenerator(f"{key.text} is not a generator of {sname}"), key)
        images[found] = elab_term(scope, val, env)
    return Hom(source, scope.computad, images)


def elaborate_decl(env: Environment, d: Declaration):
    taken = {"tree": env.trees, "globset": env.globsets, "computad": env.computads,
             "cell": env.cells, "hom": env.homs}
    if d.kind in taken and d.name in taken[d.kind]:
        raise IllFormedCell(f"duplicate {d.kind} {d.name}")
    if d.kind == "tree":
        env.trees[d.name] = tree_value(d.body, env)
    elif d.kind == "globset":
        env.globsets[d.name] = _globset_from_gens(d.body)
    elif d.kind == "computad":
        if isinstance(d.body, tuple):
            how, arg = d.body
            if how == "free":
                if isinstance(arg, Atom) and arg.text in env.globsets:
                    env.computads[d.name] = free_computad(env.globsets[arg.text])
                else:
                    env.computads[d.name] = free_tree(tree_value(arg, env))
            elif how == "disk":
                env.computads[d.name] = disk(arg)
            else:
                env.computads[d.name] = sphere_computad(arg)
        else:
            env.computads[d.name] = _computad_from_gens(d.body, env)
    elif d.kind == "cell":
        scope = env.scope(d.extra[0])
        c = elab_term(scope, d.body, env)
        check_cell(scope.computad, c)
        env.cells[d.name] = (d.extra[0], c)
    elif d.kind == "hom":
        env.homs[d.name] = (d.extra[0], d.extra[1], _hom_value(env, d))
    elif d.kind == "check":
        name = d.name
        if name in env.cells:
            k, c = env.cells[name]
            check_cell(env.computads[k], c)
        elif name in env.homs:
            env.homs[name][2].validate()
        elif name in env.computads:
            env.computads[name].validate()
        elif name not in env.trees and name not in env.globsets:
            raise UnknownGenerator(f"nothing named {name} to check")
        env.checked.append(name)


def elaborate(decls: list, keep_going: bool = True):
    env = Environment()
    diags = []
    for d in decls:
        try:
            elaborate_decl(env, d)
        except WcatError as e:
            diags.append(Diagnostic(d.name, d.kind, getattr(e, "line", None) or d.line,
                                    getattr(e, "col", None) or d.col, e))
            if not keep_going:
                break
    return env, diags


def load(text: str):
    return elaborate(parse(text))
