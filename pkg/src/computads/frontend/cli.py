"""Command line entry point.

Exit status is 0 when everything checks, 1 on a check failure and 2 on a
usage error (bad arguments, unreadable files, unknown names).
"""
from __future__ import annotations

import argparse
import json
import sys

from ..computad import (Var, cell_boundary, check_cell, disk, free_tree, globe_hom,
                        sphere_computad, support)
from ..errors import DimTooHigh, WcatError
from ..factor import cover_immersion_factor, generic_free_factor, is_cover, is_immersion, present
from ..glob import zigzag_decode, zigzag_encode
from ..opalg import comp_cells
from ..plex import plex_of_cell, shape
from ..tree import SRC, TGT, all_positions, boundary_positions, boundary_tree, inclusion, parse_tree
from . import codec
from .dot import emit_dot
from .elaborate import load
from .printer import name_text, print_cell, print_computad, print_hom, print_sphere
from .simplicial import SimplicialSet2, ingest_simplicial

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, text: str, data):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _guard_dim(args, d: int, what: str):
    if args.max_dim is not None and d > args.max_dim:
        raise DimTooHigh(f"{what} has dimension {d}, above --max-dim {args.max_dim}")


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _env(args):
    if not args.file:
        raise UsageError("this command needs --file")
    env, diags = load(_read(args.file))
    if diags:
        raise diags[0].error
    return env


def _cell(env, name):
    if name in env.cells:
        k, c = env.cells[name]
        return env.computads[k], c
    # fall back to a generator, if exactly one computad declares it
    hits = [(ctx, Var(n, name)) for ctx in env.computads.values()
            for n in range(ctx.max_dim + 1) if name in ctx.gens(n)]
    if len(hits) == 1:
        return hits[0]
    if hits:
        raise UsageError(f"{name} is ambiguous; declare it as a cell")
    raise UsageError(f"no cell or generator named {name}")


def _computad_ref(args, ref: str):
    kind, _, arg = ref.partition(":")
    try:
        if kind == "free" and arg:
            return free_tree(parse_tree(arg))
        if kind == "disk" and arg:
            return disk(int(arg))
        if kind == "sphere" and arg:
            return sphere_computad(int(arg))
    except ValueError:
        raise UsageError(f"bad computad reference {ref}") from None
    env = _env(args)
    if ref not in env.computads:
        raise UsageError(f"no computad named {ref}")
    return env.computads[ref]


# subcommands

def cmd_check(args):
    env, diags = load(_read(args.file))
    for name, c in env.computads.items():
        _guard_dim(args, c.max_dim, f"computad {name}")
    lines = [str(d) for d in diags]
    ok = not diags
    lines.append(f"{'ok' if ok else 'failed'}: {len(env.cells)} cells, {len(env.homs)} homs, "
                 f"{len(env.checked)} checks, {len(diags)} errors")
    data = {"ok": ok, "cells": sorted(env.cells), "homs": sorted(env.homs), "checked": env.checked,
            "errors": [{"name": d.name, "kind": d.error.kind, "line": d.line, "col": d.col,
                        "path": [str(x) for x in d.error.path], "message": d.error.message}
                       for d in diags]}
    _emit(args, "\n".join(lines), data)
    return OK if ok else FAILED


def cmd_tree(args):
    if args.action == "zigzag" and args.decode:
        try:
            zs = [int(x) for x in args.literal.replace(",", " ").split()]
        except ValueError:
            raise UsageError("zigzag must be a list of integers") from None
        t = zigzag_decode(zs)
        _emit(args, str(t), codec.tree_to_json(t))
        return OK
    t = parse_tree(args.literal)
    _guard_dim(args, t.dim, "tree")
    if args.action == "positions":
        ps = [p for p in all_positions(t) if args.dim is None or p.dim == args.dim]
        _emit(args, "\n".join(f"{p.dim} {p.word()}" for p in ps),
              [{"pos": p.word(), "dim": p.dim} for p in ps])
    elif args.action == "boundary":
        k = t.dim - 1 if args.dim is None else args.dim
        if k < 0:
            raise UsageError("a 0-dimensional tree has no boundary")
        direction = TGT if args.dir == "tgt" else SRC
        bd = boundary_tree(t, k)
        m = inclusion(t, k, direction)
        marked = sorted(boundary_positions(t, k, direction), key=lambda p: (p.dim, p.path))
        text = [f"boundary {bd}"] + [f"{p.word()} -> {m(p).word()}" for p in all_positions(bd)]
        text.append("boundary positions: " + " ".join(p.word() for p in marked))
        _emit(args, "\n".join(text), {"tree": codec.tree_to_json(bd),
                                      "inclusion": {p.word(): m(p).word() for p in all_positions(bd)},
                                      "positions": [p.word() for p in marked]})
    else:
        zs = zigzag_encode(t)
        _emit(args, " ".join(map(str, zs)), zs)
    return OK


def cmd_cell(args):
    ctx, c = _cell(_env(args), args.name)
    _guard_dim(args, c.dim, f"cell {args.name}")
    if args.action == "boundary":
        s = cell_boundary(ctx, c)
        _emit(args, print_sphere(s, ctx), codec.sphere_to_json(s))
    elif args.action == "support":
        layers = [sorted(name_text(v) for v in support(ctx, c, k)) for k in range(c.dim + 1)]
        _emit(args, "\n".join(f"{k}: {' '.join(vs)}" for k, vs in enumerate(layers)), layers)
    else:
        s = shape(ctx, c)
        _emit(args, print_cell(s), codec.cell_to_json(s))
    return OK


def _factor_hom(env, name):
    if name in env.homs:
        return env.homs[name][2]
    ctx, c = _cell(env, name)
    return globe_hom(ctx, c)


def cmd_factor(args):
    env = _env(args)
    h = _factor_hom(env, args.name)
    if args.mode == "cover-immersion":
        f = cover_immersion_factor(h)
        middle, parts = f.middle, [f.cover, f.immersion]
        checks = {"recompose": f.immersion.compose(f.cover) == h, "cover": is_cover(f.cover),
                  "immersion": is_immersion(f.immersion)}
        text = print_computad("middle", middle)
    else:
        f = generic_free_factor(h)
        middle, parts = free_tree(f.tree), [f.gen, f.fr]
        checks = {"recompose": f.fr.compose(f.gen) == h, "cover": is_cover(f.gen),
                  "generator-preserving": f.fr.is_generator_preserving(),
                  "dim": f.tree.dim <= h.source.max_dim}
        text = f"tree {f.tree}"
    ok = all(checks.values())
    text += "\n" + "\n".join(f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items())
    _emit(args, text, {"kind": args.mode, "middle": codec.computad_to_json(middle),
                       "parts": [codec.hom_to_json(p) for p in parts], "checks": checks})
    return OK if ok else FAILED


def cmd_compose(args):
    env = _env(args)
    if all(n in env.homs for n in args.names):
        homs = [env.homs[n] for n in args.names]
        h = homs[0][2]
        for _, _, g in homs[1:]:
            h = g.compose(h)
        _emit(args, print_hom("composite", h, homs[0][0], homs[-1][1]), codec.hom_to_json(h))
        return OK
    found = [_cell(env, n) for n in args.names]
    ctx = found[0][0]
    if any(k is not ctx for k, _ in found):
        raise UsageError("cells to compose must live in the same computad")
    c = comp_cells(ctx, [c for _, c in found])
    check_cell(ctx, c)
    _emit(args, print_cell(c, ctx), codec.cell_to_json(c))
    return OK


def cmd_plex(args):
    ctx, c = _cell(_env(args), args.name)
    _guard_dim(args, c.dim, f"cell {args.name}")
    p = plex_of_cell(shape(ctx, c))
    text = print_computad("plex", p.computad) + "\ncanonical " + print_cell(p.canonical, p.computad)
    _emit(args, text, {"computad": codec.computad_to_json(p.computad),
                       "canonical": codec.cell_to_json(p.canonical)})
    return OK


def cmd_ingest(args):
    try:
        data = json.loads(_read(args.path))
    except json.JSONDecodeError as e:
        raise UsageError(f"{args.path} is not JSON: {e}") from None
    c = ingest_simplicial(SimplicialSet2.from_json(data))
    c.validate()
    _emit(args, print_computad("C", c), codec.computad_to_json(c))
    return OK


def cmd_present(args):
    d = _computad_ref(args, args.ref)
    _guard_dim(args, d.max_dim, "computad")
    stages = present(d)
    text, data = [], []
    for st in stages:
        text.append(f"stage {st.n}: {len(st.new)} new")
        for name, s, _ in st.new:
            text.append(f"  {name_text(name)} along {print_sphere(s)}")
        data.append({"stage": st.n, "generators": [{"name": codec.name_to_json(v),
                                                    "boundary": codec.sphere_to_json(s)}
                                                   for v, s, _ in st.new]})
    _emit(args, "\n".join(text), data)
    return OK


def cmd_dot(args):
    t = parse_tree(args.literal)
    _guard_dim(args, t.dim, "tree")
    sys.stdout.write(emit_dot(t))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--max-dim", type=int, default=None, metavar="N",
                        help="reject inputs of dimension above N")
    common.add_argument("--file", "-f", help=".wcat file holding the named values")

    p = argparse.ArgumentParser(prog="computads",
                                description="Computads for weak omega-categories.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="typecheck a .wcat file")
    s.add_argument("file")
    s.set_defaults(run=cmd_check)

    s = sub.add_parser("tree", parents=[common], help="positions, boundaries and zigzags of a tree")
    s.add_argument("action", choices=["positions", "boundary", "zigzag"])
    s.add_argument("literal")
    s.add_argument("--dim", type=int, help="boundary dimension (default: dim - 1)")
    s.add_argument("--dir", choices=["src", "tgt"], default="src")
    s.add_argument("--decode", action="store_true", help="read LITERAL as a zigzag sequence")
    s.set_defaults(run=cmd_tree)

    s = sub.add_parser("cell", parents=[common], help="boundary, support or shape of a named cell")
    s.add_argument("action", choices=["boundary", "support", "shape"])
    s.add_argument("name")
    s.set_defaults(run=cmd_cell)

    s = sub.add_parser("factor", parents=[common], help="factor a named hom or cell")
    s.add_argument("name")
    s.add_argument("--mode", choices=["cover-immersion", "generic-free"], default="cover-immersion")
    s.set_defaults(run=cmd_factor)

    s = sub.add_parser("compose", parents=[common],
                       help="compose named homs (first to last) or named cells")
    s.add_argument("names", nargs="+")
    s.set_defaults(run=cmd_compose)

    s = sub.add_parser("plex", parents=[common], help="representing computad of a cell's shape")
    s.add_argument("name")
    s.set_defaults(run=cmd_plex)

    s = sub.add_parser("ingest-simplicial", parents=[common], help="computad of a 2-truncated simplicial set")
    s.add_argument("path")
    s.set_defaults(run=cmd_ingest)

    s = sub.add_parser("present", parents=[common],
                       help="skeleton tower of free:TREE, disk:N, sphere:N or a named computad")
    s.add_argument("ref")
    s.set_defaults(run=cmd_present)

    s = sub.add_parser("emit-dot", parents=[common], help="Graphviz drawing of a tree's pasting diagram")
    s.add_argument("literal")
    s.set_defaults(run=cmd_dot)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code else OK
    try:
        return args.run(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE
    except WcatError as e:
        if args.json:
            print(json.dumps({"ok": False, "kind": e.kind, "message": e.message,
                              "path": [str(x) for x in e.path]}))
        print(str(e), file=sys.stderr)
        return FAILED


if __name__ == "__main__":
    sys.exit(main())
