import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from computads.computad import EMPTY, Computad, Sphere, Var, check_cell, free_tree, ty
from computads.errors import NotFull, SimplicialIdentityViolation, WcatSyntaxError
from computads.frontend import elaborate, load, parse, parse_term
from computads.frontend.codec import (cell_from_json, cell_to_json, computad_from_json,
                                      computad_to_json, globset_from_json, globset_to_json,
                                      hom_from_json, hom_to_json, sphere_from_json, sphere_to_json,
                                      tree_from_json, tree_to_json)
from computads.frontend.dot import emit_dot
from computads.frontend.elaborate import Scope, elab_term
from computads.frontend.printer import print_cell, print_computad, print_hom
from computads.frontend.simplicial import SimplicialSet2, ingest_simplicial, standard_simplex
from computads.glob import pos_globset
from computads.opalg import associator, comp_cells, id_cell
from computads.testing import catalog, cell_pool, pair_corpus, shape_corpus
from computads.tree import br, enumerate_trees, globe, linear, parse_tree

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def trees():
    return st.recursive(st.just(br()), lambda kids: st.lists(kids, max_size=3).map(lambda ks: br(*ks)),
                        max_leaves=8)


def test_tree_declaration():
    env, diags = load("tree T := [[[]][]]")
    assert not diags
    assert env.trees["T"] == br(br(br()), br())


@given(trees())
@settings(max_examples=200, deadline=None)
def test_tree_print_parse(t):
    env, diags = load(f"tree T := {t}")
    assert not diags and env.trees["T"] == t
    assert parse_tree(str(t)) == t


def test_syntax_errors_carry_positions():
    with pytest.raises(WcatSyntaxError) as err:
        parse("tree T := [[]\n")
    assert err.value.line is not None
    with pytest.raises(WcatSyntaxError) as err:
        parse("computad C := {\n  x : *,\n  f : x -> ,\n}")
    assert err.value.line == 3
    with pytest.raises(WcatSyntaxError) as err:
        parse("tree T := [] ?")
    assert (err.value.line, err.value.col) == (1, 14)


def test_comp_elaborates_to_the_binary_composite():
    text = "computad C := { x y z : *, f : x -> y, g : y -> z }\ncell a in C := (comp (var f 1) (var g 1))"
    env, diags = load(text)
    assert not diags
    c = env.computads["C"]
    assert env.cells["a"] == ("C", comp_cells(c, [Var(1, "f"), Var(1, "g")]))


def test_associator_sample():
    env, diags = load((SAMPLES / "associator.wcat").read_text())
    assert not diags
    c = env.computads["C"]
    f, g, h = (Var(1, v) for v in "fgh")
    assert env.cells["alpha"][1] == env.cells["alpha2"][1] == associator(c, f, g, h)
    assert env.checked == ["alpha", "upsilon"]
    s = ty(c, env.cells["alpha"][1])
    assert (s.src, s.tgt) == (env.cells["f_gh"][1], env.cells["fg_h"][1])


def test_not_full_sample_reports_the_subterm():
    env, diags = load((SAMPLES / "not_full.wcat").read_text())
    assert len(diags) == 1
    d = diags[0]
    assert d.name == "bad" and isinstance(d.error, NotFull)
    assert d.error.path == ("sphere",)
    assert (d.line, d.col) == (4, 18)


def test_elaboration_keeps_going_and_is_order_independent():
    decls = [
        "computad C := { x y : *, f : x -> y }",
        "computad D := { p : * }",
        "cell one in C := (id f)",
        "cell two in D := (id p)",
        "cell bad in D := (id q)",
    ]
    env, diags = load("\n".join(decls))
    assert [d.name for d in diags] == ["bad"]
    swapped = [decls[1], decls[0], decls[3], decls[2], decls[4]]
    env2, diags2 = load("\n".join(swapped))
    assert env2.cells == env.cells and [str(d.error) for d in diags2] == [str(d.error) for d in diags]
    _, first = elaborate(parse("\n".join(decls)), keep_going=False)
    assert len(first) == 1


def cell_round_trip(ctx, cell):
    term = parse_term(print_cell(cell, ctx))
    return elab_term(Scope(ctx), term)


@pytest.mark.parametrize("name", sorted(catalog()))
def test_cell_print_parse(name):
    ctx = catalog()[name]
    for c in cell_pool(ctx, max_nodes=4, cap=20):
        assert cell_round_trip(ctx, c) == c


def test_composite_cells_print_parse():
    for sigma, _, cell in pair_corpus(60, seed=7):
        image = sigma(cell)
        assert cell_round_trip(sigma.target, image) == image


@pytest.mark.parametrize("name", sorted(catalog()))
def test_computad_print_parse(name):
    c = catalog()[name]
    env, diags = load(print_computad("C", c))
    assert not diags
    assert env.computads["C"] == c


@pytest.mark.parametrize("t", [linear(3), globe(2), br(br(br(), br()), br())])
def test_free_computads_print_parse(t):
    c = free_tree(t)
    env, diags = load(print_computad("C", c))
    assert not diags and env.computads["C"] == c


def test_hom_print_parse():
    for sigma, _, _ in pair_corpus(40, seed=11):
        text = "\n".join([print_computad("S", sigma.source), print_computad("T", sigma.target),
                          print_hom("h", sigma, "S", "T")])
        env, diags = load(text)
        assert not diags
        assert env.homs["h"][2] == sigma


def through_json(value):
    return json.loads(json.dumps(value))


@pytest.mark.parametrize("t", enumerate_trees(5))
def test_tree_and_globset_codecs(t):
    assert tree_from_json(through_json(tree_to_json(t))) == t
    g = pos_globset(t)
    assert globset_from_json(through_json(globset_to_json(g))) == g


def test_cell_sphere_computad_hom_codecs():
    for sigma, tau, cell in pair_corpus(80, seed=13):
        assert cell_from_json(through_json(cell_to_json(cell))) == cell
        s = ty(sigma.source, cell)
        assert sphere_from_json(through_json(sphere_to_json(s))) == s
        for c in (sigma.source, sigma.target):
            assert computad_from_json(through_json(computad_to_json(c))) == c
        assert hom_from_json(through_json(hom_to_json(sigma))) == sigma
    for s in shape_corpus():
        assert cell_from_json(through_json(cell_to_json(s))) == s


def test_standard_simplex():
    c = ingest_simplicial(standard_simplex())
    assert c.counts() == [3, 3, 1]
    s = c.phi(2, "012")
    assert s.src == comp_cells(c, [Var(1, "01"), Var(1, "12")])
    assert s.tgt == Var(1, "02")
    c.validate()


def test_discrete_simplicial_set():
    c = ingest_simplicial(SimplicialSet2(["a", "b"], {}, {}))
    assert c == Computad([{"a": EMPTY, "b": EMPTY}])


def test_degenerate_face_becomes_an_identity():
    s = SimplicialSet2(["0", "1"], {"01": ("1", "0"), "11": ("1", "1")}, {"x": ("11", "01", "01")},
                       s0={"1": "11"})
    c = ingest_simplicial(s)
    assert c.counts() == [2, 1, 1]
    f = Var(1, "01")
    assert c.phi(2, "x") == Sphere(c.phi(1, "01"), comp_cells(c, [f, id_cell(c, Var(0, "1"))]), f)


def test_degenerate_triangles_are_dropped():
    s = SimplicialSet2(["0", "1"], {"01": ("1", "0"), "00": ("0", "0"), "11": ("1", "1")},
                       {"t": ("01", "01", "00")}, s0={"0": "00", "1": "11"}, s0_2={"01": "t"})
    assert ingest_simplicial(s).counts() == [2, 1]


@pytest.mark.parametrize("bad", [
    SimplicialSet2(["0"], {"e": ("0", "1")}, {}),
    SimplicialSet2(["0", "1", "2"], {"a": ("1", "0"), "b": ("2", "1"), "c": ("2", "0")},
                   {"x": ("a", "c", "b")}),
    SimplicialSet2(["0", "1"], {"e": ("1", "0")}, {}, s0={"0": "e"}),
])
def test_simplicial_identities_are_checked(bad):
    with pytest.raises(SimplicialIdentityViolation):
        ingest_simplicial(bad)


def test_simplicial_json_round_trip():
    d = json.loads((SAMPLES / "simplex.json").read_text())
    s = SimplicialSet2.from_json(d)
    assert SimplicialSet2.from_json(through_json(s.to_json())) == s
    assert ingest_simplicial(s).counts() == [3, 3, 1]


def test_emit_dot():
    out = emit_dot(globe(2))
    assert out.startswith("digraph \"pasting\" {") and out.rstrip().endswith("}")
    assert out.count("style=dashed") == 1
    out3 = emit_dot(globe(3))
    assert "//" in out3
    assert emit_dot(linear(3)).count("->") == 3


def test_ingested_computads_validate():
    c = ingest_simplicial(standard_simplex())
    for x in cell_pool(c, max_nodes=3, cap=10):
        check_cell(c, x)
