import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from computads.errors import (GlobularityViolation, IncompatibleLabeling, MalformedZigzag,
                              NotAPastingDiagram)
from computads.glob import (GlobMap, GlobSet, glob_colimit, globular_closure, pos_globset,
                            position_map_globmap, substitute, substitute_with_cocone,
                            tree_from_globset, zigzag_decode, zigzag_encode)
from computads.tree import (SRC, TGT, all_positions, boundary_tree, br, enumerate_trees, globe,
                            inclusion, linear)

TREES = enumerate_trees(7)


def edge(a="a", b="b", f="f"):
    return GlobSet([[a, b], [f]], [{}, {f: a}], [{}, {f: b}])


def test_zigzag_examples():
    assert zigzag_encode(br()) == [0]
    assert zigzag_encode(globe(2)) == [2]
    assert zigzag_encode(linear(2)) == [1, 0, 1]
    assert zigzag_encode(br(br(br(), br()), br())) == [2, 1, 2, 0, 1]


@pytest.mark.parametrize("t", TREES)
def test_zigzag_round_trip(t):
    assert zigzag_decode(zigzag_encode(t)) == t


@pytest.mark.parametrize("zs", [[], [1, 0], [1, 1, 1], [0, 0, 0], [-1], [2, 3, 1]])
def test_malformed_zigzag(zs):
    with pytest.raises(MalformedZigzag):
        zigzag_decode(zs)


@given(st.lists(st.integers(0, 4), min_size=1, max_size=9))
@settings(max_examples=300, deadline=None)
def test_decode_accepts_exactly_zigzags(zs):
    ok = len(zs) % 2 == 1 and all(zs[i] < min(zs[i - 1], zs[i + 1]) for i in range(1, len(zs), 2))
    if ok:
        assert zigzag_encode(zigzag_decode(zs)) == zs
    else:
        with pytest.raises(MalformedZigzag):
            zigzag_decode(zs)


def test_globularity_is_checked():
    with pytest.raises(GlobularityViolation):
        GlobSet([["a"], ["f"]], [{}, {"f": "b"}], [{}, {"f": "a"}])
    bad = [["a", "b"], ["f", "g"], ["u"]]
    src = [{}, {"f": "a", "g": "b"}, {"u": "f"}]
    tgt = [{}, {"f": "b", "g": "a"}, {"u": "g"}]
    with pytest.raises(GlobularityViolation):
        GlobSet(bad, src, tgt)


def test_globmap_checks_faces():
    e = edge()
    GlobMap(e, e, [{"a": "a", "b": "b"}, {"f": "f"}])
    with pytest.raises(GlobularityViolation):
        GlobMap(e, e, [{"a": "b", "b": "b"}, {"f": "f"}])


def test_pushout_of_two_edges_is_linear2():
    point = GlobSet([["p"]])
    g, cocone = glob_colimit([point, edge(), edge()],
                             [(0, 1, [{"p": "b"}]), (0, 2, [{"p": "a"}])])
    assert [len(c) for c in g.cells] == [3, 2]
    t, _ = tree_from_globset(g)
    assert t == linear(2)
    assert cocone[1][0]["b"] == cocone[2][0]["a"]


def test_coequalizer_identifies_parallel_edges():
    two = GlobSet([["a", "b"], ["f", "g"]], [{}, {"f": "a", "g": "a"}], [{}, {"f": "b", "g": "b"}])
    g, _ = glob_colimit([edge(), two], [(0, 1, [{"a": "a", "b": "b"}, {"f": "f"}]),
                                        (0, 1, [{"a": "a", "b": "b"}, {"f": "g"}])])
    assert [len(c) for c in g.cells] == [2, 1]


@pytest.mark.parametrize("t", TREES)
def test_tree_from_pos_globset(t):
    back, iso = tree_from_globset(pos_globset(t))
    assert back == t
    assert all(iso[p] == p for p in all_positions(t))


def test_non_pasting_diagrams_are_rejected():
    loop = GlobSet([["a"], ["f"]], [{}, {"f": "a"}], [{}, {"f": "a"}])
    with pytest.raises(NotAPastingDiagram):
        tree_from_globset(loop)
    fork = GlobSet([["a", "b", "c"], ["f", "g"]], [{}, {"f": "a", "g": "a"}], [{}, {"f": "b", "g": "c"}])
    with pytest.raises(NotAPastingDiagram):
        tree_from_globset(fork)


@pytest.mark.parametrize("t", enumerate_trees(6))
def test_substituting_globes_is_identity(t):
    out, psi = substitute_with_cocone(t, lambda p: globe(p.dim))
    assert out == t


@pytest.mark.parametrize("x", [t for t in enumerate_trees(6) if t.dim <= 3])
def test_substituting_into_a_globe_gives_the_label(x):
    n = max(x.dim, 1)

    def label(p):
        return x if p.dim == n else boundary_tree(x, p.dim)
    assert substitute(globe(n), label) == x


def test_substitute_edges_of_linear2():
    t = substitute(linear(2), lambda p: linear(2) if p.word() == "inl(here)" else globe(p.dim))
    assert t == linear(3)


def test_incompatible_labels():
    with pytest.raises(IncompatibleLabeling):
        substitute(linear(1), lambda p: globe(2))
    with pytest.raises(IncompatibleLabeling):
        substitute(globe(2), lambda p: linear(2) if p.dim == 2 else globe(p.dim))


def test_position_map_is_globular():
    t = br(br(br(), br()), br())
    for k in range(3):
        for d in (SRC, TGT):
            position_map_globmap(inclusion(t, k, d)).check()


def test_globular_closure():
    g = pos_globset(globe(2))
    top = next(p for p in all_positions(globe(2)) if p.dim == 2)
    assert len(globular_closure(g, [(2, top)])) == 5
