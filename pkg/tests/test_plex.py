from concurrent.futures import ThreadPoolExecutor

import pytest

from computads.computad import EMPTY, INITIAL, Computad, Sphere, Var, disk, free_tree, identity_hom
from computads.errors import ShapeMismatch
from computads.opalg import associator, comp_cells
from computads.plex import (STAR, TOP, cells_of_shape, classify, enumerate_var_homs, evaluate,
                            intern, plex_of_cell, plex_of_sphere, shape, shape_sphere)
from computads.testing import catalog, shape_corpus, triangle_computad
from computads.tree import linear, positions

SHAPES = shape_corpus()
TARGETS = catalog()


def graph():
    e = EMPTY
    return Computad([{"x": e, "y": e, "z": e, "w": e},
                     {"f": Sphere(e, Var(0, "x"), Var(0, "y")), "g": Sphere(e, Var(0, "y"), Var(0, "z")),
                      "h": Sphere(e, Var(0, "z"), Var(0, "w"))}])


def arrow_shape():
    return intern(Var(1, Sphere(EMPTY, STAR, STAR)))


def test_zero_cells_have_the_star_shape():
    c = graph()
    assert {shape(c, Var(0, v)) for v in "xyzw"} == {STAR}
    assert {shape(c, Var(1, v)) for v in "fgh"} == {arrow_shape()}


def test_shapes_of_composites():
    fb = free_tree(linear(3))
    f, g, h = (Var(1, p) for p in positions(linear(3), 1))
    assert shape(fb, comp_cells(fb, [f, g])) == shape(fb, comp_cells(fb, [g, h]))
    assert shape(fb, comp_cells(fb, [f, comp_cells(fb, [g, h])])) != shape(fb, comp_cells(fb, [f, g, h]))


def test_shapes_live_in_the_terminal_computad():
    for s in SHAPES:
        if type(s) is Var:
            assert TOP.phi(s.dim, s.name) == s.name
        assert shape(TOP, s) == s


def test_small_plexes():
    p = plex_of_cell(STAR)
    assert p.computad.counts() == [1] and p.canonical.dim == 0
    assert plex_of_sphere(Sphere(EMPTY, STAR, STAR)).computad.counts() == [2]
    assert plex_of_cell(arrow_shape()).computad.counts() == [2, 1]
    assert plex_of_sphere(EMPTY).computad == INITIAL


def test_associator_plex():
    c = graph()
    f, g, h = (Var(1, v) for v in "fgh")
    a = associator(c, f, g, h)
    p = plex_of_cell(shape(c, a))
    assert p.computad.counts() == [4, 3]
    hom = classify(p, c, a)
    assert sorted(img.name for (k, _), img in hom.images.items() if k == 1) == ["f", "g", "h"]
    assert sorted(img.name for (k, _), img in hom.images.items() if k == 0) == ["w", "x", "y", "z"]


@pytest.mark.parametrize("n", range(4))
def test_disk_plexes(n):
    top = next(Var(k, v) for k, v in disk(n).all_gens() if k == n)
    p = plex_of_cell(shape(disk(n), top))
    assert p.computad.counts() == [2] * n + [1]
    assert len(enumerate_var_homs(p.computad, disk(n))) == 1


def test_classify_edge_in_a_graph():
    c = graph()
    p = plex_of_cell(arrow_shape())
    hom = classify(p, c, Var(1, "g"))
    assert sorted(img.name for img in hom.images.values()) == ["g", "y", "z"]
    with pytest.raises(ShapeMismatch):
        classify(p, c, Var(0, "x"))
    with pytest.raises(ShapeMismatch):
        classify(p, c, comp_cells(c, [Var(1, "f"), Var(1, "g")]))


@pytest.mark.parametrize("s", SHAPES, ids=repr)
def test_plex_canonical_cell(s):
    p = plex_of_cell(s)
    assert shape(p.computad, p.canonical) == s
    assert classify(p, p.computad, p.canonical) == identity_hom(p.computad)


@pytest.mark.parametrize("s", SHAPES, ids=repr)
def test_classify_and_evaluate_are_inverse(s):
    p = plex_of_cell(s)
    for c in TARGETS.values():
        homs = enumerate_var_homs(p.computad, c)
        cells = cells_of_shape(c, s)
        assert len(homs) == len(cells)
        assert {evaluate(h, p) for h in homs} == set(cells)
        for x in cells:
            h = classify(p, c, x)
            assert evaluate(h, p) == x
            assert h in homs


def test_enumerate_var_homs_trivial_cases():
    c = triangle_computad()
    assert len(enumerate_var_homs(INITIAL, c)) == 1
    assert len(enumerate_var_homs(plex_of_cell(STAR).computad, c)) == c.counts()[0]
    homs = enumerate_var_homs(c, c)
    assert homs == [identity_hom(c)]


def test_generator_preserving_homs_preserve_shape():
    for c in TARGETS.values():
        for s in SHAPES:
            p = plex_of_cell(s)
            for h in enumerate_var_homs(p.computad, c):
                assert shape(c, evaluate(h, p)) == s


def test_interning_is_idempotent_and_thread_safe():
    fb = free_tree(linear(2))
    sph = Sphere(EMPTY, Var(0, positions(linear(2), 0)[0]), Var(0, positions(linear(2), 0)[-1]))

    def work(_):
        return shape_sphere(fb, sph)
    with ThreadPoolExecutor(8) as pool:
        results = list(pool.map(work, range(64)))
    assert all(r is results[0] for r in results)
    assert intern(results[0]) is results[0]
