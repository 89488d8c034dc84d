import pytest

from computads.computad import EMPTY, Computad, Sphere, Var, cell_boundary, check_cell, free_tree, is_full, ty
from computads.errors import BoundaryMismatch, DimTooLow, NotComposable
from computads.factor import cell_is_cover
from computads.glob import GlobSet, pos_globset
from computads.opalg import (associator, binary_comp, comp_cells, composite, fill_tree, graft,
                             id_cell, maximal_positions, push, unbiased_comp, unbiased_sphere, unitor)
from computads.tree import SRC, boundary_tree, br, enumerate_trees, globe, inclusion, linear, positions


def graph():
    e = EMPTY
    return Computad([{"x": e, "y": e, "z": e, "w": e},
                     {"f": Sphere(e, Var(0, "x"), Var(0, "y")), "g": Sphere(e, Var(0, "y"), Var(0, "z")),
                      "h": Sphere(e, Var(0, "z"), Var(0, "w"))}])


CASES = [(t, n) for t in enumerate_trees(5) for n in range(t.dim, t.dim + 3)]


@pytest.mark.parametrize("t,n", CASES)
def test_unbiased_composites(t, n):
    fb = free_tree(t)
    c = unbiased_comp(t, n)
    check_cell(fb, c)
    assert c.dim == n
    assert cell_is_cover(fb, c)
    assert ty(fb, c) == unbiased_sphere(t, n - 1)


def test_globe_composite_is_the_top_generator():
    assert unbiased_comp(globe(2), 2) == Var(2, positions(globe(2), 2)[0])
    with pytest.raises(DimTooLow):
        unbiased_comp(globe(2), 1)


def test_source_reading_of_unbiased_sphere_is_not_full():
    b, n = globe(2), 1
    inner = unbiased_comp(boundary_tree(b, n), n)
    s_only = Sphere(unbiased_sphere(b, n - 1), push(inclusion(b, n, SRC), inner),
                    push(inclusion(b, n, SRC), inner))
    assert not is_full(b, s_only)
    assert is_full(b, unbiased_sphere(b, n))


def test_associator_grafts_onto_edges():
    c = graph()
    f, g, h = (Var(1, v) for v in "fgh")
    s = cell_boundary(c, associator(c, f, g, h))
    assert (s.src, s.tgt) == (comp_cells(c, [f, comp_cells(c, [g, h])]),
                              comp_cells(c, [comp_cells(c, [f, g]), h]))


def test_unitor_boundary():
    c = graph()
    f, g, h = (Var(1, v) for v in "fgh")
    u = unitor(c, f, g, h)
    s = cell_boundary(c, u)
    assert s.src == comp_cells(c, [f, g, id_cell(c, Var(0, "z")), h])
    assert s.tgt == comp_cells(c, [f, g, h])


def test_identity_boundary():
    c = graph()
    i = id_cell(c, Var(1, "f"))
    assert ty(c, i).src == ty(c, i).tgt == Var(1, "f")


def test_binary_comp_of_edges_is_comp():
    c = graph()
    f, g = Var(1, "f"), Var(1, "g")
    assert binary_comp(c, f, g, 0) == comp_cells(c, [f, g]) == composite(c, linear(2), [f, g])
    with pytest.raises(NotComposable):
        binary_comp(c, g, f, 0)
    with pytest.raises(NotComposable):
        binary_comp(c, f, Var(0, "x"), 0)


def test_maximal_positions():
    t = br(br(br(), br()), br())
    assert [p.dim for p in maximal_positions(t)] == [2, 2, 1]


def test_fill_tree_checks_counts():
    c = graph()
    with pytest.raises(NotComposable):
        fill_tree(c, linear(2), [Var(1, "f")])


def test_graft_unit_law():
    b = linear(3)
    y = pos_globset(b)
    fb = free_tree(b)
    outer = unbiased_comp(b, 1)
    d = {(n, x): Var(n, x) for n in range(y.dim + 1) for x in y.cells_of(n)}
    assert graft(fb, y, d, outer) == outer


def test_graft_checks_boundaries():
    c = graph()
    y = GlobSet([["a", "b"], ["e"]], [{}, {"e": "a"}], [{}, {"e": "b"}])
    outer = Var(1, "e")
    ok = {(0, "a"): Var(0, "x"), (0, "b"): Var(0, "y"), (1, "e"): Var(1, "f")}
    assert graft(c, y, ok, outer) == Var(1, "f")
    with pytest.raises(BoundaryMismatch):
        graft(c, y, {**ok, (0, "b"): Var(0, "z")}, outer)
