import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from computads.errors import WcatSyntaxError, ZeroDimensional
from computads.glob import zigzag_encode
from computads.tree import (HERE, SRC, TGT, Pos, Tree, all_positions, boundary_positions,
                            boundary_positions_bruteforce, boundary_tree, br, enumerate_trees,
                            globe, inclusion, is_valid, linear, parse_pos, parse_tree,
                            positions, srcpos, tgtpos)

SMALL = enumerate_trees(6)


def trees(max_leaves=4):
    return st.recursive(st.just(br()), lambda kids: st.lists(kids, max_size=3).map(lambda c: Tree(tuple(c))),
                        max_leaves=max_leaves)


def profile(t):
    return tuple(len(positions(t, n)) for n in range(t.dim + 1))


def disk_cells(k, n):
    return 2 if n < k else 1 if n == k else 0


def profile_from_zigzag(t):
    # disks of dim zs[0], zs[2], ... glued along disks of dim zs[1], zs[3], ...
    zs = zigzag_encode(t)
    return tuple(sum(disk_cells(z, n) for z in zs[::2]) - sum(disk_cells(z, n) for z in zs[1::2])
                 for n in range(t.dim + 1))


def test_running_example_has_nine_positions():
    t = br(br(br(), br()), br())
    assert len(all_positions(t)) == 9
    assert profile(t) == (3, 4, 2)


@pytest.mark.parametrize("t", SMALL)
def test_position_counts_match_zigzag_formula(t):
    assert profile(t) == profile_from_zigzag(t)


def test_enumeration_counts_are_catalan():
    counts = [sum(1 for t in enumerate_trees(n) if t.size == n) for n in range(1, 8)]
    assert counts == [1, 1, 2, 5, 14, 42, 132]


def test_parse_and_print():
    t = parse_tree("[[[]][]]")
    assert t == br(br(br()), br())
    assert str(t) == "[[[]][]]"
    with pytest.raises(WcatSyntaxError):
        parse_tree("[[]")
    with pytest.raises(WcatSyntaxError):
        parse_tree("[]]")


def test_position_words_round_trip():
    for t in SMALL:
        for p in all_positions(t):
            assert parse_pos(p.word()) == p
            assert is_valid(t, p)


def test_invalid_position():
    assert not is_valid(br(), Pos(("l",)))
    assert not is_valid(linear(1), Pos(("r", "r")))


def test_zero_dimensional_positions_have_no_boundary():
    with pytest.raises(ZeroDimensional):
        srcpos(HERE)
    with pytest.raises(ZeroDimensional):
        tgtpos(Pos(("r",)))


@pytest.mark.parametrize("t", SMALL)
def test_globularity(t):
    ps = set(all_positions(t))
    for p in ps:
        if p.dim == 0:
            continue
        assert srcpos(p) in ps and tgtpos(p) in ps
        assert srcpos(p).dim == tgtpos(p).dim == p.dim - 1
        if p.dim >= 2:
            assert srcpos(srcpos(p)) == srcpos(tgtpos(p))
            assert tgtpos(srcpos(p)) == tgtpos(tgtpos(p))


@pytest.mark.parametrize("t", SMALL)
def test_boundary_characterization_matches_definition(t):
    for n in range(t.dim + 1):
        for d in (SRC, TGT):
            assert boundary_positions(t, n, d) == boundary_positions_bruteforce(t, n, d)


def test_unique_zero_dimensional_boundary_positions():
    for t in SMALL:
        assert len(boundary_positions(t, 0, SRC)) == 1
        assert len(boundary_positions(t, 0, TGT)) == 1


def test_boundary_tree_of_running_example():
    t = br(br(br(), br()), br())
    assert boundary_tree(t, 0) == br()
    assert boundary_tree(t, 1) == linear(2)
    assert boundary_tree(t, 5) == t


@pytest.mark.parametrize("t", SMALL)
def test_inclusions_are_globular_maps(t):
    for k in range(t.dim + 1):
        for d in (SRC, TGT):
            m = inclusion(t, k, d)
            for p in all_positions(boundary_tree(t, k)):
                q = m(p)
                assert is_valid(t, q) and q.dim == p.dim
                if p.dim:
                    assert m(srcpos(p)) == srcpos(q)
                    assert m(tgtpos(p)) == tgtpos(q)


@given(trees(), st.integers(0, 4))
@settings(max_examples=150, deadline=None)
def test_boundary_is_idempotent(t, k):
    b = boundary_tree(t, k)
    assert boundary_tree(b, k) == b
    assert b.dim == min(k, t.dim)


@pytest.mark.parametrize("n", range(11))
def test_linear_and_globe_counts(n):
    assert profile(linear(n))[:2] == ((n + 1, n) if n else (1,))
    g = profile(globe(n))
    assert g == tuple([2] * n + [1])


def test_boundary_characterization_up_to_eight_nodes():
    for t in enumerate_trees(8):
        for n in range(t.dim + 1):
            for d in (SRC, TGT):
                assert boundary_positions(t, n, d) == boundary_positions_bruteforce(t, n, d)
