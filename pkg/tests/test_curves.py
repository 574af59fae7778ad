import pytest
from hypothesis import given, settings, strategies as st

from corpus import all_classes, same_class

from critfix.curves import (
    CurveError,
    Simplicity,
    SpanningTree,
    complexity,
    cyclic_reduce,
    edge_counts,
    format_word,
    free_reduce,
    greedy_tree,
    invert,
    is_simple,
    parse_word,
    peripheral_word,
    reduce,
    simple_arrangement,
    simplicity,
)
from critfix.rotation_map import fig1_graph, multi_edge, path_graph, star_graph

letters3 = st.lists(st.sampled_from([1, 2, 3, -1, -2, -3]), max_size=14)


def test_parse_and_format():
    assert parse_word("x1 X3 x2") == [1, -3, 2]
    assert format_word([1, -3, 2]) == "x1 X3 x2"
    assert format_word([]) == "1"
    for bad in ["y1", "x0", "x"]:
        with pytest.raises(CurveError):
            parse_word(bad)
    with pytest.raises(CurveError):
        reduce("x4", rank=3)


def test_reduction_examples():
    assert free_reduce([1, 2, -2, -1, 3]) == [3]
    assert cyclic_reduce([1, 2, 3, -1]) == [2, 3]
    assert reduce("x1 X1").letters == ()
    assert complexity(reduce("x1 x2 x3 X1")) == 2
    assert complexity(reduce("x2 x1 x3 X1")) == 4


@settings(max_examples=200, deadline=None)
@given(letters3, st.integers(0, 13))
def test_normal_form_invariant_under_rotation_and_inversion(w, k):
    k = k % len(w) if w else 0
    a = reduce(w)
    assert reduce(w[k:] + w[:k]) == a
    assert reduce(invert(w)) == a
    assert same_class(a.letters, w)


@settings(max_examples=200, deadline=None)
@given(letters3, letters3)
def test_normal_form_separates_classes(a, b):
    assert (reduce(a) == reduce(b)) == same_class(a, b)


@settings(max_examples=100, deadline=None)
@given(letters3)
def test_oriented_forms(w):
    a = reduce(w, oriented=True)
    assert same_class(a.letters, w, oriented=True)
    assert (reduce(invert(w), oriented=True) == a) == same_class(w, invert(w), oriented=True)


def test_fig1_tree_polygon_and_peripherals():
    g = fig1_graph()
    t = SpanningTree(g, [0, 1, 2])
    assert t.rank == 3 and len(t.sides) == 6
    words = [str(peripheral_word(v, t)) for v in range(4)]
    assert words[1] == "x1" and words[2] == "x2"
    assert sorted(complexity(peripheral_word(v, t)) for v in range(4)) == [1, 1, 2, 2]
    # product of peripheral loops is trivial in the punctured sphere
    assert greedy_tree(g).edges == (0, 1, 2)


def test_bad_trees():
    g = fig1_graph()
    with pytest.raises(CurveError):
        SpanningTree(g, [0, 1])
    with pytest.raises(CurveError):
        SpanningTree(g, [0, 2, 3])
    with pytest.raises(CurveError):
        SpanningTree(g, [0, 1, 9])


def test_simple_examples():
    t = SpanningTree(fig1_graph(), [0, 1, 2])
    assert is_simple(reduce("x1 x3 x2 X3"), t) == Simplicity.SIMPLE
    assert is_simple(reduce("x1 x1"), t) == Simplicity.NON_SIMPLE
    assert is_simple(reduce(""), t) == Simplicity.SIMPLE
    long = reduce([1, 2] * 6)
    assert is_simple(long, t) == Simplicity.UNKNOWN
    assert simplicity(long, t) == Simplicity.NON_SIMPLE


def test_simple_single_generators():
    t = greedy_tree(star_graph(3))
    for i in (1, 2, 3):
        assert simplicity(reduce([i]), t) == Simplicity.SIMPLE


@pytest.mark.parametrize("graph,tree,max_len", [
    (fig1_graph(), [0, 1, 2], 6),
    (fig1_graph(), [0, 1, 3], 5),
    (star_graph(3), [0, 1, 2], 5),
    (path_graph(3), [0, 1, 2], 5),
    (multi_edge(3), [0], 8),
])
def test_fast_simplicity_matches_exhaustive(graph, tree, max_len):
    t = SpanningTree(graph, tree)
    for w in all_classes(t.rank, max_len):
        fast = simplicity(w, t)
        assert fast == is_simple(w, t), str(w)
        if fast == Simplicity.SIMPLE:
            assert simple_arrangement(w, t) is not None


def test_edge_counts():
    assert edge_counts(reduce("x1 x3 x2 X3"), 3) == (1, 1, 2)
