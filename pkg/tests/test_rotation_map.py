import pytest
from hypothesis import given, settings, strategies as st

from critfix.rotation_map import (
    RotationSystem,
    StructureError,
    are_isomorphic,
    brute_force_isomorphic,
    canonical_form,
    components,
    cycle_graph,
    dart,
    euler_report,
    face_walks,
    fig1_graph,
    is_bipartite,
    multi_edge,
    path_graph,
    single_edge,
    star_graph,
)

SMALL = [single_edge(), path_graph(2), path_graph(3), multi_edge(2), multi_edge(3),
         star_graph(3), cycle_graph(3), cycle_graph(4), fig1_graph()]


def test_fig1_faces():
    g = fig1_graph()
    walks = face_walks(g)
    assert sorted(len(w) for w in walks) == [2, 6]
    # edge e_k has index k - 1
    assert sorted(walks[0].edge_cycle) == [0, 0, 1, 1, 2, 3]
    assert sorted(walks[1].edge_cycle) == [2, 3]
    assert euler_report(g).as_tuple() == (1, 4, 4, 2, True)


def test_faces_partition_darts():
    for g in SMALL:
        darts = sorted(d for w in face_walks(g) for d in w.darts)
        assert darts == list(range(g.num_darts))


def test_small_face_counts():
    assert len(face_walks(single_edge())) == 1
    assert len(face_walks(multi_edge(2))) == 2
    assert len(face_walks(cycle_graph(5))) == 2
    assert [len(w) for w in face_walks(path_graph(3))] == [6]


@pytest.mark.parametrize("edges,rotations,code", [
    ([(0, 0)], [[(0, 0), (0, 1)]], "loop-edge"),
    ([(0, 5)], [[(0, 0)], [(0, 1)]], "unknown-vertex"),
    ([(0, 1)], [[(0, 0)], []], "missing-dart"),
    ([(0, 1)], [[(0, 0), (0, 0)], [(0, 1)]], "duplicated-dart"),
    ([(0, 1)], [[(0, 1)], [(0, 0)]], "misplaced-dart"),
    ([(0, 1)], [[(0, 0), (7, 0)], [(0, 1)]], "bad-dart"),
])
def test_structure_errors(edges, rotations, code):
    with pytest.raises(StructureError) as exc:
        RotationSystem(["a", "b"][: len(rotations)], edges, rotations)
    assert exc.value.code == code


def test_missing_dart_is_named():
    with pytest.raises(StructureError, match=r"\[0, 1\]"):
        RotationSystem(["a", "b"], [(0, 1)], [[(0, 0)], []])


def test_torus_is_reported_not_spherical():
    # two vertices, three edges, rotations giving a single face
    g = RotationSystem(["a", "b"], [(0, 1)] * 3,
                       [[(0, 0), (1, 0), (2, 0)], [(0, 1), (1, 1), (2, 1)]])
    rep = euler_report(g)
    assert rep.faces == 1 and not rep.genus_ok


def test_disconnected_euler():
    g = RotationSystem(["a", "b", "c", "d", "z"], [(0, 1), (2, 3)],
                       [[(0, 0)], [(0, 1)], [(1, 0)], [(1, 1)], []])
    rep = euler_report(g)
    # V - E + F = components + 1 on the sphere
    assert rep.components == 3
    assert rep.vertices - rep.edges + rep.faces == rep.components + 1
    assert rep.genus_ok
    assert components(g) == [[0, 1], [2, 3], [4]]


def test_bipartite():
    assert is_bipartite(cycle_graph(4)) == ([0, 2], [1, 3])
    assert is_bipartite(cycle_graph(3)) is None


def test_mirror_of_fig1_is_isomorphic():
    g = fig1_graph()
    assert canonical_form(g.mirror()) == canonical_form(g)
    assert are_isomorphic(g, g.mirror())


def test_chiral_pair_detected():
    # a star with pendant paths of lengths 1, 2, 3 around the hub is chiral
    g = RotationSystem(
        range(7),
        [(0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6)],
        [[(0, 0), (1, 0), (3, 0)], [(0, 1)], [(1, 1), (2, 0)], [(2, 1)],
         [(3, 1), (4, 0)], [(4, 1), (5, 0)], [(5, 1)]],
    )
    m = g.mirror()
    assert canonical_form(g) != canonical_form(m)
    assert not are_isomorphic(g, m)
    assert not brute_force_isomorphic(g, m)
    assert are_isomorphic(g, m, reflect=True)


def test_non_isomorphic_same_degrees():
    # path of 3 edges vs star: different degree sequence; triangle vs triple edge differ in V
    assert not are_isomorphic(path_graph(3), star_graph(3))
    assert canonical_form(path_graph(3)) != canonical_form(star_graph(3))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.randoms(use_true_random=False))
def test_relabel_invariance(g, rnd):
    vp = list(range(g.num_vertices))
    ep = list(range(g.num_edges))
    rnd.shuffle(vp)
    rnd.shuffle(ep)
    flips = [rnd.random() < 0.5 for _ in ep]
    h = g.relabel(vp, ep, flips)
    assert canonical_form(h) == canonical_form(g)
    assert are_isomorphic(g, h)
    assert brute_force_isomorphic(g, h)


def test_isomorphism_oracles_agree_on_small_pairs():
    for a in SMALL:
        for b in SMALL:
            bf = brute_force_isomorphic(a, b)
            assert are_isomorphic(a, b) == bf
            assert (canonical_form(a) == canonical_form(b)) == bf


def test_canonical_form_is_ascii_hex():
    code = canonical_form(single_edge())
    assert code == b"1.0.0.1"
    assert canonical_form(RotationSystem(["a"], [], [[]])) == b""


def test_dart_encoding():
    assert dart(3, 1) == 7
    g = fig1_graph()
    assert g.vertex_of(dart(1, 0)) == 3 and g.vertex_of(dart(1, 1)) == 2
    assert g.degrees() == [3, 1, 1, 3]
