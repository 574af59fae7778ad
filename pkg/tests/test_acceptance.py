"""Acceptance criteria 1-9. Each test records a PASS/FAIL line that is
printed in the terminal summary."""

import random
import zlib
from collections import Counter

from corpus import all_classes, census_graphs, overlay_for, random_words, same_class

from critfix.attractor import attractor_set, iterate_to_attractor, transition_graph
from critfix.blowup import blow_up
from critfix.curves import (
    Simplicity,
    SpanningTree,
    complexity,
    edge_counts,
    is_simple,
    peripheral_word,
    reduce,
    simplicity,
)
from critfix.pullback import build_overlay, pullback, pullback_via_recursion
from critfix.rotation_map import (
    are_isomorphic,
    brute_force_isomorphic,
    canonical_form,
    face_walks,
    fig1_graph,
    is_bipartite,
    is_connected,
)
from critfix.tischler import charge_from_tischler, radial_tischler


def test_criterion_1_tischler_structure(record):
    bad = []
    for n, code, g in census_graphs(6):
        t = radial_tischler(g).graph
        walks = face_walks(t)
        ok = (
            is_connected(t)
            and is_bipartite(t) is not None
            and t.num_vertices == n + 2
            and t.num_edges == 2 * n
            and len(walks) == n
            and all(len(w) == 4 for w in walks)
            and not any(len(w) == 2 for w in walks)
        )
        if not ok:
            bad.append(code)
    total = len(census_graphs(6))
    record(1, not bad, f"{total - len(bad)}/{total} classes with N<=6 have a valid radial model")
    assert not bad


def test_criterion_2_round_trip(record):
    bad = [code for _, code, g in census_graphs(6)
           if not are_isomorphic(charge_from_tischler(radial_tischler(g)).graph, g)]
    total = len(census_graphs(6))
    record(2, not bad, f"{total - len(bad)}/{total} classes recovered from their radial model")
    assert not bad


def test_criterion_3_worked_example(record):
    g = fig1_graph()
    t = radial_tischler(g)
    tg = t.graph
    stats = (tg.num_vertices, tg.num_edges, len(face_walks(tg)))
    rdeg = sorted(tg.degree(r) for r in t.r_vertices)
    tree = SpanningTree(g, [0, 1, 2])
    w = reduce("x1 x3 x2 X3")
    pulls = pullback(w, build_overlay(blow_up(g), tree))
    got = Counter(complexity(u) for u in pulls)
    ok = (stats == (6, 8, 4) and rdeg == [2, 6]
          and edge_counts(w, 3) == (1, 1, 2)
          and is_simple(w, tree) == Simplicity.SIMPLE
          and len(pulls) == 3 and got == Counter({0: 1, 1: 2}))
    record(3, ok, f"Tischler {stats} R-degrees {rdeg}; {w} -> {[str(u) for u in pulls]}")
    assert ok


WORDS_PER_GRAPH = 10_000


def test_criterion_4_contraction(record):
    violations, strict_fail, checked, strict_checked = [], [], 0, 0
    for n, code, g in census_graphs(4):
        tree, o, _ = overlay_for(code)
        for w in random_words(zlib.crc32(code), tree.rank, WORDS_PER_GRAPH):
            total = sum(complexity(u) for u in pullback(w, o))
            checked += 1
            if total > complexity(w):
                violations.append((code, str(w)))
            if max(edge_counts(w, tree.rank), default=0) >= 2 and simplicity(w, tree) == Simplicity.SIMPLE:
                strict_checked += 1
                if total >= complexity(w):
                    strict_fail.append((code, str(w)))
    ok = not violations and not strict_fail
    record(4, ok, f"{checked} words: {len(violations)} violations, "
                  f"{len(strict_fail)} non-strict of {strict_checked} simple words with a count >= 2")
    assert ok, (violations[:5], strict_fail[:5])


def test_criterion_5_overlay_matches_recursion(record):
    mismatches, checked = [], 0
    for n, code, g in census_graphs(4):
        tree, o, rec = overlay_for(code)
        for w in random_words(zlib.crc32(code), tree.rank, WORDS_PER_GRAPH):
            checked += 1
            if Counter(pullback(w, o)) != Counter(pullback_via_recursion(w, rec)):
                mismatches.append((code, str(w)))
    record(5, not mismatches, f"{checked - len(mismatches)}/{checked} words agree")
    assert not mismatches, mismatches[:5]


def test_criterion_6_peripheral_coherence(record):
    bad, checked = [], 0
    for n, code, g in census_graphs(4):
        tree, o, rec = overlay_for(code)
        for v in range(g.num_vertices):
            checked += 1
            p = peripheral_word(v, tree, oriented=True)
            cycles = rec.cycles(p.letters)
            long = [(c, r) for c, r in cycles if len(c) > 1]
            ok = (
                len(long) == 1
                and len(long[0][0]) == g.degree(v) + 1
                and same_class(long[0][1], p.letters, oriented=True)
                and all(not r for c, r in cycles if len(c) == 1)
            )
            if not ok:
                bad.append((code, v))
    record(6, not bad, f"{checked - len(bad)}/{checked} vertices coherent")
    assert not bad


def test_criterion_7_attractor_convergence(record):
    g = fig1_graph()
    tree = SpanningTree(g, [0, 1, 2])
    o = build_overlay(blow_up(g), tree)
    simple = [w for w in all_classes(tree.rank, 6) if is_simple(w, tree) == Simplicity.SIMPLE]
    slow = []
    for w in simple:
        traj = iterate_to_attractor(w, o, complexity(w) + 4)
        if not traj.converged:
            slow.append(str(w))
    ag = transition_graph(o, tree)
    ok = not slow and ag.is_closed() and len(ag.nodes) == len(attractor_set(tree))
    record(7, ok, f"{len(simple) - len(slow)}/{len(simple)} simple classes converge; "
                  f"{len(ag.nodes)} nodes, closed={ag.is_closed()}")
    assert ok, slow


def test_criterion_8_blowup_counts(record):
    bad = []
    for n, code, g in census_graphs(6):
        c = blow_up(g)
        m = len(face_walks(g))
        local = c.local_degrees()
        ok = (len(face_walks(c.blown)) == n + m and c.degree == n + 1
              and local == [g.degree(v) + 1 for v in range(g.num_vertices)]
              and sum(d - 1 for d in local) == 2 * n)
        if not ok:
            bad.append(code)
    total = len(census_graphs(6))
    record(8, not bad, f"{total - len(bad)}/{total} classes")
    assert not bad


def _random_relabel(g, rng):
    vp = list(range(g.num_vertices))
    ep = list(range(g.num_edges))
    rng.shuffle(vp)
    rng.shuffle(ep)
    flips = [rng.random() < 0.5 for _ in ep]
    return g.relabel(vp, ep, flips)


def test_criterion_9_canonical_robustness(record):
    rng = random.Random(9)
    unstable = []
    for n, code, g in census_graphs(6):
        for _ in range(100):
            if canonical_form(_random_relabel(g, rng)) != code:
                unstable.append(code)
                break
    small = [g for _, _, g in census_graphs(4)]
    small += [_random_relabel(g, rng) for g in small]
    disagree, pairs = [], 0
    for i, a in enumerate(small):
        for b in small[i:]:
            pairs += 1
            if brute_force_isomorphic(a, b) != (canonical_form(a) == canonical_form(b)):
                disagree.append((a, b))
    ok = not unstable and not disagree
    record(9, ok, f"{len(census_graphs(6)) - len(unstable)}/{len(census_graphs(6))} classes stable "
                  f"under 100 relabelings; oracle agrees on {pairs - len(disagree)}/{pairs} pairs")
    assert ok
