"""
Closed curves in the sphere punctured at the charge-graph vertices.

Curves are cyclic words in generators ``x_1 .. x_n``, one per edge of a
spanning tree ``S``. The complement of ``S`` is a disk whose boundary
polygon has ``2n`` sides, one per tree dart. Letter ``x_i`` crosses tree
edge ``i`` (oriented end 0 -> end 1) from its right side to its left
side, i.e. it leaves the disk through side ``(e, 0)`` and comes back
through side ``(e, 1)``; ``X_i`` is the reverse crossing.

A cyclically reduced word is the crossing sequence of a representative in
minimal position, so its length is the complexity of the curve.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import cmp_to_key
from typing import Iterable, Sequence

from .rotation_map import RotationSystem, components, dart


class CurveError(ValueError):
    pass


# -- spanning trees ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpanningTree:
    """Spanning tree of a charge graph with its boundary polygon.

    ``edges`` are base edge indices in increasing order; generator ``x_i``
    belongs to ``edges[i - 1]``. ``sides`` is the face walk of the tree
    (darts of tree edges, started at the smallest one).
    """

    graph: RotationSystem
    edges: tuple[int, ...]
    sides: tuple[int, ...]

    def __init__(self, graph: RotationSystem, edges: Iterable[int]):
        edges = tuple(sorted(set(int(e) for e in edges)))
        for e in edges:
            if not 0 <= e < graph.num_edges:
                raise CurveError(f"tree edge {e} out of range")
        if len(edges) != graph.num_vertices - 1:
            raise CurveError(f"a spanning tree needs {graph.num_vertices - 1} edges, got {len(edges)}")
        if len(components(_restrict(graph, edges))) != 1:
            raise CurveError(f"edges {[e + 1 for e in edges]} do not span a tree")
        object.__setattr__(self, "graph", graph)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "sides", _tree_polygon(graph, edges))

    @property
    def rank(self) -> int:
        return len(self.edges)

    def generator(self, edge: int) -> int:
        return self.edges.index(edge) + 1

    def tree_rotation(self, v: int) -> list[int]:
        tree = set(self.edges)
        return [x for x in self.graph.rotations[v] if (x >> 1) in tree]


def _restrict(graph: RotationSystem, edges: Sequence[int]) -> RotationSystem:
    index = {e: i for i, e in enumerate(edges)}
    rotations = [
        [dart(index[x >> 1], x & 1) for x in rot if (x >> 1) in index]
        for rot in graph.rotations
    ]
    return RotationSystem(graph.vertices, [graph.edges[e] for e in edges], rotations)


def _tree_polygon(graph: RotationSystem, edges: Sequence[int]) -> tuple[int, ...]:
    tree = set(edges)
    nxt = {}
    for rot in graph.rotations:
        sub = [x for x in rot if (x >> 1) in tree]
        for i, x in enumerate(sub):
            nxt[x] = sub[(i + 1) % len(sub)]
    if not nxt:
        return ()
    start = min(nxt)
    walk = [start]
    d = nxt[start ^ 1]
    while d != start:
        walk.append(d)
        d = nxt[d ^ 1]
    if len(walk) != len(nxt):
        raise CurveError("tree polygon is not a single face")
    return tuple(walk)


def greedy_tree(graph: RotationSystem) -> SpanningTree:
    """Kruskal on edges in index order."""
    parent = list(range(graph.num_vertices))

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    chosen = []
    for e, (u, v) in enumerate(graph.edges):
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            chosen.append(e)
    return SpanningTree(graph, chosen)


# -- words -------------------------------------------------------------------


def _letter_key(x: int) -> tuple[int, int]:
    return (abs(x), 0 if x > 0 else 1)


def free_reduce(letters: Iterable[int]) -> list[int]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


def cyclic_reduce(letters: Iterable[int]) -> list[int]:
    w = free_reduce(letters)
    i, j = 0, len(w) - 1
    while i < j and w[i] == -w[j]:
        i += 1
        j -= 1
    return w[i:j + 1]


def invert(letters: Sequence[int]) -> list[int]:
    return [-x for x in reversed(letters)]


def _least_rotation(w: Sequence[int]) -> tuple[int, ...]:
    if not w:
        return ()
    keyed = [_letter_key(x) for x in w]
    best = min(range(len(w)), key=lambda i: keyed[i:] + keyed[:i])
    return tuple(w[best:]) + tuple(w[:best])


@dataclass(frozen=True, order=False)
class CurveWord:
    """Normal form of a free homotopy class of closed curves.

    ``letters`` is cyclically reduced and the least rotation (for
    unoriented classes, least among the rotations of the word and of its
    inverse).
    """

    letters: tuple[int, ...]
    oriented: bool = False

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return format_word(self.letters)

    def sort_key(self):
        return (len(self.letters), [_letter_key(x) for x in self.letters])

    def __lt__(self, other: "CurveWord") -> bool:
        return self.sort_key() < other.sort_key()


def reduce(word: Iterable[int] | str, oriented: bool = False, rank: int | None = None) -> CurveWord:
    """Free and cyclic reduction followed by rotation (and inversion) to normal form."""
    letters = parse_word(word) if isinstance(word, str) else [int(x) for x in word]
    for x in letters:
        if x == 0 or (rank is not None and abs(x) > rank):
            raise CurveError(f"unknown generator {format_word([x]) if x else x}")
    w = cyclic_reduce(letters)
    best = _least_rotation(w)
    if not oriented:
        inv = _least_rotation(invert(w))
        if [_letter_key(x) for x in inv] < [_letter_key(x) for x in best]:
            best = inv
    return CurveWord(best, oriented)


_TOKEN = re.compile(r"^([xX])(\d+)$")


def parse_word(text: str) -> list[int]:
    """Parse ``"x1 X3 x2"``; capital letters are inverses, indices are 1-based."""
    out = []
    for tok in text.replace(",", " ").split():
        m = _TOKEN.match(tok)
        if not m or int(m.group(2)) == 0:
            raise CurveError(f"bad word token {tok!r}")
        i = int(m.group(2))
        out.append(i if m.group(1) == "x" else -i)
    return out


def format_word(letters: Iterable[int]) -> str:
    toks = [f"x{x}" if x > 0 else f"X{-x}" for x in letters]
    return " ".join(toks) if toks else "1"


def complexity(w: CurveWord) -> int:
    return len(w.letters)


def edge_count(w: CurveWord, generator: int) -> int:
    return sum(1 for x in w.letters if abs(x) == generator)


def edge_counts(w: CurveWord, rank: int) -> tuple[int, ...]:
    counts = [0] * rank
    for x in w.letters:
        counts[abs(x) - 1] += 1
    return tuple(counts)


def peripheral_word(v: int, tree: SpanningTree, oriented: bool = False) -> CurveWord:
    """Small counterclockwise loop around vertex ``v``.

    It crosses the tree edges at ``v`` in rotation order, each from right to
    left when the edge is oriented away from ``v``.
    """
    if not 0 <= v < tree.graph.num_vertices:
        raise CurveError(f"unknown vertex {v}")
    letters = []
    for x in tree.tree_rotation(v):
        gen = tree.generator(x >> 1)
        letters.append(gen if x & 1 == 0 else -gen)
    return reduce(letters, oriented=oriented)


# -- simplicity ----------------------------------------------------------------


class Simplicity(Enum):
    SIMPLE = "simple"
    NON_SIMPLE = "non_simple"
    UNKNOWN = "unknown"


class _Chords:
    """Chord diagram of a cyclically reduced word in the tree polygon.

    Crossing ``k`` (the ``k``-th letter) leaves through side ``exit[k]`` and
    re-enters through ``entry[k]``. Inside the disk a chord joins the entry
    point of ``k`` to the exit point of ``k + 1``.
    """

    def __init__(self, letters: Sequence[int], tree: SpanningTree):
        self.letters = list(letters)
        self.n = len(letters)
        self.nsides = len(tree.sides)
        self.pos = {d: i for i, d in enumerate(tree.sides)}
        self.edge_of = []
        self.exit = []
        self.entry = []
        for x in letters:
            e = tree.edges[abs(x) - 1]
            self.edge_of.append(e)
            out = dart(e, 0) if x > 0 else dart(e, 1)
            self.exit.append(out)
            self.entry.append(out ^ 1)
        self.by_edge: dict[int, list[int]] = {}
        for k, e in enumerate(self.edge_of):
            self.by_edge.setdefault(e, []).append(k)

    def chords(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        """Chord endpoints as (crossing, side) pairs."""
        return [((k, self.entry[k]), ((k + 1) % self.n, self.exit[(k + 1) % self.n])) for k in range(self.n)]

    def coordinate(self, point: tuple[int, int], rank: dict[int, int]) -> tuple[int, int]:
        k, side = point
        r = rank[k]
        t = r if side & 1 == 0 else len(self.by_edge[self.edge_of[k]]) - 1 - r
        return (self.pos[side], t)

    def crossing_free(self, rank: dict[int, int], chords=None) -> bool:
        ends = []
        for a, b in chords if chords is not None else self.chords():
            p, q = self.coordinate(a, rank), self.coordinate(b, rank)
            ends.append((p, q) if p < q else (q, p))
        for i in range(len(ends)):
            a, b = ends[i]
            for j in range(i + 1, len(ends)):
                c, d = ends[j]
                if (a < c < b) != (a < d < b):
                    return False
        return True


def is_simple(w: CurveWord, tree: SpanningTree, cap: int = 10) -> Simplicity:
    """Exhaustive search for a crossing-free arrangement of the strands.

    Tries every ordering of the crossing points along every tree edge,
    pruning as soon as two chords with fully placed endpoints cross.
    Returns ``UNKNOWN`` above ``cap``.
    """
    letters = w.letters
    if len(letters) > cap:
        return Simplicity.UNKNOWN
    if not letters:
        return Simplicity.SIMPLE
    ch = _Chords(letters, tree)
    order = sorted(ch.by_edge)
    placed_after = []
    all_chords = ch.chords()
    done: set[int] = set()
    for e in order:
        done.add(e)
        placed_after.append([c for c in all_chords
                             if ch.edge_of[c[0][0]] in done and ch.edge_of[c[1][0]] in done])

    rank: dict[int, int] = {}

    def search(level: int) -> bool:
        if level == len(order):
            return True
        ks = ch.by_edge[order[level]]
        for perm in itertools.permutations(range(len(ks))):
            for k, r in zip(ks, perm):
                rank[k] = r
            if ch.crossing_free(rank, placed_after[level]) and search(level + 1):
                return True
        for k in ks:
            rank.pop(k, None)
        return False

    return Simplicity.SIMPLE if search(0) else Simplicity.NON_SIMPLE


def simple_arrangement(w: CurveWord, tree: SpanningTree) -> dict[int, int] | None:
    """Crossing-free placement of the strands, or ``None`` if there is none.

    In a crossing-free picture the order of two strands along an edge is
    forced: follow both until they first leave through different sides;
    the strand heading to the side further along the polygon is the outer
    one. Strands that never separate mean the word is a proper power. The
    forced order is built and then checked chord by chord, so a returned
    arrangement is always a valid witness. The result maps each crossing
    index to its rank along its edge, counted from end 0.
    """
    letters = w.letters
    if not letters:
        return {}
    ch = _Chords(letters, tree)
    n = ch.n

    def partner(h):
        k, kind = h
        if kind == "in":
            k2 = (k + 1) % n
            return (k2, "out"), ch.exit[k2]
        k2 = (k - 1) % n
        return (k2, "in"), ch.entry[k2]

    def flip(h):
        return (h[0], "out" if h[1] == "in" else "in")

    def side_of(h):
        return ch.entry[h[0]] if h[1] == "in" else ch.exit[h[0]]

    proper_power = False

    def compare(a: int, b: int) -> int:
        nonlocal proper_power
        e = ch.edge_of[a]
        side = dart(e, 0)
        ha = (a, "in" if ch.entry[a] == side else "out")
        hb = (b, "in" if ch.entry[b] == side else "out")
        here = side
        for _ in range(2 * n + 2):
            pa, ya = partner(ha)
            pb, yb = partner(hb)
            if ya != yb:
                da = (ch.pos[ya] - ch.pos[here]) % ch.nsides
                db = (ch.pos[yb] - ch.pos[here]) % ch.nsides
                return -1 if da > db else 1
            ha, hb = flip(pa), flip(pb)
            here = side_of(ha)
        proper_power = True
        return 0

    rank: dict[int, int] = {}
    for e, ks in ch.by_edge.items():
        ordered = sorted(ks, key=cmp_to_key(compare))
        if proper_power:
            return None
        for r, k in enumerate(ordered):
            rank[k] = r
    return rank if ch.crossing_free(rank) else None


def simplicity(w: CurveWord, tree: SpanningTree) -> Simplicity:
    """Fast verdict from :func:`simple_arrangement` (no complexity cap)."""
    return Simplicity.SIMPLE if simple_arrangement(w, tree) is not None else Simplicity.NON_SIMPLE
