"""
Pulling curves back through the blow-up cover.

Upstairs cells
--------------
The preimage of the base graph ``G`` cuts the upper sphere into ``d * m``
faces, each mapped homeomorphically onto a base face. They come in
layers: layer 0 holds the non-patch faces ``U'_k`` of the blown graph and
layer ``j + 1`` holds the lifts of all base faces inside patch ``D_j``.
Crossing base edge ``e_j`` at dart ``x`` lifts as follows:

* from layer 0 the path enters ``D_j`` through the arc bounding ``U'``
  at ``x``;
* from layer ``j + 1`` it leaves ``D_j`` through the arc bounding
  ``U'`` at ``alpha(x)``;
* in any other layer it stays inside its patch.

Sheets
------
The complement of the spanning tree ``S`` is a disk; its preimage is
``d`` sheets, each made of one lift of every base face glued along lifts of
non-tree edges. Sheet 0 holds the lift of the basepoint face in layer 0,
sheet ``j + 1`` the one in layer ``j + 1``.

Reference tree upstairs
-----------------------
Lifted paths are read as words by their crossings with the arcs
``e'_j`` (``j`` in ``S``). These arcs form a tree isotopic to ``S``
relative to the vertices, so the words name the same classes as
crossings with ``S`` itself. ``reference=DOUBLE_PRIME`` reads crossings
with the ``e''_j`` instead; both choices must give the same pullbacks.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .blowup import PRIME, BlowupCover
from .curves import CurveWord, SpanningTree, free_reduce, invert, reduce
from .rotation_map import dart, face_index, face_walks
from .tischler import DomainError

BASEPOINT = None


class OverlayComplex:
    """Sheets of the tree complement and how they are glued upstairs.

    ``side_adjacency[c][side]`` is the ``(sheet, entry side)`` reached by
    leaving sheet ``c`` through the lift of polygon side ``side`` (a tree
    dart); ``side_letters[c][side]`` is the crossing word recorded on that
    lift. ``connectors[c]`` is the crossing word of a path from the
    basepoint lift in sheet 0 to the one in sheet ``c``.
    """

    def __init__(self, cover: BlowupCover, tree: SpanningTree, reference: int = PRIME):
        base = cover.base.graph
        if tree.graph is not base and tree.graph != base:
            raise DomainError("spanning tree and cover have different base graphs")
        self.cover = cover
        self.tree = tree
        self.reference = reference
        self.degree = cover.degree
        self._tree_set = set(tree.edges)
        self._gen = {e: i + 1 for i, e in enumerate(tree.edges)}

        walks = face_walks(base)
        self.num_faces = len(walks)
        self.face_of = face_index(base, walks)
        self.base_face = 0

        # co-tree: base faces glued along non-tree edges
        self._parent: dict[int, int | None] = {self.base_face: None}
        queue = deque([self.base_face])
        order = [self.base_face]
        while queue:
            k = queue.popleft()
            for x in walks[k].darts:
                if (x >> 1) in self._tree_set:
                    continue
                k2 = self.face_of[x ^ 1]
                if k2 not in self._parent:
                    self._parent[k2] = x
                    queue.append(k2)
                    order.append(k2)
        if len(order) != self.num_faces:
            raise AssertionError("tree complement is not connected")

        # sheets[c][k] = layer of the lift of face k in sheet c
        self.sheets: list[list[int]] = []
        for c in range(self.degree):
            layers = [-1] * self.num_faces
            layers[self.base_face] = c
            for k in order[1:]:
                x = self._parent[k]
                layers[k], _ = self.lift_crossing(layers[self.face_of[x]], x)
            self.sheets.append(layers)
        self._sheet_at = [{} for _ in range(self.num_faces)]
        for c, layers in enumerate(self.sheets):
            for k, layer in enumerate(layers):
                if layer in self._sheet_at[k]:
                    raise AssertionError(f"face {k} lifted twice into layer {layer}")
                self._sheet_at[k][layer] = c

        self.side_adjacency: list[dict[int, tuple[int, int]]] = []
        self.side_letters: list[dict[int, tuple[int, ...]]] = []
        for c in range(self.degree):
            adj, lets = {}, {}
            for side in tree.sides:
                layer = self.sheets[c][self.face_of[side]]
                layer2, letter = self.lift_crossing(layer, side)
                c2 = self._sheet_at[self.face_of[side ^ 1]][layer2]
                adj[side] = (c2, side ^ 1)
                lets[side] = () if letter is None else (letter,)
            self.side_adjacency.append(adj)
            self.side_letters.append(lets)

        self._transit_cache: dict[tuple[int, int | None, int | None], tuple[int, ...]] = {}
        self.connectors = self._connectors()

    # -- lifting ---------------------------------------------------------------

    def lift_crossing(self, layer: int, x: int) -> tuple[int, int | None]:
        """Lift the crossing of base edge ``x >> 1`` from the face of dart ``x``
        to the face of ``alpha(x)``, starting in ``layer``.

        Returns the new layer and the signed generator recorded if the lifted
        crossing runs along a reference arc, else ``None``.
        """
        j, s = x >> 1, x & 1
        if layer == 0:
            arc, new = self.cover.arc_at[x], j + 1
        elif layer == j + 1:
            arc, new = self.cover.arc_at[x ^ 1], 0
        else:
            return layer, None
        if j in self._tree_set and arc == self.reference:
            gen = self._gen[j]
            return new, gen if s == 0 else -gen
        return new, None

    def _route(self, k_from: int, k_to: int) -> list[int]:
        """Darts crossed along the co-tree path between two base faces."""
        def to_root(k):
            path = []
            while self._parent[k] is not None:
                x = self._parent[k]
                path.append(x)
                k = self.face_of[x]
            return path

        up = to_root(k_from)
        down = to_root(k_to)
        while up and down and up[-1] == down[-1]:
            up.pop()
            down.pop()
        return [x ^ 1 for x in up] + list(reversed(down))

    def transit_word(self, c: int, entry: int | None, exit: int | None) -> tuple[int, ...]:
        """Crossing word accrued inside sheet ``c`` between two sides.

        ``None`` stands for the basepoint lift of the sheet.
        """
        key = (c, entry, exit)
        if key not in self._transit_cache:
            k_from = self.base_face if entry is None else self.face_of[entry]
            k_to = self.base_face if exit is None else self.face_of[exit]
            layer = self.sheets[c][k_from]
            letters = []
            for x in self._route(k_from, k_to):
                layer, letter = self.lift_crossing(layer, x)
                if letter is not None:
                    letters.append(letter)
            if layer != self.sheets[c][k_to]:
                raise AssertionError("transit left its sheet")
            self._transit_cache[key] = tuple(letters)
        return self._transit_cache[key]

    def _connectors(self) -> list[tuple[int, ...]]:
        """Breadth-first paths from sheet 0, sides tried in polygon order."""
        conn: list[tuple[int, ...] | None] = [None] * self.degree
        conn[0] = ()
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for side in self.tree.sides:
                c2, entry = self.side_adjacency[c][side]
                if conn[c2] is None:
                    word = (list(conn[c]) + list(self.transit_word(c, BASEPOINT, side))
                            + list(self.side_letters[c][side]) + list(self.transit_word(c2, entry, BASEPOINT)))
                    conn[c2] = tuple(free_reduce(word))
                    queue.append(c2)
        if None in conn:
            raise AssertionError("some sheet is unreachable")
        return conn

    # -- derived data ------------------------------------------------------------

    def generator_step(self, letter: int, c: int) -> tuple[int, tuple[int, ...]]:
        """Lift of the based loop ``letter`` from the basepoint of sheet ``c``."""
        e = self.tree.edges[abs(letter) - 1]
        out = dart(e, 0) if letter > 0 else dart(e, 1)
        c2, entry = self.side_adjacency[c][out]
        word = self.transit_word(c, BASEPOINT, out) + self.side_letters[c][out] + self.transit_word(c2, entry, BASEPOINT)
        return c2, word

    def lifted_forest_pieces(self, j: int) -> int:
        """Pieces of the lifted tree inside patch ``D_j``: ``S`` minus ``e_j``."""
        base = self.cover.base.graph
        parent = list(range(base.num_vertices))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        for e in self.tree.edges:
            if e != j:
                u, v = base.edges[e]
                parent[find(u)] = find(v)
        return len({find(v) for v in range(base.num_vertices)})


def build_overlay(cover: BlowupCover, tree: SpanningTree, reference: int = PRIME) -> OverlayComplex:
    return OverlayComplex(cover, tree, reference)


def _exit_side(o: OverlayComplex, letter: int) -> int:
    e = o.tree.edges[abs(letter) - 1]
    return dart(e, 0) if letter > 0 else dart(e, 1)


def pullback(w: CurveWord, o: OverlayComplex) -> list[CurveWord]:
    """Components of the preimage of ``w``, one per cycle of its sheet
    permutation, as sorted normal forms.

    The word is walked around the sheets: between consecutive crossings the
    lifted path stays in one sheet (accruing its transit word) and each
    crossing moves it through a lifted polygon side.
    """
    letters = w.letters
    if not letters:
        return [reduce((), w.oriented) for _ in range(o.degree)]
    exits = [_exit_side(o, x) for x in letters]
    start_entry = exits[-1] ^ 1
    seen: set[int] = set()
    out = []
    for c0 in range(o.degree):
        if c0 in seen:
            continue
        c, entry = c0, start_entry
        acc: list[int] = []
        while True:
            seen.add(c)
            for side in exits:
                acc += o.transit_word(c, entry, side)
                acc += o.side_letters[c][side]
                c, entry = o.side_adjacency[c][side]
            if c == c0:
                break
        out.append(reduce(acc, w.oriented))
    return sorted(out)


# -- wreath recursion ----------------------------------------------------------------


@dataclass(frozen=True)
class WreathRecursion:
    """For each generator: sheet permutation and restriction words.

    ``perms[i][c]`` is the image of sheet ``c`` under ``x_{i+1}`` and
    ``restrictions[i][c]`` the freely reduced word of the lift starting at
    sheet ``c``, conjugated by the connectors.
    """

    degree: int
    perms: tuple[tuple[int, ...], ...]
    restrictions: tuple[tuple[tuple[int, ...], ...], ...]

    def act(self, letter: int, c: int) -> tuple[int, list[int]]:
        i = abs(letter) - 1
        if letter > 0:
            return self.perms[i][c], list(self.restrictions[i][c])
        src = self.perms[i].index(c)
        return src, invert(self.restrictions[i][src])

    def cycles(self, letters) -> list[tuple[list[int], list[int]]]:
        """Cycles of the permutation of a word with their composed restrictions."""
        seen: set[int] = set()
        out = []
        for c0 in range(self.degree):
            if c0 in seen:
                continue
            cyc = []
            c = c0
            rest: list[int] = []
            while True:
                seen.add(c)
                cyc.append(c)
                for x in letters:
                    c, r = self.act(x, c)
                    rest += r
                if c == c0:
                    break
            out.append((cyc, free_reduce(rest)))
        return out


def wreath_recursion(o: OverlayComplex) -> WreathRecursion:
    perms = []
    restrictions = []
    for i in range(o.tree.rank):
        perm, rest = [], []
        for c in range(o.degree):
            c2, word = o.generator_step(i + 1, c)
            perm.append(c2)
            rest.append(tuple(free_reduce(list(o.connectors[c]) + list(word) + invert(o.connectors[c2]))))
        perms.append(tuple(perm))
        restrictions.append(tuple(rest))
    return WreathRecursion(o.degree, tuple(perms), tuple(restrictions))


def pullback_via_recursion(w: CurveWord, rec: WreathRecursion) -> list[CurveWord]:
    if not w.letters:
        return [reduce((), w.oriented) for _ in range(rec.degree)]
    return sorted(reduce(rest, w.oriented) for _, rest in rec.cycles(w.letters))


def multiset(words: list[CurveWord]) -> Counter:
    return Counter(words)
