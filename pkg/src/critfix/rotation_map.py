"""
Planar embedded graphs as rotation systems.

A graph with edges ``0 .. n-1`` has ``2n`` darts (edge-ends). Dart
``2*e + s`` is end ``s`` of edge ``e``; it sits at vertex ``edges[e][s]``.

Three permutations act on darts:

* ``alpha`` -- the edge involution ``d -> d ^ 1``;
* ``sigma`` -- the counterclockwise successor of ``d`` around its vertex;
* ``phi = sigma o alpha`` -- the face permutation.

With this convention a face walk traverses each dart from its own vertex
to the opposite vertex with the face on its right, i.e. faces are walked
clockwise.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence


class StructureError(ValueError):
    """Malformed rotation system.

    ``code`` is one of ``"loop-edge"``, ``"unknown-vertex"``,
    ``"missing-dart"``, ``"duplicated-dart"``, ``"misplaced-dart"``,
    ``"bad-dart"``.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


def dart(edge: int, end: int) -> int:
    return 2 * edge + end


def dart_pair(d: int) -> tuple[int, int]:
    return d >> 1, d & 1


@dataclass(frozen=True, eq=False)
class FaceWalk:
    """One orbit of the face permutation, started at its smallest dart."""

    darts: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.darts)

    @property
    def edge_cycle(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.darts)

    def __repr__(self) -> str:
        return f"FaceWalk({list(self.darts)})"


@dataclass(frozen=True, eq=False)
class RotationSystem:
    vertices: tuple[Hashable, ...]
    edges: tuple[tuple[int, int], ...]
    rotations: tuple[tuple[int, ...], ...]
    sigma: tuple[int, ...] = field(init=False, repr=False)

    def __init__(
        self,
        vertices: Iterable[Hashable],
        edges: Iterable[Sequence[int]],
        rotations: Iterable[Iterable],
    ):
        vertices = tuple(vertices)
        edges = tuple((int(u), int(v)) for u, v in edges)
        rots = []
        for rot in rotations:
            rots.append(tuple(_as_dart(x) for x in rot))
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "rotations", tuple(rots))
        object.__setattr__(self, "sigma", self._check())

    def _check(self) -> tuple[int, ...]:
        nv = len(self.vertices)
        ne = len(self.edges)
        if len(self.rotations) != nv:
            raise StructureError(
                "bad-dart", f"{len(self.rotations)} rotations for {nv} vertices"
            )
        for e, (u, v) in enumerate(self.edges):
            for w in (u, v):
                if not 0 <= w < nv:
                    raise StructureError(
                        "unknown-vertex", f"edge {e} references unknown vertex {w}"
                    )
            if u == v:
                raise StructureError("loop-edge", f"edge {e} is a loop at vertex {u}")
        sigma = [-1] * (2 * ne)
        seen = {}
        for v, rot in enumerate(self.rotations):
            for i, d in enumerate(rot):
                if not 0 <= d < 2 * ne:
                    raise StructureError("bad-dart", f"vertex {v}: dart {dart_pair(d)} out of range")
                if d in seen:
                    raise StructureError(
                        "duplicated-dart", f"dart {list(dart_pair(d))} listed twice"
                    )
                seen[d] = v
                e, s = dart_pair(d)
                if self.edges[e][s] != v:
                    raise StructureError(
                        "misplaced-dart",
                        f"dart {list(dart_pair(d))} listed at vertex {v}, "
                        f"but end {s} of edge {e} is vertex {self.edges[e][s]}",
                    )
                sigma[d] = rot[(i + 1) % len(rot)]
        for d in range(2 * ne):
            if sigma[d] < 0:
                raise StructureError("missing-dart", f"dart {list(dart_pair(d))} missing from rotations")
        return tuple(sigma)

    # -- basic accessors -------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def num_darts(self) -> int:
        return 2 * len(self.edges)

    def vertex_of(self, d: int) -> int:
        e, s = dart_pair(d)
        return self.edges[e][s]

    def degree(self, v: int) -> int:
        return len(self.rotations[v])

    def degrees(self) -> list[int]:
        return [len(r) for r in self.rotations]

    def phi(self, d: int) -> int:
        return self.sigma[d ^ 1]

    def sigma_inverse(self) -> list[int]:
        inv = [0] * len(self.sigma)
        for d, t in enumerate(self.sigma):
            inv[t] = d
        return inv

    def mirror(self) -> "RotationSystem":
        """Same graph with every rotation reversed (orientation flipped)."""
        return RotationSystem(self.vertices, self.edges, [tuple(reversed(r)) for r in self.rotations])

    def relabel(self, vertex_perm: Sequence[int], edge_perm: Sequence[int], flips: Sequence[bool] = ()) -> "RotationSystem":
        """Relabel vertices and edges; ``flips[e]`` swaps the two ends of edge ``e``.

        Vertex ``v`` becomes ``vertex_perm[v]`` and edge ``e`` becomes
        ``edge_perm[e]``. Rotations are also cyclically shifted so the result
        differs from the input as much as possible while being isomorphic.
        """
        flips = list(flips) or [False] * self.num_edges
        nv, ne = self.num_vertices, self.num_edges
        vertices = [None] * nv
        for v, lab in enumerate(self.vertices):
            vertices[vertex_perm[v]] = lab
        edges = [None] * ne
        for e, (u, w) in enumerate(self.edges):
            pair = (vertex_perm[u], vertex_perm[w])
            edges[edge_perm[e]] = pair[::-1] if flips[e] else pair

        def image(d: int) -> int:
            e, s = dart_pair(d)
            return dart(edge_perm[e], s ^ int(flips[e]))

        rotations = [None] * nv
        for v, rot in enumerate(self.rotations):
            rot = [image(d) for d in rot]
            k = v % len(rot) if rot else 0
            rotations[vertex_perm[v]] = rot[k:] + rot[:k]
        return RotationSystem(vertices, edges, rotations)

    def to_pairs(self) -> list[list[list[int]]]:
        return [[list(dart_pair(d)) for d in rot] for rot in self.rotations]

    def __eq__(self, other) -> bool:
        if not isinstance(other, RotationSystem):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and self.edges == other.edges
            and self.rotations == other.rotations
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges, self.rotations))

    def __repr__(self) -> str:
        return (
            f"RotationSystem(vertices={list(self.vertices)}, edges={[list(e) for e in self.edges]}, "
            f"rotations={self.to_pairs()})"
        )


def _as_dart(x) -> int:
    if isinstance(x, int):
        return x
    e, s = x
    e, s = int(e), int(s)
    if s not in (0, 1) or e < 0:
        raise StructureError("bad-dart", f"invalid dart {[e, s]}")
    return dart(e, s)


# -- faces and Euler characteristic -------------------------------------------


def face_walks(g: RotationSystem) -> list[FaceWalk]:
    """Orbits of ``phi = sigma o alpha``, each started at its smallest dart,
    listed by increasing starting dart."""
    seen = [False] * g.num_darts
    walks = []
    for d0 in range(g.num_darts):
        if seen[d0]:
            continue
        walk = []
        d = d0
        while not seen[d]:
            seen[d] = True
            walk.append(d)
            d = g.sigma[d ^ 1]
        walks.append(FaceWalk(tuple(walk)))
    return walks


def face_index(g: RotationSystem, walks: list[FaceWalk] | None = None) -> list[int]:
    """Map each dart to the index of the face walk containing it."""
    walks = face_walks(g) if walks is None else walks
    index = [0] * g.num_darts
    for i, w in enumerate(walks):
        for d in w.darts:
            index[d] = i
    return index


def components(g: RotationSystem) -> list[list[int]]:
    """Vertex sets of the connected components, ordered by smallest vertex."""
    parent = list(range(g.num_vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in g.edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[max(ru, rv)] = min(ru, rv)
    groups: dict[int, list[int]] = {}
    for v in range(g.num_vertices):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


def is_connected(g: RotationSystem) -> bool:
    return len(components(g)) <= 1


@dataclass(frozen=True)
class EulerReport:
    components: int
    vertices: int
    edges: int
    faces: int
    genus_ok: bool

    def as_tuple(self) -> tuple[int, int, int, int, bool]:
        return (self.components, self.vertices, self.edges, self.faces, self.genus_ok)


def euler_report(g: RotationSystem) -> EulerReport:
    """Component count, V, E, F on the sphere, and whether V - E + F = l + 1.

    Face walks of different components bound a common face on the sphere, so
    ``F = #walks - l + 1``; an isolated vertex counts as a component with a
    single face. ``genus_ok`` requires every component to be spherical.
    """
    comps = components(g)
    vertex_comp = {}
    for i, comp in enumerate(comps):
        for v in comp:
            vertex_comp[v] = i
    per_comp = [0] * len(comps)
    for w in face_walks(g):
        per_comp[vertex_comp[g.vertex_of(w.darts[0])]] += 1
    ok = True
    for i, comp in enumerate(comps):
        ne = sum(1 for u, _ in g.edges if vertex_comp[u] == i)
        nf = per_comp[i] if ne else 1
        per_comp[i] = nf
        if len(comp) - ne + nf != 2:
            ok = False
    ell = len(comps)
    faces = sum(per_comp) - ell + 1 if ell else 1
    return EulerReport(ell, g.num_vertices, g.num_edges, faces, ok)


def is_spherical(g: RotationSystem) -> bool:
    return euler_report(g).genus_ok


def is_bipartite(g: RotationSystem) -> tuple[list[int], list[int]] | None:
    """Two-colouring with the smallest vertex of each component in the first part."""
    colour = [-1] * g.num_vertices
    adj: list[list[int]] = [[] for _ in range(g.num_vertices)]
    for u, v in g.edges:
        adj[u].append(v)
        adj[v].append(u)
    for start in range(g.num_vertices):
        if colour[start] >= 0:
            continue
        colour[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return (
        [v for v in range(g.num_vertices) if colour[v] == 0],
        [v for v in range(g.num_vertices) if colour[v] == 1],
    )


# -- canonical form and isomorphism ------------------------------------------


def _trace_code(sigma: Sequence[int], start: int, best: list[int] | None) -> list[int] | None:
    """BFS relabelling of the darts reachable from ``start``.

    Darts get labels in order of discovery; exploring a dart visits
    ``alpha(d)`` then ``sigma(d)``. The code lists, in label order, the labels
    of ``alpha`` and ``sigma`` images. Returns ``None`` as soon as the partial
    code exceeds ``best``.
    """
    label = {start: 0}
    order = [start]
    code: list[int] = []
    i = 0
    pos = 0
    while i < len(order):
        d = order[i]
        for t in (d ^ 1, sigma[d]):
            if t not in label:
                label[t] = len(order)
                order.append(t)
            code.append(label[t])
            if best is not None:
                b = best[pos]
                if code[pos] > b:
                    return None
                if code[pos] < b:
                    best = None
            pos += 1
        i += 1
    return code


def _component_codes(g: RotationSystem) -> list[tuple[int, ...]]:
    comps = components(g)
    codes = []
    for comp in comps:
        members = set(comp)
        darts = [d for d in range(g.num_darts) if g.vertex_of(d) in members]
        if not darts:
            codes.append(())
            continue
        best = None
        for d0 in darts:
            c = _trace_code(g.sigma, d0, best)
            if c is not None and (best is None or c < best):
                best = c
        codes.append(tuple(best))
    return sorted(codes)


def canonical_form(g: RotationSystem) -> bytes:
    """Canonical code of ``g`` up to orientation-preserving isomorphism.

    Per component: the lexicographically least BFS dart trace over all
    starting darts. Components are sorted and joined with ``|``; an isolated
    vertex contributes an empty code.
    """
    parts = []
    for code in _component_codes(g):
        parts.append(".".join(format(x, "x") for x in code))
    return "|".join(parts).encode("ascii")


def are_isomorphic(g1: RotationSystem, g2: RotationSystem, reflect: bool = False) -> bool:
    """Decide orientation-preserving isomorphism by dart-map propagation.

    Independent of :func:`canonical_form`: for connected graphs the map is
    fixed by the image of one dart, so each candidate image is propagated
    along ``alpha`` and ``sigma`` and checked. Disconnected graphs are
    matched component by component. With ``reflect=True`` an
    orientation-reversing match is also accepted.
    """
    if reflect and are_isomorphic(g1, g2.mirror()):
        return True
    if (g1.num_vertices, g1.num_edges) != (g2.num_vertices, g2.num_edges):
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    c1 = [_subsystem(g1, c) for c in components(g1)]
    c2 = [_subsystem(g2, c) for c in components(g2)]
    if len(c1) != len(c2):
        return False
    used = [False] * len(c2)
    for a in c1:
        for j, b in enumerate(c2):
            if not used[j] and _connected_isomorphic(a, b):
                used[j] = True
                break
        else:
            return False
    return True


def _subsystem(g: RotationSystem, comp: list[int]) -> RotationSystem:
    vmap = {v: i for i, v in enumerate(comp)}
    eids = [e for e, (u, _) in enumerate(g.edges) if u in vmap]
    emap = {e: i for i, e in enumerate(eids)}
    edges = [(vmap[g.edges[e][0]], vmap[g.edges[e][1]]) for e in eids]
    rots = [[dart(emap[d >> 1], d & 1) for d in g.rotations[v]] for v in comp]
    return RotationSystem([g.vertices[v] for v in comp], edges, rots)


def _connected_isomorphic(a: RotationSystem, b: RotationSystem) -> bool:
    if (a.num_vertices, a.num_edges) != (b.num_vertices, b.num_edges):
        return False
    n = a.num_darts
    if n == 0:
        return True
    for target in range(n):
        image = [-1] * n
        image[0] = target
        stack = [0]
        ok = True
        while stack and ok:
            d = stack.pop()
            for src, dst in ((d ^ 1, image[d] ^ 1), (a.sigma[d], b.sigma[image[d]])):
                if image[src] < 0:
                    image[src] = dst
                    stack.append(src)
                elif image[src] != dst:
                    ok = False
                    break
        if ok and len(set(image)) == n:
            return True
    return False


def brute_force_isomorphic(g1: RotationSystem, g2: RotationSystem) -> bool:
    """Exhaustive search over all dart bijections commuting with ``alpha``.

    Exponential; intended as a test oracle for small graphs only.
    """
    if (g1.num_vertices, g1.num_edges) != (g2.num_vertices, g2.num_edges):
        return False
    ne = g1.num_edges
    s1, s2 = g1.sigma, g2.sigma
    for perm in itertools.permutations(range(ne)):
        for flips in itertools.product((0, 1), repeat=ne):
            image = [dart(perm[d >> 1], (d & 1) ^ flips[d >> 1]) for d in range(2 * ne)]
            if all(image[s1[d]] == s2[image[d]] for d in range(2 * ne)):
                return True
    return False


# -- small constructors ---------------------------------------------------------


def single_edge() -> RotationSystem:
    return RotationSystem(["a", "b"], [(0, 1)], [[(0, 0)], [(0, 1)]])


def path_graph(n_edges: int) -> RotationSystem:
    vertices = [f"p{i}" for i in range(n_edges + 1)]
    edges = [(i, i + 1) for i in range(n_edges)]
    rotations = []
    for v in range(n_edges + 1):
        rot = []
        if v > 0:
            rot.append((v - 1, 1))
        if v < n_edges:
            rot.append((v, 0))
        rotations.append(rot)
    return RotationSystem(vertices, edges, rotations)


def multi_edge(k: int) -> RotationSystem:
    """Two vertices joined by ``k`` parallel edges."""
    return RotationSystem(
        ["a", "b"],
        [(0, 1)] * k,
        [[(e, 0) for e in range(k)], [(e, 1) for e in reversed(range(k))]],
    )


def cycle_graph(n: int) -> RotationSystem:
    vertices = [f"c{i}" for i in range(n)]
    edges = [(i, (i + 1) % n) for i in range(n)]
    rotations = [[(i, 0), ((i - 1) % n, 1)] for i in range(n)]
    return RotationSystem(vertices, edges, rotations)


def star_graph(k: int) -> RotationSystem:
    vertices = ["hub"] + [f"leaf{i}" for i in range(k)]
    edges = [(0, i + 1) for i in range(k)]
    rotations = [[(e, 0) for e in range(k)]] + [[(e, 1)] for e in range(k)]
    return RotationSystem(vertices, edges, rotations)


def fig1_graph() -> RotationSystem:
    """The four-vertex, four-edge example graph.

    ``e1`` and ``e2`` are pendant edges hanging into the same face from
    ``v_-1`` and ``v_1``; ``e3`` and ``e4`` are parallel edges between
    ``v_-1`` and ``v_1``. Edge ``e_k`` has index ``k - 1``; ``e2`` runs from
    ``v_1`` to ``v_c``.
    """
    return RotationSystem(
        ["v_-1", "v_-c", "v_c", "v_1"],
        [(0, 1), (3, 2), (0, 3), (0, 3)],
        [
            [(3, 0), (0, 0), (2, 0)],
            [(0, 1)],
            [(1, 1)],
            [(2, 1), (1, 0), (3, 1)],
        ],
    )
