"""
Blow-up of a charge graph: every edge ``e_j`` is replaced by a bigon patch
``D_j`` bounded by two parallel arcs ``e'_j`` and ``e''_j``.

In the blown graph arc ``e'_j`` has index ``2j`` and ``e''_j`` index
``2j + 1``; both keep the endpoint order of ``e_j``. At the endpoint of
``e_j`` with the smaller vertex index ``e'_j`` comes first counterclockwise,
at the other endpoint ``e''_j`` does. This makes the face between them a
bigon.

The branched cover is recorded cell by cell: vertices are fixed, both arcs
of a patch map onto their base edge, every non-patch face maps onto a base
face, and the interior of each patch maps onto the sphere minus its edge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rotation_map import RotationSystem, dart, face_index, face_walks
from .tischler import ChargeGraph

PRIME, DOUBLE_PRIME = 0, 1


@dataclass(frozen=True, eq=False)
class BlowupCover:
    base: ChargeGraph
    blown: RotationSystem
    patches: tuple[int, ...]
    face_map: dict[int, int]
    arc_at: tuple[int, ...]

    @property
    def degree(self) -> int:
        return self.base.graph.num_edges + 1

    def local_degree(self, v: int) -> int:
        g = self.base.graph
        if not 0 <= v < g.num_vertices:
            raise KeyError(f"unknown vertex {v}")
        return g.degree(v) + 1

    def local_degrees(self) -> list[int]:
        return [self.local_degree(v) for v in range(self.base.graph.num_vertices)]


def blow_up(g: ChargeGraph | RotationSystem) -> BlowupCover:
    """Blow up every edge of ``g``.

    ``patches[j]`` is the blown-graph face index of bigon ``D_j``;
    ``face_map`` sends each remaining blown face to its base face;
    ``arc_at[x]`` says which arc (``PRIME`` or ``DOUBLE_PRIME``) runs along
    base dart ``x`` on the boundary of the non-patch face lying over the
    base face of ``x``.
    """
    if isinstance(g, RotationSystem):
        g = ChargeGraph(g)
    base = g.graph
    edges = []
    for u, v in base.edges:
        edges += [(u, v), (u, v)]

    rotations = []
    for v, rot in enumerate(base.rotations):
        new = []
        for x in rot:
            j, s = x >> 1, x & 1
            u, w = base.edges[j]
            prime_first = v == min(u, w)
            pair = [dart(2 * j, s), dart(2 * j + 1, s)]
            new += pair if prime_first else pair[::-1]
        rotations.append(new)
    blown = RotationSystem(base.vertices, edges, rotations)

    walks = face_walks(blown)
    fidx = face_index(blown, walks)
    base_fidx = face_index(base)
    # with e'_j first at end p, the bigon contains the darts (e'_j, 1-p), (e''_j, p)
    patches = []
    for j, (u, w) in enumerate(base.edges):
        p = 0 if u < w else 1
        patches.append(fidx[dart(2 * j, 1 - p)])
    patch_set = set(patches)
    face_map = {}
    arc_at = [-1] * base.num_darts
    for k, w in enumerate(walks):
        if k in patch_set:
            if len(w) != 2:
                raise AssertionError(f"patch face {k} has length {len(w)}")
            continue
        images = set()
        for d in w.darts:
            arc, s = d >> 1, d & 1
            x = dart(arc >> 1, s)
            arc_at[x] = arc & 1
            images.add(base_fidx[x])
        if len(images) != 1:
            raise AssertionError(f"blown face {k} projects onto several base faces {images}")
        face_map[k] = images.pop()
    if len(patch_set) != base.num_edges or -1 in arc_at:
        raise AssertionError("inconsistent blow-up")
    return BlowupCover(g, blown, tuple(patches), face_map, tuple(arc_at))


def cover_degree(c: BlowupCover) -> int:
    return c.degree


def local_degree(c: BlowupCover, v: int) -> int:
    return c.local_degree(v)
