"""
Enumeration of charge graphs (connected loopless planar maps) by edge
count, and a per-class census.

Generation grows maps one edge at a time from the single edge: a pendant
edge into any corner, or a new edge between two corners of one face at
distinct vertices. Every connected map with ``N + 1`` edges has a leaf or
an edge on a cycle, and deleting it leaves a connected map with ``N``
edges, so these two moves reach every class. Duplicates are pruned by
canonical code after each level.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .attractor import attractor_set
from .blowup import blow_up
from .curves import greedy_tree
from .rotation_map import (
    RotationSystem,
    StructureError,
    are_isomorphic,
    canonical_form,
    dart,
    euler_report,
    face_walks,
    face_index,
    is_connected,
    single_edge,
)
from .tischler import ChargeGraph, DomainError, radial_tischler, verify_tischler_structure

MAX_EDGES = 7


def _insert_after(rot: tuple[int, ...], after: int, new: int) -> list[int]:
    i = rot.index(after)
    return list(rot[: i + 1]) + [new] + list(rot[i + 1:])


def add_pendant(g: RotationSystem, corner: int) -> RotationSystem:
    """New leaf in the corner between dart ``corner`` and its successor."""
    v = g.vertex_of(corner)
    n, nv = g.num_edges, g.num_vertices
    rots = [list(r) for r in g.rotations]
    rots[v] = _insert_after(g.rotations[v], corner, dart(n, 0))
    rots.append([dart(n, 1)])
    return RotationSystem(list(g.vertices) + [f"v{nv}"], list(g.edges) + [(v, nv)], rots)


def add_chord(g: RotationSystem, c1: int, c2: int) -> RotationSystem:
    """New edge through one face from corner ``c1`` to corner ``c2``."""
    u, w = g.vertex_of(c1), g.vertex_of(c2)
    n = g.num_edges
    rots = [list(r) for r in g.rotations]
    rots[u] = _insert_after(g.rotations[u], c1, dart(n, 0))
    rots[w] = _insert_after(g.rotations[w], c2, dart(n, 1))
    return RotationSystem(g.vertices, list(g.edges) + [(u, w)], rots)


def children(g: RotationSystem):
    fidx = face_index(g)
    corners = list(range(g.num_darts))
    for c in corners:
        yield add_pendant(g, c)
    for c1, c2 in itertools.permutations(corners, 2):
        # corner of c lies in the face containing sigma(c)
        if g.vertex_of(c1) != g.vertex_of(c2) and fidx[g.sigma[c1]] == fidx[g.sigma[c2]]:
            yield add_chord(g, c1, c2)


def from_code(code: bytes) -> RotationSystem:
    """Rebuild the representative of a connected class from its canonical code.

    Darts are numbered by code label; edges and vertices are numbered by
    their smallest dart label.
    """
    vals = [int(x, 16) for x in code.decode("ascii").split(".")]
    n = len(vals) // 2
    alpha = vals[0::2]
    sigma = vals[1::2]
    edge_of, edges_darts = {}, []
    for d in range(n):
        if d not in edge_of:
            edge_of[d] = edge_of[alpha[d]] = len(edges_darts)
            edges_darts.append((d, alpha[d]))
    vertex_of, cycles = {}, []
    for d in range(n):
        if d not in vertex_of:
            cyc, x = [], d
            while x not in vertex_of:
                vertex_of[x] = len(cycles)
                cyc.append(x)
                x = sigma[x]
            cycles.append(cyc)

    def relabel(d):
        e = edge_of[d]
        return dart(e, 0 if edges_darts[e][0] == d else 1)

    edges = [(vertex_of[a], vertex_of[b]) for a, b in edges_darts]
    rotations = [[relabel(d) for d in cyc] for cyc in cycles]
    return RotationSystem([f"v{i}" for i in range(len(cycles))], edges, rotations)


def enumerate_charge_graphs(n: int, max_edges: int = MAX_EDGES) -> list[bytes]:
    """Sorted canonical codes of all charge graphs with ``n`` edges."""
    return sorted(enumerate_levels(n, max_edges)[n])


def enumerate_levels(n: int, max_edges: int = MAX_EDGES) -> dict[int, dict[bytes, RotationSystem]]:
    """Classes for every edge count up to ``n``, keyed by canonical code."""
    if not 1 <= n <= max_edges:
        raise DomainError(f"edge count {n} outside 1..{max_edges}")
    g = single_edge()
    levels = {1: {canonical_form(g): from_code(canonical_form(g))}}
    for k in range(1, n):
        nxt = {}
        for code in sorted(levels[k]):
            for h in children(levels[k][code]):
                c = canonical_form(h)
                if c not in nxt:
                    nxt[c] = from_code(c)
        levels[k + 1] = nxt
    return levels


def graph_of(code: bytes) -> RotationSystem:
    return from_code(code)


@dataclass(frozen=True)
class CensusRow:
    edges: int
    code: bytes
    vertices: int
    faces: int
    local_degrees: tuple[int, ...]
    tischler: tuple[int, int, int]
    r_degrees: tuple[int, ...]
    tischler_ok: bool
    attractor_size: int
    chiral: bool

    @property
    def map_degree(self) -> int:
        return self.edges + 1


def census_row(code: bytes, g: RotationSystem | None = None) -> CensusRow:
    g = g or from_code(code)
    cg = ChargeGraph(g)
    t = radial_tischler(cg)
    tg = t.graph
    cover = blow_up(cg)
    tree = greedy_tree(g)
    return CensusRow(
        edges=g.num_edges,
        code=code,
        vertices=g.num_vertices,
        faces=len(face_walks(g)),
        local_degrees=tuple(sorted(cover.local_degrees(), reverse=True)),
        tischler=(tg.num_vertices, tg.num_edges, len(face_walks(tg))),
        r_degrees=tuple(sorted((tg.degree(r) for r in t.r_vertices), reverse=True)),
        tischler_ok=verify_tischler_structure(t).ok,
        attractor_size=len(attractor_set(tree)),
        chiral=canonical_form(g.mirror()) != code,
    )


def census(n_max: int, max_edges: int = MAX_EDGES) -> dict[int, list[CensusRow]]:
    levels = enumerate_levels(n_max, max_edges)
    return {n: [census_row(c, levels[n][c]) for c in sorted(levels[n])] for n in range(1, n_max + 1)}


# -- independent oracle ---------------------------------------------------------


def brute_force_classes(n: int, iso=are_isomorphic) -> list[RotationSystem]:
    """All charge graphs with ``n`` edges by direct search, one per class.

    Tries every loopless connected edge list on up to ``n + 1`` vertices
    and every rotation at every vertex, keeps the spherical ones and groups
    them with ``iso``. Exponential; for small ``n`` only.
    """
    reps: list[RotationSystem] = []
    for nv in range(2, n + 2):
        pairs = list(itertools.combinations(range(nv), 2))
        for edges in itertools.combinations_with_replacement(pairs, n):
            used = {v for e in edges for v in e}
            if len(used) != nv:
                continue
            # vertex v lists its darts; fix the first, permute the rest
            darts_at = [[dart(e, s) for e, uv in enumerate(edges) for s in (0, 1) if uv[s] == v] for v in range(nv)]
            choices = [[[ds[0]] + list(p) for p in itertools.permutations(ds[1:])] for ds in darts_at]
            for rots in itertools.product(*choices):
                try:
                    g = RotationSystem(range(nv), edges, rots)
                except StructureError:
                    continue
                if not is_connected(g) or not euler_report(g).genus_ok:
                    continue
                if not any(iso(g, r) for r in reps):
                    reps.append(g)
    return reps
