"""
Charge graphs and their radial (Tischler) models.

The Tischler model of a charge graph ``G`` has one C-vertex per vertex of
``G``, one R-vertex per face of ``G`` and one edge per corner of ``G``.
Its faces are quadrilaterals, one around each edge of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rotation_map import (
    RotationSystem,
    dart,
    euler_report,
    face_index,
    face_walks,
    is_connected,
)


class DomainError(ValueError):
    """Input is well formed but outside the domain of an operation."""


@dataclass(frozen=True, eq=False)
class ChargeGraph:
    graph: RotationSystem

    def __post_init__(self):
        g = self.graph
        if g.num_edges == 0:
            raise DomainError("charge graph needs at least one edge")
        if not is_connected(g):
            raise DomainError("charge graph must be connected")
        if any(deg == 0 for deg in g.degrees()):
            raise DomainError("charge graph has an isolated vertex")
        if not euler_report(g).genus_ok:
            raise DomainError("rotation system is not spherical")

    @property
    def degree(self) -> int:
        """Degree of the associated critically fixed map."""
        return self.graph.num_edges + 1


@dataclass(frozen=True, eq=False)
class TischlerModel:
    """Bipartite rotation system with explicit C/R parts.

    ``face_of_r[i]`` is the charge face behind the ``i``-th R-vertex and
    ``edge_of_face[k]`` the charge edge inside Tischler face ``k`` (face
    indices as returned by :func:`face_walks`). Both are empty when the
    model was not built from a charge graph.
    """

    graph: RotationSystem
    c_vertices: tuple[int, ...]
    r_vertices: tuple[int, ...]
    face_of_r: tuple[int, ...] = ()
    edge_of_face: tuple[int, ...] = ()


def radial_tischler(g: ChargeGraph | RotationSystem) -> TischlerModel:
    """Vertex-face incidence map of a charge graph."""
    if isinstance(g, RotationSystem):
        g = ChargeGraph(g)
    base = g.graph
    walks = face_walks(base)
    fidx = face_index(base, walks)
    nv = base.num_vertices

    vertices = list(base.vertices) + [f"R{k}" for k in range(len(walks))]
    # corner of dart x: the angle between x and sigma(x), lying in the face
    # whose walk contains sigma(x); Tischler edge x joins vertex(x) to that face
    edges = [(base.vertex_of(x), nv + fidx[base.sigma[x]]) for x in range(base.num_darts)]
    rotations = [[dart(x, 0) for x in rot] for rot in base.rotations]
    for w in walks:
        # walks run clockwise around the face, so reverse for ccw order
        rotations.append([dart(d ^ 1, 1) for d in reversed(w.darts)])
    t = RotationSystem(vertices, edges, rotations)

    # the face on the right of Tischler dart (x, 0) contains charge edge x >> 1
    edge_of_face = []
    for qw in face_walks(t):
        owners = {(d >> 1) >> 1 for d in qw.darts if d & 1 == 0}
        if len(owners) != 1:
            raise AssertionError(f"Tischler face {qw} straddles charge edges {owners}")
        edge_of_face.append(owners.pop())
    return TischlerModel(
        t,
        tuple(range(nv)),
        tuple(range(nv, nv + len(walks))),
        tuple(range(len(walks))),
        tuple(edge_of_face),
    )


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class StructureReport:
    checks: tuple[Check, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def verify_tischler_structure(t: TischlerModel) -> StructureReport:
    """Check the structural consequences for a Tischler graph.

    The implied map degree is read off the edge count via ``#E = 2d - 2``.
    """
    g = t.graph
    checks = []
    cset, rset = set(t.c_vertices), set(t.r_vertices)

    partition = cset.isdisjoint(rset) and cset | rset == set(range(g.num_vertices))
    bad = [e for e, (u, v) in enumerate(g.edges) if (u in cset) == (v in cset)]
    checks.append(Check(
        "bipartite", partition and not bad,
        "" if partition and not bad else f"parts do not cover vertices or edges {bad} stay inside a part",
    ))
    rep = euler_report(g)
    checks.append(Check("spherical", rep.genus_ok, "" if rep.genus_ok else f"V-E+F != l+1 for {rep}"))
    checks.append(Check("connected", rep.components == 1, f"{rep.components} components"))

    walks = face_walks(g)
    long_or_short = [w for w in walks if len(w) != 4]
    checks.append(Check(
        "faces-length-4", not long_or_short,
        "" if not long_or_short else f"walk {list(long_or_short[0].edge_cycle)} has length {len(long_or_short[0])}",
    ))
    lone_bigon = [w for w in walks if len(w) == 2]
    checks.append(Check(
        "no-lone-bigon", not lone_bigon,
        "" if not lone_bigon else f"face bounded only by the 2-cycle {list(lone_bigon[0].edge_cycle)}",
    ))
    checks.append(Check("2E>=4F", 2 * g.num_edges >= 4 * rep.faces, f"E={g.num_edges} F={rep.faces}"))

    if g.num_edges % 2:
        checks.append(Check("edge-count", False, f"#E={g.num_edges} is odd, not 2d-2"))
        d = None
    else:
        d = g.num_edges // 2 + 1
        checks.append(Check("edge-count", d >= 2, f"#E={g.num_edges}, d={d}"))
    if d is not None:
        checks.append(Check("vertex-count", g.num_vertices == d + 1, f"#V={g.num_vertices}, d+1={d + 1}"))
        checks.append(Check("face-count", rep.faces == d - 1, f"#F={rep.faces}, d-1={d - 1}"))

    two_c = []
    for w in walks:
        cs = {g.vertex_of(x) for x in w.darts} & cset
        if len(cs) != 2:
            two_c.append(w)
    checks.append(Check(
        "two-critical-per-face", not two_c,
        "" if not two_c else f"walk {list(two_c[0].edge_cycle)} meets {len({g.vertex_of(x) for x in two_c[0].darts} & cset)} C-vertices",
    ))
    return StructureReport(tuple(checks))


def charge_from_tischler(t: TischlerModel) -> ChargeGraph:
    """One charge edge per Tischler face, joining its two C-vertices.

    The charge rotation at ``c`` lists, counterclockwise, the faces met in
    the angles between consecutive Tischler edges at ``c``.
    """
    g = t.graph
    cset = set(t.c_vertices)
    walks = face_walks(g)
    fidx = face_index(g, walks)
    c_index = {c: i for i, c in enumerate(t.c_vertices)}

    edges = []
    for w in walks:
        cs = []
        for x in w.darts:
            v = g.vertex_of(x)
            if v in cset and v not in cs:
                cs.append(v)
        if len(cs) != 2:
            raise DomainError(f"Tischler face {list(w.edge_cycle)} has {len(cs)} distinct C-vertices")
        edges.append((c_index[cs[0]], c_index[cs[1]]))

    rotations = []
    for c in t.c_vertices:
        rot = []
        for x in g.rotations[c]:
            k = fidx[g.sigma[x]]
            rot.append(dart(k, 0 if edges[k][0] == c_index[c] else 1))
        rotations.append(rot)
    graph = RotationSystem([g.vertices[c] for c in t.c_vertices], edges, rotations)
    return ChargeGraph(graph)
