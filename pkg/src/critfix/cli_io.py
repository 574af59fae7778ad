"""
Graph files, DOT export and the ``critfix`` command line.

Graph files are JSON documents with the keys ``vertices`` (names),
``edges`` (pairs of vertex indices or names) and ``rotations`` (one list of
``[edge, end]`` darts per vertex, counterclockwise). Optional keys
``parts``, ``provenance`` and ``patches`` are carried through untouched.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .attractor import iterate_to_attractor, transition_graph
from .blowup import blow_up
from .classify import MAX_EDGES, census, enumerate_charge_graphs
from .curves import (
    CurveError,
    SpanningTree,
    complexity,
    edge_counts,
    format_word,
    greedy_tree,
    reduce,
    simplicity,
)
from .pullback import build_overlay, pullback, wreath_recursion
from .rotation_map import RotationSystem, StructureError, euler_report, face_walks
from .tischler import ChargeGraph, DomainError, radial_tischler, verify_tischler_structure

KEYS = ("vertices", "edges", "rotations")
OPTIONAL_KEYS = ("parts", "provenance", "patches")


class GraphFileError(StructureError):
    """Malformed graph file; ``code`` is one of the structure codes or
    ``syntax`` / ``schema``."""


# -- reading and writing --------------------------------------------------------


def _line_of(text: str, key: str) -> int:
    for i, line in enumerate(text.splitlines(), 1):
        if f'"{key}"' in line:
            return i
    return 1


def parse_graph_text(text: str, source: str = "<string>") -> tuple[RotationSystem, dict]:
    """Parse a graph document; returns the graph and its optional keys."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFileError("syntax", f"{source}:{exc.lineno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise GraphFileError("schema", f"{source}:1: top level must be an object")
    for key in KEYS:
        if key not in doc:
            raise GraphFileError("schema", f"{source}:1: missing key {key!r}")
    unknown = set(doc) - set(KEYS) - set(OPTIONAL_KEYS)
    if unknown:
        key = sorted(unknown)[0]
        raise GraphFileError("schema", f"{source}:{_line_of(text, key)}: unknown key {key!r}")

    names = doc["vertices"]
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise GraphFileError("schema", f"{source}:{_line_of(text, 'vertices')}: vertices must be a list of strings")
    if len(set(names)) != len(names):
        raise GraphFileError("schema", f"{source}:{_line_of(text, 'vertices')}: duplicate vertex name")
    index = {v: i for i, v in enumerate(names)}

    def vertex(ref, where):
        if isinstance(ref, bool):
            ref = None
        if isinstance(ref, int) and 0 <= ref < len(names):
            return ref
        if isinstance(ref, str) and ref in index:
            return index[ref]
        raise GraphFileError("unknown-vertex", f"{source}:{_line_of(text, 'edges')}: {where}: unknown vertex {ref!r}")

    edges = []
    if not isinstance(doc["edges"], list):
        raise GraphFileError("schema", f"{source}:{_line_of(text, 'edges')}: edges must be a list")
    for e, pair in enumerate(doc["edges"]):
        if not isinstance(pair, list) or len(pair) != 2:
            raise GraphFileError("schema", f"{source}:{_line_of(text, 'edges')}: edges[{e}] must have two ends")
        edges.append((vertex(pair[0], f"edges[{e}][0]"), vertex(pair[1], f"edges[{e}][1]")))

    rots = doc["rotations"]
    line = _line_of(text, "rotations")
    if not isinstance(rots, list) or len(rots) != len(names):
        raise GraphFileError("schema", f"{source}:{line}: rotations must list one rotation per vertex")
    for v, rot in enumerate(rots):
        if not isinstance(rot, list):
            raise GraphFileError("schema", f"{source}:{line}: rotations[{v}] must be a list")
        for i, d in enumerate(rot):
            if not (isinstance(d, list) and len(d) == 2 and all(type(x) is int for x in d)):
                raise GraphFileError("schema", f"{source}:{line}: rotations[{v}][{i}] must be [edge, end]")
            if not 0 <= d[0] < len(edges) or d[1] not in (0, 1):
                raise GraphFileError("bad-dart", f"{source}:{line}: rotations[{v}][{i}] = {d} is not a dart")
    try:
        g = RotationSystem(names, edges, rots)
    except StructureError as exc:
        where = "edges" if exc.code in ("loop-edge", "unknown-vertex") else "rotations"
        raise GraphFileError(exc.code, f"{source}:{_line_of(text, where)}: {exc}") from None
    extras = {k: doc[k] for k in OPTIONAL_KEYS if k in doc}
    return g, extras


def parse_graph_file(path) -> RotationSystem:
    return load_graph_file(path)[0]


def load_graph_file(path) -> tuple[RotationSystem, dict]:
    p = Path(path)
    return parse_graph_text(p.read_text(encoding="utf-8"), str(p))


def emit_graph(g: RotationSystem, extras: dict | None = None) -> str:
    """Normal-form text: fixed key order, one key per line."""
    doc = {
        "vertices": [str(v) for v in g.vertices],
        "edges": [list(e) for e in g.edges],
        "rotations": g.to_pairs(),
    }
    for k in OPTIONAL_KEYS:
        if extras and k in extras:
            doc[k] = extras[k]
    lines = [f"  {json.dumps(k)}: {json.dumps(v, ensure_ascii=False)}" for k, v in doc.items()]
    return "{\n" + ",\n".join(lines) + "\n}\n"


def write_graph_file(path, g: RotationSystem, extras: dict | None = None) -> None:
    Path(path).write_text(emit_graph(g, extras), encoding="utf-8")


def shipped_graph(name: str = "fig1") -> Path:
    return Path(__file__).parent / "data" / f"{name}.graph"


# -- DOT ------------------------------------------------------------------------


def _q(s) -> str:
    return json.dumps(str(s))


def graph_to_dot(g: RotationSystem, name: str = "G", parts: dict | None = None) -> str:
    out = [f"graph {_q(name)} {{"]
    shapes = {}
    if parts:
        for v in parts.get("r", []):
            shapes[v] = "box"
    for v, label in enumerate(g.vertices):
        shape = shapes.get(v, "circle")
        out.append(f"  n{v} [label={_q(label)}, shape={shape}];")
    for e, (u, v) in enumerate(g.edges):
        out.append(f"  n{u} -- n{v} [label={_q(f'e{e + 1}')}];")
    out.append("}")
    return "\n".join(out) + "\n"


def attractor_to_dot(ag, name: str = "attractor") -> str:
    ids = {w: i for i, w in enumerate(ag.nodes)}
    out = [f"digraph {_q(name)} {{"]
    for w in ag.nodes:
        shape = "ellipse" if ag.verdicts[w].value == "simple" else "box"
        out.append(f"  w{ids[w]} [label={_q(w)}, shape={shape}];")
    for src, dst, m in ag.arc_list():
        out.append(f"  w{ids[src]} -> w{ids[dst]} [label={_q(m)}];")
    out.append("}")
    return "\n".join(out) + "\n"


# -- commands ---------------------------------------------------------------------


def _tree(g: RotationSystem, tree_ids: str | None) -> SpanningTree:
    if not tree_ids:
        return greedy_tree(g)
    try:
        ids = [int(x) for x in tree_ids.split(",") if x.strip()]
    except ValueError:
        raise CurveError(f"bad tree list {tree_ids!r}") from None
    if any(i < 1 for i in ids):
        raise CurveError("tree edge ids are 1-based")
    return SpanningTree(g, [i - 1 for i in ids])


def _machine(records) -> list[str]:
    return [f"{k}={v}" for k, v in records]


def _edge_cycle(w) -> str:
    return " ".join(f"e{(d >> 1) + 1}{'+' if d & 1 == 0 else '-'}" for d in w.darts)


def cmd_validate(args, g, extras):
    rep = euler_report(g)
    recs = [("vertices", rep.vertices), ("edges", rep.edges), ("faces", rep.faces),
            ("components", rep.components), ("spherical", int(rep.genus_ok))]
    if args.format == "machine":
        return _machine(recs)
    if args.format == "dot":
        return [graph_to_dot(g, parts=extras.get("parts")).rstrip("\n")]
    lines = [f"{rep.vertices} vertices, {rep.edges} edges, {rep.faces} faces, {rep.components} component(s)"]
    lines.append("spherical" if rep.genus_ok else "not spherical")
    ChargeGraph(g)
    lines.append("valid charge graph")
    return lines


def cmd_faces(args, g, extras):
    walks = face_walks(g)
    if args.format == "machine":
        recs = [("faces", len(walks))]
        recs += [(f"face.{k}", f"{len(w)}:{_edge_cycle(w)}") for k, w in enumerate(walks)]
        return _machine(recs)
    if args.format == "dot":
        return [graph_to_dot(g).rstrip("\n")]
    return [f"face {k}: length {len(w)}: {_edge_cycle(w)}" for k, w in enumerate(walks)]


def cmd_tischler(args, g, extras):
    t = radial_tischler(ChargeGraph(g))
    tg = t.graph
    walks = face_walks(tg)
    rdeg = sorted((tg.degree(r) for r in t.r_vertices), reverse=True)
    rep = verify_tischler_structure(t)
    if args.format == "dot":
        return [graph_to_dot(tg, "tischler", {"c": list(t.c_vertices), "r": list(t.r_vertices)}).rstrip("\n")]
    if args.format == "machine":
        recs = [("vertices", tg.num_vertices), ("edges", tg.num_edges), ("faces", len(walks)),
                ("c_vertices", len(t.c_vertices)), ("r_vertices", len(t.r_vertices)),
                ("r_degrees", " ".join(map(str, rdeg))),
                ("face_lengths", " ".join(str(len(w)) for w in walks))]
        recs += [(f"check.{c.name}", "ok" if c.passed else f"FAIL {c.detail}") for c in rep.checks]
        return _machine(recs)
    lengths = {len(w) for w in walks}
    lines = [f"Tischler model: {tg.num_vertices} vertices, {tg.num_edges} edges, {len(walks)} faces"]
    lines.append(f"face lengths: all {lengths.pop()}" if len(lengths) == 1 else f"face lengths: {sorted(len(w) for w in walks)}")
    lines.append(f"C-vertices {len(t.c_vertices)}, R-vertices {len(t.r_vertices)}, R-degrees {rdeg}")
    for c in rep.checks:
        lines.append(f"  {c.name:24s} {'ok' if c.passed else 'FAIL'}  {c.detail}".rstrip())
    return lines


def cmd_blowup(args, g, extras):
    cover = blow_up(ChargeGraph(g))
    b = cover.blown
    nf = len(face_walks(b))
    if args.format == "dot":
        return [graph_to_dot(b, "blowup").rstrip("\n")]
    recs = [("degree", cover.degree), ("blown_vertices", b.num_vertices), ("blown_edges", b.num_edges),
            ("blown_faces", nf), ("patches", " ".join(map(str, cover.patches))),
            ("local_degrees", " ".join(map(str, cover.local_degrees())))]
    if args.format == "machine":
        return _machine(recs)
    lines = [f"blown-up graph: {b.num_vertices} vertices, {b.num_edges} edges, {nf} faces ({len(cover.patches)} bigon patches)",
             f"cover degree {cover.degree}"]
    for v in range(g.num_vertices):
        lines.append(f"  local degree at {g.vertices[v]}: {cover.local_degree(v)}")
    return lines


def _overlay(args, g):
    tree = _tree(g, args.tree)
    return tree, build_overlay(blow_up(ChargeGraph(g)), tree)


def _cycles(perm) -> str:
    seen, out = set(), []
    for c in range(len(perm)):
        if c in seen:
            continue
        cyc, x = [], c
        while x not in seen:
            seen.add(x)
            cyc.append(x)
            x = perm[x]
        if len(cyc) > 1:
            out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def cmd_recursion(args, g, extras):
    tree, o = _overlay(args, g)
    rec = wreath_recursion(o)
    recs = [("degree", rec.degree), ("tree", ",".join(str(e + 1) for e in tree.edges))]
    for i, (perm, rest) in enumerate(zip(rec.perms, rec.restrictions), 1):
        recs.append((f"x{i}.perm", _cycles(perm)))
        for c, r in enumerate(rest):
            recs.append((f"x{i}.{c}", format_word(r)))
    if args.format == "machine":
        return _machine(recs)
    lines = [f"degree {rec.degree}, tree edges {recs[1][1]}"]
    for i, (perm, rest) in enumerate(zip(rec.perms, rec.restrictions), 1):
        lines.append(f"x{i} = {_cycles(perm)} << " + ", ".join(format_word(r) for r in rest) + " >>")
    return lines


def _curve(args, tree):
    if not args.curve:
        raise UsageError("--curve is required")
    return reduce(args.curve, rank=tree.rank)


def cmd_pullback(args, g, extras):
    tree, o = _overlay(args, g)
    w = _curve(args, tree)
    pulls = pullback(w, o)
    verdict = simplicity(w, tree).value
    if args.format == "machine":
        recs = [("curve", w), ("complexity", complexity(w)), ("simple", verdict), ("pullbacks", len(pulls))]
        recs += [(f"pullback.{i}", f"{complexity(u)}:{u}") for i, u in enumerate(pulls)]
        return _machine(recs)
    lines = [f"curve {w}: complexity {complexity(w)}, edge counts {edge_counts(w, tree.rank)}, {verdict}",
             f"{len(pulls)} pullbacks, total complexity {sum(map(complexity, pulls))}"]
    lines += [f"  {str(u):20s} complexity {complexity(u)}" for u in pulls]
    return lines


def cmd_attractor(args, g, extras):
    tree, o = _overlay(args, g)
    if args.curve:
        w = _curve(args, tree)
        traj = iterate_to_attractor(w, o, args.max_steps)
        if args.format == "machine":
            recs = [("converged_at", traj.converged_at if traj.converged else "none")]
            recs += [(f"step.{n}", " | ".join(map(str, s))) for n, s in enumerate(traj.steps)]
            return _machine(recs)
        lines = [f"step {n}: " + ", ".join(map(str, s)) for n, s in enumerate(traj.steps)]
        if traj.converged:
            lines.append(f"in the attractor after {traj.converged_at} step(s)")
            return lines
        raise DomainError("\n".join(lines + [f"no convergence within {len(traj.steps) - 1} steps"]))
    ag = transition_graph(o, tree)
    if args.format == "dot":
        return [attractor_to_dot(ag).rstrip("\n")]
    if args.format == "machine":
        recs = [("nodes", len(ag.nodes))]
        recs += [(f"node.{i}", f"{w}:{ag.verdicts[w].value}") for i, w in enumerate(ag.nodes)]
        recs += [(f"arc.{i}", f"{s} -> {d} x{m}") for i, (s, d, m) in enumerate(ag.arc_list())]
        return _machine(recs)
    lines = [f"{len(ag.nodes)} attractor classes, closed under pullback: {ag.is_closed()}"]
    for w in ag.nodes:
        targets = ", ".join(f"{d}" + (f" x{m}" if m > 1 else "") for d, m in sorted(ag.arcs[w].items()))
        lines.append(f"  {str(w):20s} [{ag.verdicts[w].value}] -> {targets}")
    return lines


def _edges_arg(args):
    if args.edges is None:
        raise UsageError("--edges is required")
    if not 1 <= args.edges <= MAX_EDGES:
        raise UsageError(f"--edges must be in 1..{MAX_EDGES}")
    return args.edges


def cmd_enumerate(args):
    codes = enumerate_charge_graphs(_edges_arg(args))
    if args.format == "machine":
        return _machine([("count", len(codes))] + [(f"code.{i}", c.decode()) for i, c in enumerate(codes)])
    return [c.decode() for c in codes]


def cmd_census(args):
    rows = census(_edges_arg(args))
    if args.format == "machine":
        out = []
        for n, rs in rows.items():
            for r in rs:
                out.append(" ".join([
                    f"N={n}", f"code={r.code.decode()}",
                    f"local_degrees={','.join(map(str, r.local_degrees))}",
                    f"tischler={r.tischler[0]},{r.tischler[1]},{r.tischler[2]}",
                    f"r_degrees={','.join(map(str, r.r_degrees))}",
                    f"attractor={r.attractor_size}", f"chiral={int(r.chiral)}",
                ]))
        return out
    lines = []
    for n, rs in rows.items():
        chiral = sum(r.chiral for r in rs)
        lines.append(f"N={n} (degree {n + 1}): {len(rs)} classes, {chiral} chiral")
        for r in rs:
            lines.append(f"  V={r.vertices} F={r.faces} local={list(r.local_degrees)} tischler={r.tischler} "
                         f"R={list(r.r_degrees)} attractor={r.attractor_size}{' chiral' if r.chiral else ''}")
    return lines


def cmd_export_dot(args, g, extras):
    return [graph_to_dot(g, Path(args.graph).stem, extras.get("parts")).rstrip("\n")]


GRAPH_COMMANDS = {
    "validate": cmd_validate,
    "faces": cmd_faces,
    "tischler": cmd_tischler,
    "blowup": cmd_blowup,
    "recursion": cmd_recursion,
    "pullback": cmd_pullback,
    "attractor": cmd_attractor,
    "export-dot": cmd_export_dot,
}
PLAIN_COMMANDS = {"enumerate": cmd_enumerate, "census": cmd_census}


class UsageError(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="critfix", description="Charge graphs, Tischler models and curve pullbacks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--output", help="write to this file instead of stdout")
        sp.add_argument("--format", choices=("table", "dot", "machine"), default="table")

    for name in GRAPH_COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("graph", help="graph file")
        sp.add_argument("--tree", help="comma list of 1-based tree edge ids (default: greedy tree)")
        sp.add_argument("--curve", help='curve word such as "x1 x3 X2"')
        sp.add_argument("--max-steps", type=int, default=None)
        common(sp)
    for name in PLAIN_COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--edges", type=int)
        common(sp)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command in PLAIN_COMMANDS:
            lines = PLAIN_COMMANDS[args.command](args)
        else:
            if args.max_steps is not None and args.max_steps < 1:
                raise UsageError("--max-steps must be at least 1")
            try:
                g, extras = load_graph_file(args.graph)
            except OSError as exc:
                raise UsageError(f"cannot read {args.graph}: {exc.strerror}") from None
            lines = GRAPH_COMMANDS[args.command](args, g, extras)
    except UsageError as exc:
        print(f"critfix: usage error: {exc}", file=stderr)
        return 2
    except StructureError as exc:
        print(f"critfix: error [{exc.code}]: {exc}", file=stderr)
        return 1
    except (DomainError, CurveError) as exc:
        print(f"critfix: error: {exc}", file=stderr)
        return 1
    text = "\n".join(str(x) for x in lines) + "\n"
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
