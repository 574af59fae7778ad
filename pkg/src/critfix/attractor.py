"""
The finite curve attractor and the pullback dynamics on it.

Nodes are the free-homotopy classes whose reduced words use every
generator at most once, i.e. classes meeting every tree edge at most once.
Non-simple and peripheral classes are kept and tagged, so that pullback
stays a total map on the node set.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, permutations, product

from .curves import CurveWord, SpanningTree, Simplicity, complexity, edge_counts, reduce, simplicity
from .pullback import OverlayComplex, pullback


def in_attractor(w: CurveWord, rank: int) -> bool:
    return all(n <= 1 for n in edge_counts(w, rank))


def attractor_set(tree: SpanningTree) -> list[CurveWord]:
    """All classes using each generator at most once, sorted, trivial first."""
    k = tree.rank
    found = set()
    for size in range(k + 1):
        for subset in combinations(range(1, k + 1), size):
            for order in permutations(subset):
                for signs in product((1, -1), repeat=size):
                    found.add(reduce([s * g for s, g in zip(signs, order)]))
    return sorted(found)


@dataclass
class Trajectory:
    """Breadth-first pullback iteration of one class.

    ``steps[n]`` is the set of classes reached after ``n`` pullbacks;
    ``converged_at`` is the first ``n`` with all of them in the attractor,
    or ``None`` if ``max_steps`` ran out first.
    """

    steps: list[list[CurveWord]]
    converged_at: int | None

    @property
    def converged(self) -> bool:
        return self.converged_at is not None


def default_max_steps(w: CurveWord, tree: SpanningTree) -> int:
    return complexity(w) + tree.rank + 1


def iterate_to_attractor(w: CurveWord, o: OverlayComplex, max_steps: int | None = None) -> Trajectory:
    if max_steps is None:
        max_steps = default_max_steps(w, o.tree)
    if max_steps < 1:
        raise ValueError("max_steps must be at least 1")
    rank = o.tree.rank
    current = [w]
    steps = [current]
    for n in range(max_steps + 1):
        if all(in_attractor(u, rank) for u in current):
            return Trajectory(steps, n)
        if n == max_steps:
            break
        nxt = set()
        for u in current:
            nxt.update(pullback(u, o))
        current = sorted(nxt)
        steps.append(current)
    return Trajectory(steps, None)


@dataclass
class AttractorGraph:
    nodes: list[CurveWord]
    arcs: dict[CurveWord, Counter] = field(default_factory=dict)
    verdicts: dict[CurveWord, Simplicity] = field(default_factory=dict)

    def arc_list(self) -> list[tuple[CurveWord, CurveWord, int]]:
        out = []
        for src in self.nodes:
            for dst in sorted(self.arcs[src]):
                out.append((src, dst, self.arcs[src][dst]))
        return out

    def is_closed(self) -> bool:
        nodes = set(self.nodes)
        return all(dst in nodes for targets in self.arcs.values() for dst in targets)


def transition_graph(o: OverlayComplex, tree: SpanningTree | None = None) -> AttractorGraph:
    """Pullback arcs between attractor nodes; raises if an arc leaves the node set."""
    tree = tree or o.tree
    nodes = attractor_set(tree)
    g = AttractorGraph(nodes)
    node_set = set(nodes)
    for w in nodes:
        targets = Counter(pullback(w, o))
        outside = [u for u in targets if u not in node_set]
        if outside:
            raise AssertionError(f"pullback of {w} leaves the attractor: {outside[0]}")
        g.arcs[w] = targets
        g.verdicts[w] = simplicity(w, tree)
    return g
