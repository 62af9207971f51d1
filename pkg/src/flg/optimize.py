"""Exact desk-scale optimization: stable sets and facility location.

The facility location instance on a digraph is equivalent to maximum
weight stable set on its intersection graph with node weights
f(tail) - c(arc): the optimum equals the total opening cost minus the
best stable weight.  Everything here is exact over rationals; sizes
are meant for verification, not production solving.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .coloring import color_trianglefree_fl
from .core import Digraph, UGraph, _lines, serialize_digraph
from .intersect import intersection_graph

__all__ = [
    "StableSet",
    "UflpInstance",
    "UflpSolution",
    "max_stable_set",
    "uflp_to_mwss",
    "uflp_brute",
    "solve_uflp",
    "approx_mwss_trianglefree",
    "parse_uflp",
    "serialize_uflp",
]

#: Exact search refuses graphs above this many nodes.
MAX_EXACT_NODES = 40


@dataclass(frozen=True)
class StableSet:
    """Node set with no internal edge, plus its total weight."""

    nodes: frozenset[int]
    weight: Fraction

    def is_stable(self, g: UGraph) -> bool:
        return all(not (u in self.nodes and v in self.nodes) for u, v in g.edges)


@dataclass(frozen=True)
class UflpInstance:
    """Digraph with rational opening costs f(v) and assignment costs c(arc)."""

    digraph: Digraph
    open_cost: tuple[Fraction, ...]
    assign_cost: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "open_cost", tuple(Fraction(x) for x in self.open_cost))
        object.__setattr__(self, "assign_cost", tuple(Fraction(x) for x in self.assign_cost))
        if len(self.open_cost) != self.digraph.n:
            raise ValueError("need one opening cost per node")
        if len(self.assign_cost) != self.digraph.m:
            raise ValueError("need one assignment cost per arc")


@dataclass(frozen=True)
class UflpSolution:
    """Open facilities, arc assignment for the rest, and the total cost."""

    open_set: frozenset[int]
    assignment: dict[int, int]
    objective: Fraction

    def is_valid(self, inst: UflpInstance) -> bool:
        for v in range(inst.digraph.n):
            if (v in self.open_set) == (v in self.assignment):
                return False
            if v in self.assignment:
                arc = inst.digraph.arcs[self.assignment[v]]
                if arc.tail != v or arc.head not in self.open_set:
                    return False
        return True


def max_stable_set(g: UGraph) -> StableSet:
    """Maximum weight stable set by branch and bound, exact.

    Nodes of non-positive weight are never selected.  The bound greedily
    pairs each remaining candidate with one later neighbor; a stable set
    keeps at most the heavier node of a pair, so pair maxima plus
    unpaired weights bound the rest.  Branching follows descending
    weight, and only strict improvements replace the incumbent, so the
    result is deterministic.
    """
    if g.n > MAX_EXACT_NODES:
        raise ValueError("graph too large for exact search (%d nodes)" % g.n)
    adj = g.adjacency_sets()
    cand = sorted(
        (v for v in range(g.n) if g.weight(v) > 0),
        key=lambda v: (-g.weight(v), v),
    )
    best_nodes: frozenset[int] = frozenset()
    best_weight = Fraction(0)

    def pair_bound(rest: list[int]) -> Fraction:
        pos = {v: i for i, v in enumerate(rest)}
        paired: set[int] = set()
        total = Fraction(0)
        for i, v in enumerate(rest):
            if v in paired:
                continue
            total += g.weight(v)
            for u in adj[v]:
                j = pos.get(u)
                if j is not None and j > i and u not in paired:
                    paired.add(u)
                    break
        return total

    def search(rest: list[int], chosen: list[int], weight: Fraction) -> None:
        nonlocal best_nodes, best_weight
        if weight > best_weight:
            best_nodes = frozenset(chosen)
            best_weight = weight
        if not rest:
            return
        if weight + pair_bound(rest) <= best_weight:
            return
        v = rest[0]
        chosen.append(v)
        search([w for w in rest[1:] if w not in adj[v]], chosen, weight + g.weight(v))
        chosen.pop()
        search(rest[1:], chosen, weight)

    search(cand, [], Fraction(0))
    return StableSet(best_nodes, best_weight)


def uflp_to_mwss(inst: UflpInstance) -> tuple[UGraph, Fraction]:
    """Weighted intersection graph and the opening-cost offset.

    Contract: uflp optimum = offset - maximum stable weight.
    """
    offset = sum(inst.open_cost, Fraction(0))
    if inst.digraph.m == 0:
        return UGraph(0, []), offset
    g, _ = intersection_graph(inst.digraph)
    weights = {
        i: inst.open_cost[arc.tail] - inst.assign_cost[i]
        for i, arc in enumerate(inst.digraph.arcs)
    }
    return UGraph(g.n, g.edges, weights), offset


def uflp_brute(inst: UflpInstance) -> UflpSolution:
    """Optimum by enumerating every open set; ties go to the
    lexicographically smallest open set.  Sizes of a dozen nodes."""
    d = inst.digraph
    out_arcs: list[list[int]] = [[] for _ in range(d.n)]
    for i, arc in enumerate(d.arcs):
        out_arcs[arc.tail].append(i)

    best: Optional[tuple[Fraction, tuple[int, ...], dict[int, int]]] = None
    for mask in range(1 << d.n):
        open_nodes = tuple(v for v in range(d.n) if mask >> v & 1)
        cost = sum((inst.open_cost[v] for v in open_nodes), Fraction(0))
        assignment: dict[int, int] = {}
        feasible = True
        for u in range(d.n):
            if mask >> u & 1:
                continue
            choice = min(
                (
                    (inst.assign_cost[i], i)
                    for i in out_arcs[u]
                    if mask >> d.arcs[i].head & 1
                ),
                default=None,
            )
            if choice is None:
                feasible = False
                break
            cost += choice[0]
            assignment[u] = choice[1]
        if feasible and (best is None or (cost, open_nodes) < best[:2]):
            best = (cost, open_nodes, assignment)

    assert best is not None, "opening every node is always feasible"
    return UflpSolution(frozenset(best[1]), best[2], best[0])


def solve_uflp(inst: UflpInstance) -> UflpSolution:
    """Exact solution via the stable set equivalence."""
    graph, offset = uflp_to_mwss(inst)
    s = max_stable_set(graph)
    assignment = {inst.digraph.arcs[i].tail: i for i in sorted(s.nodes)}
    open_set = frozenset(range(inst.digraph.n)) - assignment.keys()
    solution = UflpSolution(open_set, assignment, offset - s.weight)
    assert solution.is_valid(inst)
    return solution


def approx_mwss_trianglefree(g: UGraph) -> StableSet:
    """Best positive-weight color class; at least a third of the optimum."""
    coloring = color_trianglefree_fl(g)
    classes: dict[int, list[int]] = {}
    for v, c in enumerate(coloring.colors):
        if g.weight(v) > 0:
            classes.setdefault(c, []).append(v)
    if not classes:
        return StableSet(frozenset(), Fraction(0))
    best = max(
        sorted(classes),
        key=lambda c: (sum((g.weight(v) for v in classes[c]), Fraction(0)), -c),
    )
    nodes = frozenset(classes[best])
    return StableSet(nodes, sum((g.weight(v) for v in nodes), Fraction(0)))


# ---------------------------------------------------------------------------
# Instance file format: the digraph lines followed by one "f <v> <cost>"
# line per node and one "k <arc-index> <cost>" line per arc, both
# 1-indexed, costs as "num" or "num/den".
# ---------------------------------------------------------------------------


def parse_uflp(text: "str | bytes") -> UflpInstance:
    n = m = -1
    arcs: list[tuple[int, int]] = []
    open_cost: dict[int, Fraction] = {}
    assign_cost: dict[int, Fraction] = {}
    for lineno, fields in _lines(text):
        kind = fields[0]
        if kind == "p":
            if len(fields) != 4 or fields[1] != "dgr":
                raise ValueError("line %d: expected 'p dgr <n> <m>'" % lineno)
            n, m = int(fields[2]), int(fields[3])
        elif kind == "a":
            arcs.append((int(fields[1]) - 1, int(fields[2]) - 1))
        elif kind in ("f", "k"):
            if len(fields) != 3:
                raise ValueError("line %d: expected '%s <index> <cost>'" % (lineno, kind))
            idx = int(fields[1]) - 1
            table = open_cost if kind == "f" else assign_cost
            if idx in table:
                raise ValueError("line %d: duplicate %s entry for %d" % (lineno, kind, idx + 1))
            table[idx] = Fraction(fields[2])
        else:
            raise ValueError("line %d: unknown record '%s'" % (lineno, kind))
    if n < 0:
        raise ValueError("missing 'p dgr' header")
    if len(arcs) != m:
        raise ValueError("expected %d arcs, found %d" % (m, len(arcs)))
    if sorted(open_cost) != list(range(n)):
        raise ValueError("need an 'f' cost for each of the %d nodes" % n)
    if sorted(assign_cost) != list(range(m)):
        raise ValueError("need a 'k' cost for each of the %d arcs" % m)
    return UflpInstance(
        Digraph(n, arcs),
        tuple(open_cost[v] for v in range(n)),
        tuple(assign_cost[i] for i in range(m)),
    )


def serialize_uflp(inst: UflpInstance) -> str:
    out = [serialize_digraph(inst.digraph).rstrip("\n")]
    out += ["f %d %s" % (v + 1, c) for v, c in enumerate(inst.open_cost)]
    out += ["k %d %s" % (i + 1, c) for i, c in enumerate(inst.assign_cost)]
    return "\n".join(out) + "\n"
