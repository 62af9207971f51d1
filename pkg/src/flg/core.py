"""Core graph types and text I/O shared by every other module.

Two graph kinds: Digraph (directed multigraph, the preimage object) and
UGraph (simple undirected graph with optional rational node weights).
Nodes are 0-indexed internally and 1-indexed in files.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain
from operator import ne
from typing import Iterable, NamedTuple, Optional, Sequence


class Arc(NamedTuple):
    """A directed arc.  tail != head always (no self-loops)."""

    tail: int
    head: int


class Digraph:
    """Directed multigraph with an ordered arc list.

    Parallel arcs and antiparallel pairs are permitted; self-loops are
    rejected at construction.  Instances are immutable.
    """

    __slots__ = ("n", "arcs", "labels")

    def __init__(
        self,
        n: int,
        arcs: Iterable[tuple[int, int]],
        labels: Optional[Sequence[Optional[str]]] = None,
    ) -> None:
        if n < 0:
            raise ValueError("node count must be >= 0")
        # Bulk validation: preimages run to millions of arcs, so the checks
        # stay at C level and a python rescan only localizes the offender.
        arc_tuple = tuple(map(Arc._make, arcs))
        flat = list(chain.from_iterable(arc_tuple))
        if flat and (min(flat) < 0 or max(flat) >= n or not all(map(ne, flat[0::2], flat[1::2]))):
            for t, h in arc_tuple:
                if t == h:
                    raise ValueError("self-loop (%d,%d) not allowed" % (t, h))
                if not (0 <= t < n and 0 <= h < n):
                    raise ValueError("arc (%d,%d) endpoint out of range for n=%d" % (t, h, n))
            raise AssertionError("bulk check tripped but rescan found no bad arc")
        self.n = n
        self.arcs = arc_tuple
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != len(self.arcs):
                raise ValueError("label count must match arc count")
        self.labels = labels

    @property
    def m(self) -> int:
        return len(self.arcs)

    def out_degrees(self) -> list[int]:
        deg = [0] * self.n
        for t, _ in self.arcs:
            deg[t] += 1
        return deg

    def in_degrees(self) -> list[int]:
        deg = [0] * self.n
        for _, h in self.arcs:
            deg[h] += 1
        return deg

    def arcs_by_tail(self) -> list[list[int]]:
        """Arc indices grouped by tail node."""
        groups: list[list[int]] = [[] for _ in range(self.n)]
        for i, (t, _) in enumerate(self.arcs):
            groups[t].append(i)
        return groups

    def arcs_by_head(self) -> list[list[int]]:
        """Arc indices grouped by head node."""
        groups: list[list[int]] = [[] for _ in range(self.n)]
        for i, (_, h) in enumerate(self.arcs):
            groups[h].append(i)
        return groups

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Digraph)
            and self.n == other.n
            and self.arcs == other.arcs
            and self.labels == other.labels
        )

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return "Digraph(n=%d, arcs=%r)" % (self.n, list(self.arcs))


class UGraph:
    """Simple undirected graph with optional rational node weights.

    Edges are stored as (u, v) pairs with u < v.  Missing weights
    default to 1.
    """

    __slots__ = ("n", "edges", "weights")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Optional[dict[int, Fraction]] = None,
    ) -> None:
        if n < 0:
            raise ValueError("node count must be >= 0")
        edge_set = set()
        for u, v in edges:
            if u == v:
                raise ValueError("self-loop at node %d not allowed" % u)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError("edge (%d,%d) endpoint out of range for n=%d" % (u, v, n))
            edge_set.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = frozenset(edge_set)
        if weights is not None:
            for v, w in weights.items():
                if not (0 <= v < n):
                    raise ValueError("weight for out-of-range node %d" % v)
                if not isinstance(w, Fraction):
                    raise ValueError("weights must be Fraction values")
            weights = dict(weights)
        self.weights = weights

    @property
    def m(self) -> int:
        return len(self.edges)

    def weight(self, v: int) -> Fraction:
        if self.weights is None:
            return Fraction(1)
        return self.weights.get(v, Fraction(1))

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self.edges

    def adjacency(self) -> list[list[int]]:
        """Sorted adjacency lists."""
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for lst in adj:
            lst.sort()
        return adj

    def adjacency_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, UGraph)
            and self.n == other.n
            and self.edges == other.edges
            and self.weights == other.weights
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return "UGraph(n=%d, edges=%r)" % (self.n, sorted(self.edges))


@dataclass(frozen=True)
class CyclePartition:
    """Split of a chordless-cycle preimage into a directed cycle plus chords.

    cycle_arcs form a directed cycle in the preimage; chord_arcs are in
    1-to-1 correspondence with heads2.  tails2 / heads2 / mixed partition
    the cycle's node set by (tail of two cycle arcs / head of two / one
    of each).
    """

    cycle_arcs: tuple[Arc, ...]
    chord_arcs: tuple[Arc, ...]
    tails2: frozenset[int]
    heads2: frozenset[int]
    mixed: frozenset[int]


class UnionFind:
    """Disjoint sets over range(n) with path compression and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> int:
        """Merge the classes of x and y; returns the surviving root."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return rx
        if self.size[rx] < self.size[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        self.size[rx] += self.size[ry]
        return rx

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)


# ---------------------------------------------------------------------------
# Text formats.
#
# Digraph:  header "p dgr <n> <m>", then m lines "a <tail> <head>".
# UGraph:   header "p ugr <n> <m>", then m lines "e <u> <v>", optionally
#           followed by weight lines "w <v> <num>/<den>".
# Lines starting with "c" are comments.  Node ids are 1-indexed in files.
# ---------------------------------------------------------------------------


def _lines(text: "str | bytes") -> list[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode("ascii")
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        out.append((lineno, fields))
    return out


def _parse_header(lineno: int, fields: list[str], kind: str) -> tuple[int, int]:
    if len(fields) != 4 or fields[0] != "p" or fields[1] != kind:
        raise ValueError("line %d: expected header 'p %s <n> <m>'" % (lineno, kind))
    try:
        n, m = int(fields[2]), int(fields[3])
    except ValueError:
        raise ValueError("line %d: non-integer header counts" % lineno) from None
    if n < 0 or m < 0:
        raise ValueError("line %d: negative header counts" % lineno)
    return n, m


def parse_digraph(text: "str | bytes") -> Digraph:
    """Parse the digraph text format.  Arc order equals file order."""
    lines = _lines(text)
    if not lines:
        raise ValueError("empty input")
    lineno, fields = lines[0]
    n, m = _parse_header(lineno, fields, "dgr")
    arcs: list[tuple[int, int]] = []
    for lineno, fields in lines[1:]:
        if fields[0] != "a" or len(fields) != 3:
            raise ValueError("line %d: expected 'a <tail> <head>'" % lineno)
        try:
            t, h = int(fields[1]), int(fields[2])
        except ValueError:
            raise ValueError("line %d: non-integer arc endpoint" % lineno) from None
        if not (1 <= t <= n and 1 <= h <= n):
            raise ValueError("line %d: endpoint out of range 1..%d" % (lineno, n))
        if t == h:
            raise ValueError("line %d: self-loop at node %d" % (lineno, t))
        arcs.append((t - 1, h - 1))
    if len(arcs) != m:
        raise ValueError("header claims %d arcs, found %d" % (m, len(arcs)))
    return Digraph(n, arcs)


def serialize_digraph(d: Digraph) -> str:
    out = ["p dgr %d %d" % (d.n, d.m)]
    for t, h in d.arcs:
        out.append("a %d %d" % (t + 1, h + 1))
    return "\n".join(out) + "\n"


def parse_ugraph(text: "str | bytes") -> UGraph:
    """Parse the undirected graph text format."""
    lines = _lines(text)
    if not lines:
        raise ValueError("empty input")
    lineno, fields = lines[0]
    n, m = _parse_header(lineno, fields, "ugr")
    edges: list[tuple[int, int]] = []
    weights: dict[int, Fraction] = {}
    for lineno, fields in lines[1:]:
        if fields[0] == "e" and len(fields) == 3:
            try:
                u, v = int(fields[1]), int(fields[2])
            except ValueError:
                raise ValueError("line %d: non-integer edge endpoint" % lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ValueError("line %d: endpoint out of range 1..%d" % (lineno, n))
            if u == v:
                raise ValueError("line %d: self-loop at node %d" % (lineno, u))
            edges.append((u - 1, v - 1))
        elif fields[0] == "w" and len(fields) == 3:
            try:
                v = int(fields[1])
                w = Fraction(fields[2])
            except (ValueError, ZeroDivisionError):
                raise ValueError("line %d: malformed weight" % lineno) from None
            if not (1 <= v <= n):
                raise ValueError("line %d: weight node out of range" % lineno)
            weights[v - 1] = w
        else:
            raise ValueError("line %d: expected 'e <u> <v>' or 'w <v> <num>/<den>'" % lineno)
    if len(edges) != m:
        raise ValueError("header claims %d edges, found %d" % (m, len(edges)))
    return UGraph(n, edges, weights or None)


def serialize_ugraph(g: UGraph) -> str:
    out = ["p ugr %d %d" % (g.n, g.m)]
    for u, v in sorted(g.edges):
        out.append("e %d %d" % (u + 1, v + 1))
    if g.weights is not None:
        for v in sorted(g.weights):
            w = g.weights[v]
            out.append("w %d %d/%d" % (v + 1, w.numerator, w.denominator))
    return "\n".join(out) + "\n"


def digraph_to_dot(d: Digraph, name: str = "D") -> str:
    out = ["digraph %s {" % name]
    for v in range(d.n):
        out.append("  n%d;" % (v + 1))
    for i, (t, h) in enumerate(d.arcs):
        if d.labels is not None and d.labels[i]:
            out.append('  n%d -> n%d [label="%s"];' % (t + 1, h + 1, d.labels[i]))
        else:
            out.append("  n%d -> n%d;" % (t + 1, h + 1))
    out.append("}")
    return "\n".join(out) + "\n"


def ugraph_to_dot(g: UGraph, name: str = "G") -> str:
    out = ["graph %s {" % name]
    for v in range(g.n):
        if g.weights is not None and v in g.weights:
            out.append('  n%d [label="%d (%s)"];' % (v + 1, v + 1, g.weights[v]))
        else:
            out.append("  n%d;" % (v + 1))
    for u, v in sorted(g.edges):
        out.append("  n%d -- n%d;" % (u + 1, v + 1))
    out.append("}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Traversal helpers.
# ---------------------------------------------------------------------------


def connected_components(g: UGraph) -> list[list[int]]:
    """Connected components as sorted node lists, ordered by smallest node."""
    adj = g.adjacency()
    seen = [False] * g.n
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def cyclomatic_profile(g: UGraph) -> list[tuple[int, int, int, int]]:
    """Per component: (component id, node count, edge count, independent cycles).

    Cycle count is edges - nodes + 1 for a connected component.
    """
    comps = connected_components(g)
    comp_of = [0] * g.n
    for cid, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = cid
    edge_count = [0] * len(comps)
    for u, _ in g.edges:
        edge_count[comp_of[u]] += 1
    return [
        (cid, len(comp), edge_count[cid], edge_count[cid] - len(comp) + 1)
        for cid, comp in enumerate(comps)
    ]


def find_triangle(g: UGraph) -> Optional[tuple[int, int, int]]:
    """Some triangle of g as a node triple, or None."""
    adj = g.adjacency_sets()
    for u, v in g.edges:
        a, b = (u, v) if len(adj[u]) <= len(adj[v]) else (v, u)
        for w in adj[a]:
            if w != b and w in adj[b]:
                return (u, v, w)
    return None
