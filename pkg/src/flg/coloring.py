"""Vertex coloring for triangle-free facility-location graphs.

Accepted graphs take at most three colors: each reduced component is
2-colored (one endpoint of an odd cycle's conflict edge moves to a
third color), then the removed edges return in reverse order and a
clashing endpoint is repaired locally.  Brute-force chromatic oracles
and the edge-coloring reduction digraph round out the module.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .core import Digraph, UGraph, cyclomatic_profile
from .recognize import reduce_graph

__all__ = [
    "Coloring",
    "color_trianglefree_fl",
    "chromatic_brute",
    "edgecolor_reduction",
    "edge_chromatic_brute",
]


@dataclass(frozen=True)
class Coloring:
    """Color index per node, 0-based, labels in first-seen order."""

    colors: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(set(self.colors))

    def is_proper(self, g: UGraph) -> bool:
        return all(self.colors[u] != self.colors[v] for u, v in g.edges)


def _canonical(colors: list[int]) -> tuple[int, ...]:
    relabel: dict[int, int] = {}
    for c in colors:
        if c not in relabel:
            relabel[c] = len(relabel)
    return tuple(relabel[c] for c in colors)


def color_trianglefree_fl(g: UGraph) -> Coloring:
    """Proper coloring of an accepted triangle-free graph, <= 3 colors.

    Raises ValueError when the graph has a triangle or a reduced
    component with more than one independent cycle.
    """
    trace = reduce_graph(g)
    for _, _, _, cycles in cyclomatic_profile(trace.reduced_graph):
        if cycles > 1:
            raise ValueError(
                "not a facility-location graph: a reduced component has %d independent cycles"
                % cycles
            )

    colors = [0] * g.n
    adj = [set() for _ in range(g.n)]
    for u, v in trace.reduced_graph.edges:
        adj[u].add(v)
        adj[v].add(u)

    seen = bytearray(g.n)
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = 1
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for w in adj[x]:
                if not seen[w]:
                    seen[w] = 1
                    colors[w] = 1 - colors[x]
                    queue.append(w)
    # a component whose unique cycle is odd leaves exactly one clash
    for u, v in trace.reduced_graph.edges:
        if colors[u] == colors[v]:
            colors[u] = 2

    # removed edges return last-out first-in; each endpoint has at most
    # one neighbor at that moment, so a local repair always succeeds
    for b, c in reversed(trace.removed_edges):
        assert len(adj[b]) <= 1 and len(adj[c]) <= 1
        if colors[b] == colors[c]:
            eb = colors[next(iter(adj[b]))] if adj[b] else None
            ec = colors[next(iter(adj[c]))] if adj[c] else None
            if ec is not None and ec != eb:
                colors[b] = ec
            elif eb is not None and ec is None:
                colors[c] = eb
            else:
                colors[b] = next(x for x in (0, 1, 2) if x != colors[c] and x != eb)
        adj[b].add(c)
        adj[c].add(b)

    assert all(colors[u] != colors[v] for u, v in g.edges)
    return Coloring(_canonical(colors))


def chromatic_brute(g: UGraph, k: int) -> Optional[Coloring]:
    """Some proper k-coloring, or None when chi(g) > k.

    Exact backtracking; the next node is always one of maximum
    saturation (distinct neighbor colors), new color indices are only
    opened in order.  Meant for graphs of a few dozen nodes.
    """
    if k < 0:
        raise ValueError("color count must be >= 0")
    n = g.n
    adj = g.adjacency_sets()
    colors = [-1] * n
    sat: list[set[int]] = [set() for _ in range(n)]
    deg = g.degrees()

    def pick() -> int:
        best = -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            if best < 0 or (len(sat[v]), deg[v]) > (len(sat[best]), deg[best]):
                best = v
        return best

    def assign(limit: int) -> bool:
        v = pick()
        if v < 0:
            return True
        for c in range(min(k, limit + 1)):
            if c in sat[v]:
                continue
            colors[v] = c
            touched = [w for w in adj[v] if c not in sat[w]]
            for w in touched:
                sat[w].add(c)
            if assign(max(limit, c + 1)):
                return True
            for w in touched:
                sat[w].discard(c)
            colors[v] = -1
        return False

    if not assign(0):
        return None
    return Coloring(_canonical(colors))


def edgecolor_reduction(g: UGraph, k: int) -> tuple[Digraph, dict[tuple[int, int], tuple[int, int]]]:
    """Digraph whose intersection graph is k-colorable iff g is k-edge-colorable.

    Every edge uv gets a fresh node e with arcs (u,e) and (v,e) plus
    k-1 pendant out-arcs from e; the returned map sends each edge to
    the indices of its two entering arcs.
    """
    if k < 1:
        raise ValueError("color count must be >= 1")
    edges = sorted(g.edges)
    arcs: list[tuple[int, int]] = []
    pair: dict[tuple[int, int], tuple[int, int]] = {}
    nxt = g.n + len(edges)
    for i, (u, v) in enumerate(edges):
        enode = g.n + i
        pair[(u, v)] = (len(arcs), len(arcs) + 1)
        arcs.append((u, enode))
        arcs.append((v, enode))
        for _ in range(k - 1):
            arcs.append((enode, nxt))
            nxt += 1
    return Digraph(nxt, arcs), pair


def edge_chromatic_brute(g: UGraph, k: int) -> bool:
    """True iff g has a proper k-edge-coloring (exhaustive backtracking)."""
    if k < 0:
        raise ValueError("color count must be >= 0")
    edges = sorted(g.edges)
    m = len(edges)
    incident = [
        [j for j in range(i) if set(edges[i]) & set(edges[j])] for i in range(m)
    ]
    colors = [-1] * m

    def assign(i: int, used: int) -> bool:
        if i == m:
            return True
        for c in range(min(k, used + 1)):
            if all(colors[j] != c for j in incident[i]):
                colors[i] = c
                if assign(i + 1, max(used, c + 1)):
                    return True
        colors[i] = -1
        return False

    return assign(0, 0)
