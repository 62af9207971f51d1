"""Hardness constructions on undirected graphs.

poljak_subdivision stretches every edge into a 3-edge path, raising
the stability number by exactly the edge count.  For bridgeless cubic
graphs, cubic_to_hard_digraph removes a perfect matching and realizes
the subdivision as an intersection graph whose preimage avoids all
the forbidden patterns T1-T4, F1, F2.
"""

from __future__ import annotations

from .core import Digraph, UGraph
from .intersect import ArcCertificate

__all__ = [
    "poljak_subdivision",
    "perfect_matching_cubic",
    "cubic_to_hard_digraph",
]


def poljak_subdivision(g: UGraph) -> tuple[UGraph, dict[tuple[int, int], tuple[int, int]]]:
    """Replace each edge uv by the path u,u',u'',v on two fresh nodes.

    Returns the subdivision and, per original edge (u,v) with u < v,
    the pair (u', u'') where u' is the fresh node next to u.
    """
    edges = []
    pair: dict[tuple[int, int], tuple[int, int]] = {}
    nxt = g.n
    for u, v in sorted(g.edges):
        pair[(u, v)] = (nxt, nxt + 1)
        edges += [(u, nxt), (nxt, nxt + 1), (nxt + 1, v)]
        nxt += 2
    return UGraph(nxt, edges), pair


def _has_bridge(g: UGraph) -> bool:
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    timer = 0
    for root in range(g.n):
        if disc[root] >= 0:
            continue
        stack = [(root, -1, iter(adj[root]))]
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if disc[w] < 0:
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, u, iter(adj[w])))
                    advanced = True
                    break
                low[u] = min(low[u], disc[w])
            if not advanced:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[u])
                    if low[u] > disc[parent]:
                        return True
    return False


def perfect_matching_cubic(g: UGraph) -> set[tuple[int, int]]:
    """A perfect matching of a bridgeless cubic graph, as (u,v) pairs u < v.

    Existence is guaranteed on the valid input class, so plain
    backtracking over the smallest unmatched node suffices; the result
    is the lexicographically first matching found.
    """
    if any(d != 3 for d in g.degrees()):
        raise ValueError("graph is not cubic")
    if _has_bridge(g):
        raise ValueError("graph has a bridge")
    adj = g.adjacency()
    mate = [-1] * g.n

    def extend(u: int) -> bool:
        while u < g.n and mate[u] >= 0:
            u += 1
        if u == g.n:
            return True
        for w in adj[u]:
            if mate[w] < 0:
                mate[u] = w
                mate[w] = u
                if extend(u + 1):
                    return True
                mate[u] = mate[w] = -1
        return False

    if not extend(0):
        raise AssertionError("no perfect matching in a bridgeless cubic graph")
    return {(u, mate[u]) for u in range(g.n) if u < mate[u]}


def cubic_to_hard_digraph(g: UGraph) -> tuple[Digraph, ArcCertificate]:
    """Preimage of the subdivision of a bridgeless cubic graph.

    Removing a perfect matching leaves disjoint cycles; each becomes a
    directed cycle of arcs (one per subdivision node along it), and
    each matching edge's two inner nodes become a shared-tail fork
    whose arcs enter the endpoint cycle arcs.  The certificate maps
    subdivision nodes to arc indices; the result contains none of
    T1-T4, F1, F2 and no node with in-degree above two.
    """
    matching = perfect_matching_cubic(g)
    sub, pair = poljak_subdivision(g)

    cycle_adj: list[list[int]] = [[] for _ in range(g.n)]
    for u, v in sorted(g.edges):
        if (u, v) not in matching:
            cycle_adj[u].append(v)
            cycle_adj[v].append(u)

    arcs: list[tuple[int, int]] = []
    cert = [-1] * sub.n
    tail_of = [-1] * sub.n
    nxt = 0

    def sub_path(u: int, v: int) -> tuple[int, int]:
        a, b = pair[(u, v) if u < v else (v, u)]
        return (a, b) if u < v else (b, a)

    seen = bytearray(g.n)
    for start in range(g.n):
        if seen[start]:
            continue
        # walk the cycle through start, expand each hop to 3 arcs
        loop = [start]
        seen[start] = 1
        prev, cur = start, cycle_adj[start][0]
        while cur != start:
            seen[cur] = 1
            loop.append(cur)
            prev, cur = cur, (
                cycle_adj[cur][0] if cycle_adj[cur][0] != prev else cycle_adj[cur][1]
            )
        nodes: list[int] = []
        for i, u in enumerate(loop):
            inner = sub_path(u, loop[(i + 1) % len(loop)])
            nodes += [u, inner[0], inner[1]]
        base = nxt
        nxt += len(nodes)
        for j, sub_node in enumerate(nodes):
            tail = base + j
            cert[sub_node] = len(arcs)
            tail_of[sub_node] = tail
            arcs.append((tail, base + (j + 1) % len(nodes)))

    for u, v in sorted(matching):
        inner_u, inner_v = pair[(u, v)]
        fork_tail = nxt
        nxt += 1
        cert[inner_u] = len(arcs)
        arcs.append((fork_tail, tail_of[u]))
        cert[inner_v] = len(arcs)
        arcs.append((fork_tail, tail_of[v]))

    return Digraph(nxt, arcs), ArcCertificate(tuple(cert))
