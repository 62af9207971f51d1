"""Exhaustive isomorphism-free generation of small graphs.

Graphs are grown one edge at a time from the edgeless graph; every
isomorphism class with at most max_edges edges is reached because
deleting any edge stays inside the family (also true of the
triangle-free restriction).  Deduplication buckets by Weisfeiler-Lehman
hash and settles collisions with VF2.
"""

from itertools import combinations

import networkx as nx

from flg.core import UGraph


class IsoSet:
    """Set of graphs up to isomorphism."""

    def __init__(self):
        self._buckets = {}

    def add(self, g):
        """True when g is new."""
        key = (
            g.number_of_nodes(),
            g.number_of_edges(),
            nx.weisfeiler_lehman_graph_hash(g, iterations=3),
        )
        bucket = self._buckets.setdefault(key, [])
        for h in bucket:
            if nx.is_isomorphic(g, h):
                return False
        bucket.append(g)
        return True


def graph_classes(n, max_edges=None, triangle_free=False):
    """All graphs on exactly n nodes with at most max_edges edges,
    one representative per isomorphism class, ordered by edge count.
    """
    limit = n * (n - 1) // 2
    if max_edges is not None:
        limit = min(limit, max_edges)
    start = nx.empty_graph(n)
    seen = IsoSet()
    seen.add(start)
    out = [start]
    level = [start]
    for _ in range(limit):
        grown = []
        for g in level:
            for u, v in combinations(range(n), 2):
                if g.has_edge(u, v):
                    continue
                if triangle_free and any(
                    g.has_edge(u, w) for w in g.neighbors(v)
                ):
                    continue
                h = g.copy()
                h.add_edge(u, v)
                if seen.add(h):
                    grown.append(h)
        out.extend(grown)
        level = grown
    return out


def to_ugraph(g):
    return UGraph(g.number_of_nodes(), sorted(tuple(sorted(e)) for e in g.edges()))
