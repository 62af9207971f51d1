"""Intersection graphs of digraphs and structural checks on preimages.

Adjacency rule for arcs a=(u,v), b=(w,t): adjacent iff u=w (shared
tail), v=w (a enters b), t=u (b enters a), or u=t and v=w
(antiparallel pair).  Sharing only a head never makes arcs adjacent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import Arc, CyclePartition, Digraph, UGraph


@dataclass(frozen=True)
class ArcCertificate:
    """Bijection node index of an undirected graph -> arc index of a digraph."""

    mapping: tuple[int, ...]

    @staticmethod
    def identity(m: int) -> "ArcCertificate":
        return ArcCertificate(tuple(range(m)))

    def __len__(self) -> int:
        return len(self.mapping)

    def __getitem__(self, node: int) -> int:
        return self.mapping[node]


@dataclass(frozen=True)
class ForbiddenPattern:
    """Named small digraph template, matched as a (non-induced) subgraph."""

    name: str
    template: Digraph


def arcs_adjacent(a: Arc, b: Arc) -> bool:
    """The four-case adjacency test between two arcs."""
    return (
        a.tail == b.tail
        or a.head == b.tail
        or b.head == a.tail
        or (a.tail == b.head and a.head == b.tail)
    )


def intersection_graph(d: Digraph) -> tuple[UGraph, ArcCertificate]:
    """Build I(d): one node per arc, edges by the adjacency rule.

    The certificate is the identity arc <-> node correspondence.
    Grouping arcs by shared endpoint keeps this near-linear when
    tail groups are small.
    """
    if d.m == 0:
        raise ValueError("digraph has no arcs")
    tails = d.arcs_by_tail()
    heads = d.arcs_by_head()
    edges: set[tuple[int, int]] = set()
    for z in range(d.n):
        tz = tails[z]
        for i in range(len(tz)):
            x = tz[i]
            for j in range(i + 1, len(tz)):
                y = tz[j]
                edges.add((x, y) if x < y else (y, x))
        for x in heads[z]:
            for y in tz:
                edges.add((x, y) if x < y else (y, x))
    return UGraph(d.m, edges), ArcCertificate.identity(d.m)


def check_certificate(g: UGraph, d: Digraph, cert: ArcCertificate) -> bool:
    """True iff g equals I(d) under the given node -> arc bijection."""
    mapping = cert.mapping
    if len(mapping) != g.n or g.n != d.m:
        raise ValueError("certificate is not a bijection between nodes and arcs")
    if len(set(mapping)) != len(mapping):
        raise ValueError("certificate is not a bijection between nodes and arcs")
    for a in mapping:
        if not (0 <= a < d.m):
            raise ValueError("certificate maps to out-of-range arc %d" % a)
    node_of = [0] * d.m
    for node, a in enumerate(mapping):
        node_of[a] = node
    tails = d.arcs_by_tail()
    heads = d.arcs_by_head()
    seen: set[tuple[int, int]] = set()
    for z in range(d.n):
        tz = tails[z]
        for i in range(len(tz)):
            x = node_of[tz[i]]
            for j in range(i + 1, len(tz)):
                y = node_of[tz[j]]
                seen.add((x, y) if x < y else (y, x))
        for a in heads[z]:
            x = node_of[a]
            for b in tz:
                y = node_of[b]
                seen.add((x, y) if x < y else (y, x))
    return seen == g.edges


def normalize_sinks(d: Digraph) -> Digraph:
    """Split sinks so that every sink has exactly one entering arc.

    Arc order is preserved and I(result) = I(d) under the identity
    certificate: arcs meeting only at a sink head are never adjacent,
    so redirecting the extra entering arcs to fresh nodes is safe.
    """
    out_deg = d.out_degrees()
    new_arcs: list[tuple[int, int]] = []
    n = d.n
    used_sink: set[int] = set()
    for t, h in d.arcs:
        if out_deg[h] == 0:
            if h in used_sink:
                new_arcs.append((t, n))
                n += 1
            else:
                used_sink.add(h)
                new_arcs.append((t, h))
        else:
            new_arcs.append((t, h))
    return Digraph(n, new_arcs, d.labels)


def check_fork_property(d: Digraph) -> bool:
    """No out-degree >= 3, and both heads of any out-degree-2 node are sinks."""
    out_deg = d.out_degrees()
    if any(deg > 2 for deg in out_deg):
        return False
    for t, h in d.arcs:
        if out_deg[t] == 2 and out_deg[h] != 0:
            return False
    return True


def classify_triangle(d: Digraph, xs: tuple[int, int, int]) -> str:
    """Name the arc configuration behind a triangle of I(d).

    xs are three arc indices that must be pairwise adjacent.  Three
    pairwise adjacent arcs fall into exactly five shapes: a common tail
    ("out-star"), one arc entering the common tail of the other two
    ("in-fork"), a directed 3-cycle ("cycle"), a shape containing an
    antiparallel pair ("two-cycle"), or one containing two identical
    parallel arcs ("parallel").
    """
    arcs = [d.arcs[x] for x in xs]
    for i in range(3):
        for j in range(i + 1, 3):
            if not arcs_adjacent(arcs[i], arcs[j]):
                raise ValueError(f"arcs {xs[i]} and {xs[j]} are not adjacent")
    for i in range(3):
        a, b = arcs[i], arcs[(i + 1) % 3]
        if a.tail == b.head and a.head == b.tail:
            return "two-cycle"
    if len(set(arcs)) < 3:
        return "parallel"
    if arcs[0].tail == arcs[1].tail == arcs[2].tail:
        return "out-star"
    for i in range(3):
        a, b, c = arcs[i], arcs[(i + 1) % 3], arcs[(i + 2) % 3]
        if a.head == b.tail == c.tail:
            return "in-fork"
    return "cycle"


def _template(arcs: Sequence[tuple[int, int]]) -> Digraph:
    n = 1 + max(max(t, h) for t, h in arcs)
    return Digraph(n, arcs)


#: The forbidden digraph templates governing the hardness frontier.
PATTERNS: dict[str, ForbiddenPattern] = {
    "T1": ForbiddenPattern("T1", _template([(0, 1), (0, 2), (0, 3)])),
    "T2": ForbiddenPattern("T2", _template([(1, 0), (0, 2), (0, 3)])),
    "T3": ForbiddenPattern("T3", _template([(0, 1), (1, 2), (2, 0)])),
    "T4": ForbiddenPattern("T4", _template([(0, 1), (1, 0), (0, 2)])),
    "F1": ForbiddenPattern("F1", _template([(1, 0), (2, 0), (3, 0), (0, 4)])),
    "F2": ForbiddenPattern("F2", _template([(1, 0), (2, 0), (0, 3), (3, 0)])),
    "F3": ForbiddenPattern("F3", _template([(1, 0), (2, 0), (0, 3)])),
    "F4": ForbiddenPattern("F4", _template([(1, 0), (2, 0), (0, 3), (3, 4)])),
}


def detect_patterns(
    d: Digraph, patterns: Iterable[ForbiddenPattern]
) -> list[tuple[str, tuple[int, ...]]]:
    """All subgraph embeddings of each template, deduplicated by image node set.

    Embeddings are injective on nodes; every template arc must map onto
    some arc of d with the same direction.
    """
    arc_set = {(t, h) for t, h in d.arcs}
    out_deg = d.out_degrees()
    in_deg = d.in_degrees()
    results: list[tuple[str, tuple[int, ...]]] = []
    for pat in patterns:
        tpl = pat.template
        t_out = tpl.out_degrees()
        t_in = tpl.in_degrees()
        # order template nodes so each (after the first) touches a placed one
        order: list[int] = []
        placed: set[int] = set()
        while len(order) < tpl.n:
            best = None
            for v in range(tpl.n):
                if v in placed:
                    continue
                links = sum(
                    1
                    for t, h in tpl.arcs
                    if (t == v and h in placed) or (h == v and t in placed)
                )
                key = (links, t_out[v] + t_in[v])
                if best is None or key > best[0]:
                    best = (key, v)
            order.append(best[1])
            placed.add(best[1])
        pos = {v: i for i, v in enumerate(order)}
        constraints: list[list[tuple[int, int, bool]]] = [[] for _ in range(tpl.n)]
        for t, h in tpl.arcs:
            if pos[t] > pos[h]:
                constraints[pos[t]].append((pos[t], pos[h], True))
            else:
                constraints[pos[h]].append((pos[h], pos[t], False))

        found: set[frozenset[int]] = set()
        image = [0] * tpl.n

        def place(idx: int) -> None:
            if idx == tpl.n:
                mapping = [0] * tpl.n
                for i, v in enumerate(order):
                    mapping[v] = image[i]
                key = frozenset(mapping)
                if key not in found:
                    found.add(key)
                    results.append((pat.name, tuple(mapping)))
                return
            v = order[idx]
            for cand in range(d.n):
                if out_deg[cand] < t_out[v] or in_deg[cand] < t_in[v]:
                    continue
                if cand in image[:idx]:
                    continue
                ok = True
                for i, j, tail_here in constraints[idx]:
                    other = image[j]
                    arc = (cand, other) if tail_here else (other, cand)
                    if arc not in arc_set:
                        ok = False
                        break
                if ok:
                    image[idx] = cand
                    place(idx + 1)

        place(0)
    return results


def _is_single_cycle(arcs: Sequence[Arc]) -> bool:
    """True iff the arcs form one closed undirected cycle using every arc."""
    if len(arcs) < 2:
        return False
    incidence: dict[int, int] = {}
    for a in arcs:
        incidence[a.tail] = incidence.get(a.tail, 0) + 1
        incidence[a.head] = incidence.get(a.head, 0) + 1
    if any(count != 2 for count in incidence.values()):
        return False
    if len(incidence) != len(arcs):
        return False
    # walk the cycle: every node has exactly two incident arcs
    touch: dict[int, list[int]] = {}
    for i, a in enumerate(arcs):
        touch.setdefault(a.tail, []).append(i)
        touch.setdefault(a.head, []).append(i)
    seen_arcs = {0}
    node = arcs[0].head
    prev = 0
    while True:
        nxt = [i for i in touch[node] if i != prev]
        if not nxt:
            break
        i = nxt[0]
        if i in seen_arcs:
            break
        seen_arcs.add(i)
        a = arcs[i]
        node = a.head if a.tail == node else a.tail
        prev = i
    return len(seen_arcs) == len(arcs)


def _cycle_node_split(arcs: Sequence[Arc]) -> tuple[set[int], set[int], set[int]]:
    """Partition cycle nodes by (tail of two arcs, head of two, one of each)."""
    tail_count: dict[int, int] = {}
    head_count: dict[int, int] = {}
    for a in arcs:
        tail_count[a.tail] = tail_count.get(a.tail, 0) + 1
        head_count[a.head] = head_count.get(a.head, 0) + 1
    nodes = set(tail_count) | set(head_count)
    tails2 = {v for v in nodes if tail_count.get(v, 0) == 2}
    heads2 = {v for v in nodes if head_count.get(v, 0) == 2}
    mixed = nodes - tails2 - heads2
    return tails2, heads2, mixed


def decompose_cycle_preimage(
    d: Digraph, cert: ArcCertificate, cycle_nodes: Sequence[int]
) -> CyclePartition:
    """Split a chordless-cycle preimage into cycle arcs plus chord arcs.

    The cycle arcs form one cycle of d; each chord arc (v, w) pairs
    off with a distinct head-of-two node v of that cycle, where w lies
    outside the cycle or is a mixed cycle node next to v.  The
    partition need not be unique; this returns the first valid one in
    a fixed scan order (fewest chords first, chords drawn from the
    latest cycle positions first).
    """
    k = len(cycle_nodes)
    if k < 4:
        raise ValueError("cycle must have length at least 4")
    arcs = [d.arcs[cert[x]] for x in cycle_nodes]
    for i in range(k):
        for j in range(i + 1, k):
            adjacent = arcs_adjacent(arcs[i], arcs[j])
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if adjacent != consecutive:
                raise ValueError(
                    "input is not a chordless cycle in the intersection graph"
                )

    from itertools import combinations

    for chord_count in range(0, k // 2 + 1):
        for chord_idx in combinations(range(k - 1, -1, -1), chord_count):
            chord_set = set(chord_idx)
            cycle_arcs = [arcs[i] for i in range(k) if i not in chord_set]
            chord_arcs = [arcs[i] for i in chord_idx]
            if not _is_single_cycle(cycle_arcs):
                continue
            tails2, heads2, mixed = _cycle_node_split(cycle_arcs)
            if len(chord_arcs) != len(heads2):
                continue
            chord_tails = [a.tail for a in chord_arcs]
            if len(set(chord_tails)) != len(chord_tails):
                continue
            if set(chord_tails) != heads2:
                continue
            cycle_nodes_set = {v for a in cycle_arcs for v in (a.tail, a.head)}
            neighbors: dict[int, set[int]] = {v: set() for v in cycle_nodes_set}
            for a in cycle_arcs:
                neighbors[a.tail].add(a.head)
                neighbors[a.head].add(a.tail)
            ok = True
            for a in chord_arcs:
                if a.head not in cycle_nodes_set:
                    continue
                if a.head in mixed and a.head in neighbors[a.tail]:
                    continue
                ok = False
                break
            if ok:
                return CyclePartition(
                    cycle_arcs=tuple(cycle_arcs),
                    chord_arcs=tuple(chord_arcs),
                    tails2=frozenset(tails2),
                    heads2=frozenset(heads2),
                    mixed=frozenset(mixed),
                )
    raise RuntimeError("no valid cycle partition found; certificate is not sound")
