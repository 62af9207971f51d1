"""Linear-time recognizer for triangle-free facility location graphs.

The pipeline removes every edge whose two endpoints both have degree 2
(degrees measured once, on the input), accepts iff every surviving
component has at most one independent cycle, builds a preimage per
component (trees and unicyclic components have direct constructions),
and reinserts the removed edges one at a time by local arc surgery.
Components that are bare cycles are exempt from the removal and built
directly as directed cycles.

Reinsertion classifies how each endpoint's arc connects to the two arcs
being identified (three connection types), rewrites incompatible type
pairs, then merges the two arcs into one.  Every rewrite preserves the
running invariant that each sink of the preimage has exactly one
entering arc; the initial per-component constructions satisfy it too.

The working state is four parallel arrays (arc tails, arc heads, arc
liveness, node union-find parents).  Node identification unions two
ids; arc endpoints are resolved through the union-find when read, so a
merge never rescans the arc list and the whole rebuild stays linear.
The bulk passes (degrees, adjacency layout, reduction, final node
renumbering) run vectorized over numpy arrays; the pointer-chasing
phases work on plain lists.
"""

from dataclasses import dataclass
from itertools import chain
from typing import Optional

import numpy as np

from .core import UGraph, Digraph, cyclomatic_profile, find_triangle
from .intersect import ArcCertificate, arcs_adjacent, check_certificate

__all__ = [
    "ReductionTrace",
    "ConnectionType",
    "Refusal",
    "reduce_graph",
    "is_fl_trianglefree",
    "build_preimage_component",
    "reinsert_edge",
    "recognize",
]


@dataclass(frozen=True)
class ReductionTrace:
    """Removed degree-2/degree-2 edges, in order, and what is left."""

    removed_edges: tuple[tuple[int, int], ...]
    reduced_graph: UGraph


@dataclass(frozen=True)
class ConnectionType:
    """How a neighbor's arc touches one of the two arcs being identified.

    kind "I": the neighbor's arc enters the identified arc's tail.
    kind "II": both arcs leave the shared node (tails coincide).
    kind "III": the identified arc enters the neighbor's arc's tail.
    """

    kind: str

    def __post_init__(self) -> None:
        if self.kind not in ("I", "II", "III"):
            raise ValueError("connection type must be I, II or III")


@dataclass(frozen=True)
class Refusal:
    """Why recognition failed: a reduced component with too many cycles."""

    component: tuple[int, ...]
    cycles: int


def reduce_graph(g: UGraph) -> ReductionTrace:
    """Remove every edge whose endpoints both have degree 2 in g.

    Degrees are measured once, on g itself; removal is simultaneous,
    not iterated.  The removed edges are reported in sorted order.
    """
    tri = find_triangle(g)
    if tri is not None:
        raise ValueError("graph has a triangle %r" % (tri,))
    deg = g.degrees()
    removed = sorted(e for e in g.edges if deg[e[0]] == 2 and deg[e[1]] == 2)
    kept = g.edges - set(removed)
    return ReductionTrace(tuple(removed), UGraph(g.n, kept))


def is_fl_trianglefree(g: UGraph) -> bool:
    """Decide membership for a triangle-free graph.

    True iff every component of the reduced graph has at most one
    independent cycle.
    """
    reduced = reduce_graph(g).reduced_graph
    return all(cyc <= 1 for _, _, _, cyc in cyclomatic_profile(reduced))


# ---------------------------------------------------------------------------
# Working state.  All helpers operate on the same four parallel arrays:
#   parent  union-find over digraph node ids (append-only)
#   tails, heads  raw arc endpoints, resolved through the union-find
#   alive   arc liveness flags (killed arcs stay in place)
# plus cert, the per-graph-node arc index.  Hot paths guard each find()
# with a direct parent lookup because fresh nodes are their own root.


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def _attach_pendant(
    parent: list[int],
    tails: list[int],
    heads: list[int],
    alive: bytearray,
    v: int,
    z: Optional[int],
) -> int:
    """Add an arc adjacent to arc v only; v's node has degree <= 1.

    z is the arc of v's unique current neighbor, if any.  When z shares
    v's tail, no arc can leave v's head (it would be a second neighbor),
    so v is safely redirected to a fresh head and the pendant leaves it.
    """
    tv = tails[v]
    if parent[tv] != tv:
        tv = _find(parent, tv)
    if z is not None:
        zt = tails[z]
        if parent[zt] != zt:
            zt = _find(parent, zt)
        if zt == tv:
            fresh = len(parent)
            parent.append(fresh)
            parent.append(fresh + 1)
            heads[v] = fresh
            tails.append(fresh)
            heads.append(fresh + 1)
            alive.append(1)
            return len(tails) - 1
    fresh = len(parent)
    parent.append(fresh)
    tails.append(fresh)
    heads.append(tv)
    alive.append(1)
    return len(tails) - 1


_COMPATIBLE = {("I", "I"), ("I", "III"), ("III", "I"), ("III", "II"), ("II", "III")}


def _identify_step(
    parent: list[int],
    tails: list[int],
    heads: list[int],
    alive: bytearray,
    cert: list[int],
    b: int,
    c: int,
    bpp: int,
    a_arc: Optional[int],
    d_arc: Optional[int],
) -> None:
    """Merge b's arc with the pendant arc bpp attached next to c's arc.

    Classifies both connections, rewrites type II sides to type III
    where the pair is incompatible, repairs the III/III case through
    c's side, then removes both arcs and shrinks tail with tail and
    head with head.
    """
    bp = cert[b]
    r = tails[bp]
    if parent[r] != r:
        r = _find(parent, r)
    s = heads[bp]
    if parent[s] != s:
        s = _find(parent, s)

    type_a = None
    if a_arc is not None:
        at = tails[a_arc]
        if parent[at] != at:
            at = _find(parent, at)
        ah = heads[a_arc]
        if parent[ah] != ah:
            ah = _find(parent, ah)
        if at == s and ah == r:
            # Antiparallel neighbor: give b's arc a private fresh head.
            s = len(parent)
            parent.append(s)
            heads[bp] = s
        if ah == r:
            type_a = "I"
        elif at == r:
            type_a = "II"
        elif s == at:
            type_a = "III"
        else:
            raise AssertionError("arc of b's neighbor is not adjacent to b's arc")

    c_arc = cert[c]
    t = tails[bpp]
    if parent[t] != t:
        t = _find(parent, t)
    u = heads[bpp]
    if parent[u] != u:
        u = _find(parent, u)
    ct = tails[c_arc]
    if parent[ct] != ct:
        ct = _find(parent, ct)
    ch = heads[c_arc]
    if parent[ch] != ch:
        ch = _find(parent, ch)
    if ct == u and ch == t:
        # Antiparallel pendant: redirect it to a private fresh head.
        u = len(parent)
        parent.append(u)
        heads[bpp] = u
    if ch == t:
        type_c = "I"
    elif ct == t:
        type_c = "II"
    elif u == ct:
        type_c = "III"
    else:
        raise AssertionError("pendant arc is not adjacent to c's arc")

    if type_a == "II" and type_c != "III":
        # Move a's tail onto b's private head: a now enters from there.
        tails[a_arc] = s
        type_a = "III"
    if type_c == "II" and type_a == "I":
        tails[c_arc] = u
        type_c = "III"
    if type_a == "III" and type_c == "III":
        if d_arc is None:
            # c's arc has no other neighbor; share the pendant's tail.
            tails[c_arc] = t
            type_c = "II"
        else:
            dt = tails[d_arc]
            if parent[dt] != dt:
                dt = _find(parent, dt)
            dh = heads[d_arc]
            if parent[dh] != dh:
                dh = _find(parent, dh)
            if ch == dt:
                # c enters d: move c's tail to the pendant's tail.
                tails[c_arc] = t
                type_c = "II"
            elif dh == ct:
                # d enters c: run the pendant from c's head into its old tail.
                tails[bpp] = ch
                heads[bpp] = t
                t, u = ch, t
                type_c = "I"
            else:
                raise AssertionError("III/III with no directed link between c and d")
    if type_a is not None and (type_a, type_c) not in _COMPATIBLE:
        raise AssertionError("incompatible connection pair %r" % ((type_a, type_c),))

    alive[bp] = 0
    alive[bpp] = 0
    parent[r] = t
    su = _find(parent, s)
    uu = _find(parent, u)
    parent[su] = uu
    tails.append(_find(parent, t))
    heads.append(uu)
    alive.append(1)
    cert[b] = len(tails) - 1


def _compact(
    parent: list[int],
    tails: list[int],
    heads: list[int],
    alive: bytearray,
    cert: list[int],
) -> tuple[Digraph, ArcCertificate]:
    """Materialize the surviving arcs with contiguous node ids.

    Nodes are numbered by first appearance over the live arcs in order,
    tail before head.  All three steps (union-find resolution, the
    renumbering, the certificate remap) are vectorized.
    """
    p = np.array(parent, dtype=np.int64)
    while True:
        pp = p[p]
        if np.array_equal(pp, p):
            break
        p = pp
    live = np.flatnonzero(np.frombuffer(alive, dtype=np.uint8))
    ends = np.empty(2 * len(live), dtype=np.int64)
    ends[0::2] = p[np.array(tails, dtype=np.int64)[live]]
    ends[1::2] = p[np.array(heads, dtype=np.int64)[live]]
    uniq, first = np.unique(ends, return_index=True)
    new_id = np.empty(len(uniq), dtype=np.int64)
    new_id[np.argsort(first, kind="stable")] = np.arange(len(uniq))
    renum = new_id[np.searchsorted(uniq, ends)]
    d = Digraph(len(uniq), np.column_stack((renum[0::2], renum[1::2])).tolist())
    arc_map = np.full(len(tails), -1, dtype=np.int64)
    arc_map[live] = np.arange(len(live))
    remapped = arc_map[np.array(cert, dtype=np.int64)] if cert else np.empty(0, np.int64)
    return d, ArcCertificate(tuple(remapped.tolist()))


def _build_tree(
    parent: list[int],
    tails: list[int],
    heads: list[int],
    alive: bytearray,
    cert: list[int],
    adj: "list[list[int]] | dict[int, list[int]]",
    root: int,
) -> None:
    """One arc per node: root gets (f, extra), children enter the parent's tail."""
    f = len(parent)
    parent.append(f)
    parent.append(f + 1)
    tails.append(f)
    heads.append(f + 1)
    alive.append(1)
    cert[root] = len(tails) - 1
    tail_of = {root: f}
    stack = [root]
    seen = {root}
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if w in seen:
                continue
            seen.add(w)
            fw = len(parent)
            parent.append(fw)
            tails.append(fw)
            heads.append(tail_of[x])
            alive.append(1)
            cert[w] = len(tails) - 1
            tail_of[w] = fw
            stack.append(w)


def _build_unicyclic(
    parent: list[int],
    tails: list[int],
    heads: list[int],
    alive: bytearray,
    cert: list[int],
    adj: "list[list[int]] | dict[int, list[int]]",
    comp: list[int],
) -> None:
    """Directed cycle on the unique cycle, hanging trees entering their roots."""
    deg = {x: len(adj[x]) for x in comp}
    peel = [x for x in comp if deg[x] == 1]
    on_cycle = dict.fromkeys(comp, True)
    while peel:
        x = peel.pop()
        on_cycle[x] = False
        for w in adj[x]:
            if on_cycle[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    peel.append(w)
    cycle = [next(x for x in comp if on_cycle[x])]
    prev = -1
    while True:
        here = cycle[-1]
        step = next(w for w in adj[here] if on_cycle[w] and w != prev)
        if step == cycle[0]:
            break
        cycle.append(step)
        prev = here
    tail_of = {}
    for x in cycle:
        fx = len(parent)
        parent.append(fx)
        tail_of[x] = fx
    k = len(cycle)
    for i, x in enumerate(cycle):
        tails.append(tail_of[x])
        heads.append(tail_of[cycle[(i + 1) % k]])
        alive.append(1)
        cert[x] = len(tails) - 1
    stack = list(cycle)
    seen = set(cycle)
    while stack:
        x = stack.pop()
        for w in adj[x]:
            if w in seen:
                continue
            seen.add(w)
            fw = len(parent)
            parent.append(fw)
            tails.append(fw)
            heads.append(tail_of[x])
            alive.append(1)
            cert[w] = len(tails) - 1
            tail_of[w] = fw
            stack.append(w)


def build_preimage_component(g: UGraph) -> tuple[Digraph, ArcCertificate]:
    """Preimage of a connected graph with at most one cycle.

    Tree: pick the smallest node as root r with arc (u0, v0); every
    child's arc runs from a fresh node into its parent's tail.
    Unicyclic: the cycle becomes a directed cycle and each hanging tree
    enters its cycle node.
    """
    cyc = g.m - g.n + 1
    adj = g.adjacency()
    seen = 0
    stack = [0] if g.n else []
    mark = [False] * g.n
    if stack:
        mark[0] = True
        seen = 1
        while stack:
            x = stack.pop()
            for w in adj[x]:
                if not mark[w]:
                    mark[w] = True
                    seen += 1
                    stack.append(w)
    if seen != g.n:
        raise ValueError("expected a connected graph")
    if cyc > 1:
        raise ValueError("component has %d independent cycles" % cyc)
    parent: list[int] = []
    tails: list[int] = []
    heads: list[int] = []
    alive = bytearray()
    cert = [-1] * g.n
    if cyc == 0:
        _build_tree(parent, tails, heads, alive, cert, adj, 0)
    else:
        _build_unicyclic(parent, tails, heads, alive, cert, adj, list(range(g.n)))
    return _compact(parent, tails, heads, alive, cert)


def reinsert_edge(
    d: Digraph, cert: ArcCertificate, b: int, c: int
) -> tuple[Digraph, ArcCertificate]:
    """Turn a preimage of (G - bc) + pendant into a preimage of G.

    cert maps the nodes of the augmented graph; its last node is the
    pendant attached next to c.  d must be sink-normalized (every sink
    has exactly one entering arc).  The pendant's arc and b's arc are
    identified after the type rewrites, and the certificate for G is
    returned (the pendant node disappears).
    """
    n_aug = len(cert)
    if n_aug != d.m:
        raise ValueError("certificate does not cover the digraph's arcs")
    target_n = n_aug - 1
    if not (0 <= b < target_n and 0 <= c < target_n) or b == c:
        raise ValueError("b and c must be distinct nodes of the target graph")
    out_deg = d.out_degrees()
    in_deg = d.in_degrees()
    for v in range(d.n):
        if out_deg[v] == 0 and in_deg[v] >= 2:
            raise ValueError("digraph is not sink-normalized at node %d" % v)

    parent = list(range(d.n))
    tails = [a.tail for a in d.arcs]
    heads = [a.head for a in d.arcs]
    alive = bytearray([1]) * d.m
    certs = list(cert.mapping)
    bpp = certs[target_n]

    def neighbors_of(i: int) -> list[int]:
        return [j for j in range(d.m) if j != i and arcs_adjacent(d.arcs[i], d.arcs[j])]

    if neighbors_of(bpp) != [certs[c]]:
        raise ValueError("the pendant arc must touch exactly c's arc")
    adj_b = neighbors_of(certs[b])
    if len(adj_b) > 1:
        raise ValueError("node b must have degree <= 1 without the edge bc")
    adj_c = [j for j in neighbors_of(certs[c]) if j != bpp]
    if len(adj_c) > 1:
        raise ValueError("node c must have degree <= 1 without the edge bc")
    a_arc = adj_b[0] if adj_b else None
    d_arc = adj_c[0] if adj_c else None
    _identify_step(parent, tails, heads, alive, certs, b, c, bpp, a_arc, d_arc)
    return _compact(parent, tails, heads, alive, certs[:target_n])


def recognize(
    g: UGraph, debug: bool = False
) -> tuple[Digraph, ArcCertificate] | Refusal:
    """Decide whether triangle-free g is an intersection graph of arcs.

    On acceptance, returns (D, cert) with check_certificate(g, D, cert)
    true.  On refusal, returns the offending reduced component and its
    cycle count.  With debug=True the certificate is re-checked after
    every reinsertion step.
    """
    n = g.n
    m = g.m
    # One pass turns the edge set into an endpoint matrix; the degree
    # and adjacency layouts below are all vectorized off it.
    e = np.fromiter(chain.from_iterable(g.edges), dtype=np.int64, count=2 * m)
    e = e.reshape(m, 2)
    deg_np = np.bincount(e.ravel(), minlength=n)

    # Adjacency in compressed form; off[v]:off[v+1] slices flat.
    ends = np.concatenate((e[:, 0], e[:, 1]))
    other = np.concatenate((e[:, 1], e[:, 0]))
    flat_np = other[np.argsort(ends, kind="stable")]
    off_np = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(deg_np, out=off_np[1:])
    deg = deg_np.tolist()
    off = off_np.tolist()
    flat = flat_np.tolist()

    # Triangle scan: mark u's neighborhood, walk two steps from u.
    mark = bytearray(n)
    for u in range(n):
        if deg[u] < 2:
            continue
        nbrs = flat[off[u] : off[u + 1]]
        for w in nbrs:
            mark[w] = 1
        for v in nbrs:
            if v > u and deg[v] >= 2:
                for w in flat[off[v] : off[v + 1]]:
                    if mark[w] and w != u:
                        raise ValueError("graph has a triangle %r" % ((u, v, w),))
        for w in nbrs:
            mark[w] = 0

    # Reduction: drop each edge whose endpoints both have degree 2,
    # remembering the two neighbors of every degree-2 node for the
    # reinsertion phase.
    deg2 = deg_np == 2
    two = np.flatnonzero(deg2)
    pos = off_np[two]
    nb1_np = np.full(n, -1, dtype=np.int64)
    nb2_np = np.full(n, -1, dtype=np.int64)
    nb1_np[two] = flat_np[pos]
    nb2_np[two] = flat_np[pos + 1]
    nb1 = nb1_np.tolist()
    nb2 = nb2_np.tolist()

    # Components that are bare cycles already have exactly one cycle, so
    # removing their edges only to stitch them back is wasted work (and
    # the direct build returns the directed cycle).  Walk each chain of
    # degree-2 nodes once; a walk that closes marks a bare cycle.
    pure = bytearray(n)
    seen2 = bytearray(n)
    for v0 in two.tolist():
        if seen2[v0]:
            continue
        seen2[v0] = 1
        path = [v0]
        prev, x = v0, nb1[v0]
        while x != v0 and deg[x] == 2:
            seen2[x] = 1
            path.append(x)
            prev, x = x, (nb1[x] if nb1[x] != prev else nb2[x])
        if x == v0:
            for y in path:
                pure[y] = 1
        else:
            prev, x = v0, nb2[v0]
            while deg[x] == 2 and not seen2[x]:
                seen2[x] = 1
                prev, x = x, (nb1[x] if nb1[x] != prev else nb2[x])
    pure_np = np.frombuffer(pure, dtype=np.uint8).astype(bool)
    rm = deg2[e[:, 0]] & deg2[e[:, 1]] & ~(pure_np[e[:, 0]] | pure_np[e[:, 1]])
    removed = e[rm].tolist()
    kept_np = e[~rm]

    # Components of the reduced graph, checked before anything is built.
    cur_deg_np = np.bincount(kept_np.ravel(), minlength=n)
    kends = np.concatenate((kept_np[:, 0], kept_np[:, 1]))
    kother = np.concatenate((kept_np[:, 1], kept_np[:, 0]))
    kflat = kother[np.argsort(kends, kind="stable")].tolist()
    koff_np = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(cur_deg_np, out=koff_np[1:])
    koff = koff_np.tolist()
    cur_deg = cur_deg_np.tolist()

    # Per-component preimages, built during the component sweep itself.
    # Isolated nodes (the common case after a heavy reduction) each get
    # a private fresh arc.  Trees (the next most common) are built
    # optimistically while the sweep runs; a component that turns out
    # unicyclic is rolled back and rebuilt around its cycle, and one
    # with two cycles refuses outright.
    parent: list[int] = []
    tails: list[int] = []
    heads: list[int] = []
    alive = bytearray()
    cert = [-1] * n
    singles = np.flatnonzero(cur_deg_np == 0).tolist()
    if singles:
        k = len(singles)
        parent.extend(range(2 * k))
        tails.extend(range(0, 2 * k, 2))
        heads.extend(range(1, 2 * k, 2))
        alive.extend(b"\x01" * k)
        for i, v in enumerate(singles):
            cert[v] = i
    visited = bytearray(n)
    tail_of = [0] * n
    for v0 in range(n):
        if visited[v0] or not cur_deg[v0]:
            continue
        cp_arc = len(tails)
        cp_node = len(parent)
        visited[v0] = 1
        parent.append(cp_node)
        parent.append(cp_node + 1)
        tails.append(cp_node)
        heads.append(cp_node + 1)
        alive.append(1)
        cert[v0] = cp_arc
        tail_of[v0] = cp_node
        comp = [v0]
        stack = [v0]
        half = 0
        while stack:
            x = stack.pop()
            half += cur_deg[x]
            tx = tail_of[x]
            for w in kflat[koff[x] : koff[x + 1]]:
                if not visited[w]:
                    visited[w] = 1
                    fw = len(parent)
                    parent.append(fw)
                    tails.append(fw)
                    heads.append(tx)
                    alive.append(1)
                    cert[w] = len(tails) - 1
                    tail_of[w] = fw
                    comp.append(w)
                    stack.append(w)
        cyc = half // 2 - len(comp) + 1
        if cyc == 0:
            continue
        del parent[cp_node:]
        del tails[cp_arc:]
        del heads[cp_arc:]
        del alive[cp_arc:]
        if cyc > 1:
            return Refusal(tuple(sorted(comp)), cyc)
        adj = {x: kflat[koff[x] : koff[x + 1]] for x in comp}
        _build_unicyclic(parent, tails, heads, alive, cert, adj, comp)

    # Reinsert removed edges in reverse removal order.  Each endpoint
    # currently has degree 0 or 1; with degree 0 its isolated arc is
    # replaced by a fresh pendant, otherwise the full identification
    # machinery runs.
    cur_edges = set(map(tuple, kept_np.tolist())) if debug else None
    for b, c in reversed(removed):
        deg_b = cur_deg[b]
        deg_c = cur_deg[c]
        if deg_b == 0:
            alive[cert[b]] = 0
            if deg_c:
                oc = nb1[c] if nb1[c] != b else nb2[c]
                z = cert[oc]
            else:
                z = None
            cert[b] = _attach_pendant(parent, tails, heads, alive, cert[c], z)
        elif deg_c == 0:
            alive[cert[c]] = 0
            ob = nb1[b] if nb1[b] != c else nb2[b]
            cert[c] = _attach_pendant(parent, tails, heads, alive, cert[b], cert[ob])
        else:
            ob = nb1[b] if nb1[b] != c else nb2[b]
            oc = nb1[c] if nb1[c] != b else nb2[c]
            assert ob != oc, "common neighbor of b and c would be a triangle"
            pendant = _attach_pendant(parent, tails, heads, alive, cert[c], cert[oc])
            _identify_step(
                parent, tails, heads, alive, cert, b, c, pendant, cert[ob], cert[oc]
            )
        cur_deg[b] = deg_b + 1
        cur_deg[c] = deg_c + 1
        if cur_edges is not None:
            cur_edges.add((b, c) if b < c else (c, b))
            d_dbg, cert_dbg = _compact(parent, tails, heads, alive, list(cert))
            if not check_certificate(UGraph(n, cur_edges), d_dbg, cert_dbg):
                raise AssertionError(
                    "certificate lost after reinserting edge (%d, %d)" % (b, c)
                )
    result = _compact(parent, tails, heads, alive, cert)
    if debug and not check_certificate(g, *result):
        raise AssertionError("final certificate check failed")
    return result
