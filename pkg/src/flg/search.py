"""Complete preimage enumeration for small undirected graphs.

A preimage of G assigns to every node x of G an arc (t_x, h_x) so that
arc adjacency reproduces exactly the edges of G.  Identifying digraph
nodes with classes of arc endpoints, a preimage is a partition of the
2|V(G)| endpoint atoms; two preimages are labeled-isomorphic iff they
induce the same partition.  The search therefore enumerates endpoint
partitions directly: nodes are placed one at a time, and a candidate
(tail class, head class) pair survives iff the adjacency it induces
with already-placed nodes matches G exactly.  Each partition is
emitted once, so the enumeration is duplicate-free by construction.

Canonical (dedup) mode restricts to partitions in which every sink
class has exactly one entering arc.  Splitting surplus arcs off a sink
never changes the intersection graph, so every preimage normalizes to
such a representative and the restriction is complete; it is also the
convention under which the wheel has 15 preimages rather than
infinitely many coarser variants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .core import Digraph, UGraph
from .intersect import ArcCertificate


@dataclass
class PreimageSet:
    """Result of an enumeration run."""

    members: list[tuple[Digraph, ArcCertificate]]
    canonical: bool
    budget_hit: bool
    node_budget: int

    @property
    def count(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class Unknown:
    """Budget-limited verdict: the search space was not exhausted."""

    node_budget: int

    def __bool__(self) -> bool:
        raise TypeError("unknown verdict has no truth value; compare explicitly")


def _placement_order(g: UGraph) -> list[int]:
    """Order nodes so each one touches as many placed nodes as possible."""
    adj = g.adjacency_sets()
    deg = [len(s) for s in adj]
    placed_links = [0] * g.n
    order: list[int] = []
    remaining = set(range(g.n))
    while remaining:
        best = max(remaining, key=lambda v: (placed_links[v], deg[v], -v))
        order.append(best)
        remaining.discard(best)
        for w in adj[best]:
            placed_links[w] += 1
    return order


def _search(
    g: UGraph,
    node_budget: int,
    sink_normal: bool,
    limit: Optional[int],
    prefix: Sequence[tuple[int, int]] = (),
    prefix_only_depth: Optional[int] = None,
) -> tuple[list[tuple[tuple[int, int], ...]], bool]:
    """Enumerate endpoint partitions.

    Returns (partition keys in original node order, budget_hit).  A key
    lists (tail class, head class) per graph node with classes numbered
    by first appearance in node order, which is a canonical labeling.

    prefix pins the first len(prefix) placements (class ids in
    placement-creation order); prefix_only_depth stops the search at
    that depth and returns the surviving prefixes instead of full
    solutions (used to split work across processes).
    """
    m = g.n
    if m == 0:
        return ([()] if prefix_only_depth is None else [()]), False

    order = _placement_order(g)
    pos = [0] * m
    for i, v in enumerate(order):
        pos[v] = i
    adj = g.adjacency_sets()
    req = [0] * m
    for i, v in enumerate(order):
        mask = 0
        for w in adj[v]:
            j = pos[w]
            if j < i:
                mask |= 1 << j
        req[i] = mask

    tails_mask: list[int] = []
    heads_mask: list[int] = []
    tails_cnt: list[int] = []
    heads_cnt: list[int] = []
    assign: list[tuple[int, int]] = [(-1, -1)] * m
    results: list[tuple[tuple[int, int], ...]] = []
    state = {"budget_hit": False, "stop": False}

    def emit() -> None:
        if prefix_only_depth is not None:
            results.append(tuple(assign[:prefix_only_depth]))
            return
        relabel: dict[int, int] = {}
        key: list[tuple[int, int]] = [(-1, -1)] * m
        for x in range(m):
            ct, ch = assign[pos[x]]
            if ct not in relabel:
                relabel[ct] = len(relabel)
            if ch not in relabel:
                relabel[ch] = len(relabel)
            key[x] = (relabel[ct], relabel[ch])
        results.append(tuple(key))
        if limit is not None and len(results) >= limit:
            state["stop"] = True

    def place(i: int, debt: int) -> None:
        if state["stop"]:
            return
        if prefix_only_depth is not None and i == prefix_only_depth:
            emit()
            return
        if i == m:
            emit()
            return
        required = req[i]
        nc = len(tails_mask)
        bit = 1 << i
        remaining_after = m - i - 1

        if i < len(prefix):
            ct_fixed, ch_fixed = prefix[i]
        else:
            ct_fixed = ch_fixed = -1

        ct_candidates: list[int] = []
        for c in range(nc):
            if (tails_mask[c] | heads_mask[c]) & ~required == 0:
                ct_candidates.append(c)
        if nc < node_budget:
            ct_candidates.append(-2)  # fresh
        elif not state["budget_hit"]:
            state["budget_hit"] = True

        for ct in ct_candidates:
            if ct_fixed != -1 and ct != (ct_fixed if ct_fixed < nc else -2):
                continue
            if ct == -2:
                reach = 0
            else:
                reach = tails_mask[ct] | heads_mask[ct]
            rest = required & ~reach

            ch_candidates: list[int] = []
            for c in range(nc):
                if c == ct:
                    continue
                tm = tails_mask[c]
                if tm & ~required == 0 and rest & ~tm == 0:
                    ch_candidates.append(c)
            if rest == 0:
                fresh_needed = 2 if ct == -2 else 1
                if nc + fresh_needed <= node_budget:
                    ch_candidates.append(-2)
                elif not state["budget_hit"]:
                    state["budget_hit"] = True

            for ch in ch_candidates:
                if ch_fixed != -1 and ch != (ch_fixed if ch_fixed < nc else -2):
                    continue

                new_debt = debt
                if ct == -2:
                    ct_id = len(tails_mask)
                    tails_mask.append(bit)
                    heads_mask.append(0)
                    tails_cnt.append(1)
                    heads_cnt.append(0)
                else:
                    ct_id = ct
                    tails_mask[ct] |= bit
                    tails_cnt[ct] += 1
                    if tails_cnt[ct] == 1 and heads_cnt[ct] >= 2:
                        new_debt -= 1
                if ch == -2:
                    ch_id = len(tails_mask)
                    tails_mask.append(0)
                    heads_mask.append(bit)
                    tails_cnt.append(0)
                    heads_cnt.append(1)
                else:
                    ch_id = ch
                    heads_mask[ch] |= bit
                    heads_cnt[ch] += 1
                    if heads_cnt[ch] == 2 and tails_cnt[ch] == 0:
                        new_debt += 1

                assign[i] = (ct_id, ch_id)
                if not sink_normal or new_debt <= remaining_after:
                    place(i + 1, new_debt)

                if ch == -2:
                    tails_mask.pop()
                    heads_mask.pop()
                    tails_cnt.pop()
                    heads_cnt.pop()
                else:
                    heads_mask[ch] ^= bit
                    heads_cnt[ch] -= 1
                if ct == -2:
                    tails_mask.pop()
                    heads_mask.pop()
                    tails_cnt.pop()
                    heads_cnt.pop()
                else:
                    tails_mask[ct] ^= bit
                    tails_cnt[ct] -= 1
                if state["stop"]:
                    return

    place(0, 0)
    return results, state["budget_hit"]


def _prefix_search_worker(
    args: tuple[int, list[tuple[int, int]], int, bool, Optional[int], tuple]
) -> tuple[list[tuple[tuple[int, int], ...]], bool]:
    n, edges, node_budget, sink_normal, limit, prefix = args
    g = UGraph(n, edges)
    return _search(g, node_budget, sink_normal, limit, prefix=prefix)


def _digraph_from_key(key: tuple[tuple[int, int], ...]) -> tuple[Digraph, ArcCertificate]:
    n = 0
    for ct, ch in key:
        n = max(n, ct + 1, ch + 1)
    d = Digraph(n, list(key))
    return d, ArcCertificate.identity(len(key))


def enumerate_preimages(
    g: UGraph,
    node_budget: Optional[int] = None,
    dedup: bool = True,
    limit: Optional[int] = None,
    jobs: int = 1,
) -> PreimageSet:
    """All preimages of g with at most node_budget digraph nodes.

    With dedup (the default) each labeled-isomorphism class of
    sink-normalized preimages appears exactly once; these are the
    counting conventions behind the locked gadget counts.  Without
    dedup, coarser preimages that merge sink endpoints are included as
    well.  node_budget defaults to 2|V(g)|, which is always sufficient;
    a smaller budget may cut the search, which is reported via
    budget_hit.
    """
    if node_budget is None:
        node_budget = 2 * g.n
    if g.n == 0:
        return PreimageSet([(Digraph(0, []), ArcCertificate(()))], dedup, False, node_budget)

    if jobs > 1 and g.n > 4 and (limit is None or limit > 1):
        keys, budget_hit = _parallel_search(g, node_budget, dedup, limit, jobs)
    else:
        keys, budget_hit = _search(g, node_budget, sink_normal=dedup, limit=limit)

    if dedup and len(set(keys)) != len(keys):
        raise RuntimeError("duplicate partitions emitted; enumeration bug")
    members = [_digraph_from_key(key) for key in keys]
    return PreimageSet(members, dedup, budget_hit, node_budget)


def _parallel_search(
    g: UGraph,
    node_budget: int,
    sink_normal: bool,
    limit: Optional[int],
    jobs: int,
) -> tuple[list[tuple[tuple[int, int], ...]], bool]:
    """Fan the search out over surviving placement prefixes.

    Results are merged in prefix order, so the outcome is identical to
    a sequential run.
    """
    import multiprocessing

    depth = min(4, g.n)
    prefixes, hit0 = _search(
        g, node_budget, sink_normal, limit=None, prefix_only_depth=depth
    )
    if not prefixes:
        return [], hit0
    edges = sorted(g.edges)
    tasks = [(g.n, edges, node_budget, sink_normal, limit, p) for p in prefixes]
    keys: list[tuple[tuple[int, int], ...]] = []
    budget_hit = hit0
    with multiprocessing.Pool(jobs) as pool:
        for sub_keys, sub_hit in pool.imap(_prefix_search_worker, tasks, chunksize=1):
            budget_hit = budget_hit or sub_hit
            keys.extend(sub_keys)
            if limit is not None and len(keys) >= limit:
                pool.terminate()
                keys = keys[:limit]
                break
    return keys, budget_hit


def labeled_digraph_iso(
    d1: Digraph, d2: Digraph, cert1: ArcCertificate, cert2: ArcCertificate
) -> bool:
    """True iff some digraph-node bijection maps arc cert1(x) to cert2(x) for all x.

    The arc correspondence forces the bijection on every arc endpoint,
    so it suffices to propagate those constraints and check injectivity;
    leftover nodes are isolated on both sides and match freely.
    """
    if d1.n != d2.n or d1.m != d2.m or len(cert1) != len(cert2):
        return False
    phi: dict[int, int] = {}
    for x in range(len(cert1.mapping)):
        a1 = d1.arcs[cert1[x]]
        a2 = d2.arcs[cert2[x]]
        for s, t in ((a1.tail, a2.tail), (a1.head, a2.head)):
            known = phi.get(s)
            if known is None:
                phi[s] = t
            elif known != t:
                return False
    return len(set(phi.values())) == len(phi)


def has_preimage(
    g: UGraph, node_budget: Optional[int] = None, jobs: int = 1
) -> "bool | Unknown":
    """Decide whether g is an intersection graph of some digraph.

    Returns True (a preimage exists), False (exhaustive search found
    none; definitive since the default budget is always sufficient), or
    Unknown when a smaller budget cut the search.
    """
    result = enumerate_preimages(g, node_budget, dedup=True, limit=1, jobs=jobs)
    if result.members:
        return True
    if result.budget_hit:
        return Unknown(result.node_budget)
    return False


def find_preimage(
    g: UGraph, node_budget: Optional[int] = None, jobs: int = 1
) -> Optional[tuple[Digraph, ArcCertificate]]:
    """A single preimage witness of g, or None."""
    result = enumerate_preimages(g, node_budget, dedup=True, limit=1, jobs=jobs)
    return result.members[0] if result.members else None
