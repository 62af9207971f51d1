import random
from itertools import combinations

import pytest

from flg.core import Digraph, UGraph
from flg.intersect import ArcCertificate, check_certificate, intersection_graph, normalize_sinks
from flg.recognize import (
    ConnectionType,
    Refusal,
    build_preimage_component,
    is_fl_trianglefree,
    recognize,
    reduce_graph,
    reinsert_edge,
)
from flg.search import has_preimage


def cycle(k, shift=0):
    return [(shift + i, shift + (i + 1) % k) for i in range(k)]


def path(k, shift=0):
    return [(shift + i, shift + i + 1) for i in range(k - 1)]


def double_cycle_with_leaves():
    # two 4-cycles, every cycle node carrying a pendant leaf, joined by
    # a 2-edge path; nothing reduces, one component keeps two cycles
    edges = cycle(4) + cycle(4, 4)
    edges += [(i, 8 + i) for i in range(8)]
    edges += [(3, 16), (16, 4)]
    return UGraph(17, edges)


def sub_k4(inner=2):
    # every K4 edge replaced by a path through `inner` fresh nodes
    edges = []
    nxt = 4
    for u, v in combinations(range(4), 2):
        prev = u
        for _ in range(inner):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return UGraph(nxt, edges)


def random_trianglefree(rng, max_n=30):
    n = rng.randrange(1, max_n + 1)
    adj = [set() for _ in range(n)]
    edges = []
    for _ in range(rng.randrange(0, 2 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u == v or v in adj[u] or adj[u] & adj[v]:
            continue
        adj[u].add(v)
        adj[v].add(u)
        edges.append((u, v))
    return UGraph(n, edges)


def accept(g, debug=True):
    result = recognize(g, debug=debug)
    assert not isinstance(result, Refusal), result
    d, cert = result
    assert check_certificate(g, d, cert)
    return d, cert


# ---------------------------------------------------------------------------
# reduce_graph / is_fl_trianglefree


def test_reduce_c4_removes_everything():
    trace = reduce_graph(UGraph(4, cycle(4)))
    assert sorted(trace.removed_edges) == sorted(tuple(sorted(e)) for e in cycle(4))
    assert trace.reduced_graph.m == 0


def test_reduce_p3_removes_nothing():
    trace = reduce_graph(UGraph(3, path(3)))
    assert trace.removed_edges == ()
    assert trace.reduced_graph == UGraph(3, path(3))


def test_reduce_uses_one_degree_snapshot():
    # in the path 0-1-2-3-4 both middle edges qualify simultaneously
    trace = reduce_graph(UGraph(5, path(5)))
    assert trace.removed_edges == ((1, 2), (2, 3))


def test_reduce_rejects_triangle():
    with pytest.raises(ValueError, match="triangle"):
        reduce_graph(UGraph(3, [(0, 1), (1, 2), (0, 2)]))


def test_reduce_is_label_invariant():
    rng = random.Random(5)
    for _ in range(50):
        g = random_trianglefree(rng, max_n=12)
        trace = reduce_graph(g)
        perm = list(range(g.n))
        rng.shuffle(perm)
        g2 = UGraph(g.n, [(perm[u], perm[v]) for u, v in g.edges])
        want = sorted(tuple(sorted((perm[u], perm[v]))) for u, v in trace.removed_edges)
        assert want == sorted(reduce_graph(g2).removed_edges)


def test_membership_c4_true():
    assert is_fl_trianglefree(UGraph(4, cycle(4)))


def test_membership_double_cycle_false():
    assert not is_fl_trianglefree(double_cycle_with_leaves())


def test_membership_subdivided_k4_true():
    assert is_fl_trianglefree(sub_k4())


def test_membership_short_subdivision_false():
    # with a single inner node per edge no edge has two degree-2 ends,
    # so nothing reduces and all three cycles survive
    g = sub_k4(inner=1)
    r = recognize(g)
    assert isinstance(r, Refusal) and r.cycles == 3
    assert has_preimage(g) is False


# ---------------------------------------------------------------------------
# build_preimage_component


def test_build_single_node():
    d, cert = build_preimage_component(UGraph(1, []))
    assert d.m == 1 and cert.mapping == (0,)


def test_build_star_layout():
    d, cert = build_preimage_component(UGraph(4, [(0, 1), (0, 2), (0, 3)]))
    assert list(d.arcs) == [(0, 1), (2, 0), (3, 0), (4, 0)]
    assert cert.mapping == (0, 1, 2, 3)
    assert check_certificate(UGraph(4, [(0, 1), (0, 2), (0, 3)]), d, cert)


def test_build_c5_is_directed_cycle():
    g = UGraph(5, cycle(5))
    d, cert = build_preimage_component(g)
    assert all(x == 1 for x in d.out_degrees())
    assert all(x == 1 for x in d.in_degrees())
    assert check_certificate(g, d, cert)


def test_build_unicyclic_with_hanging_trees():
    g = UGraph(8, cycle(4) + [(0, 4), (4, 5), (1, 6), (6, 7)])
    d, cert = build_preimage_component(g)
    assert check_certificate(g, d, cert)


def test_build_rejects_disconnected():
    with pytest.raises(ValueError, match="connected"):
        build_preimage_component(UGraph(2, []))


def test_build_rejects_two_cycles():
    theta = UGraph(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    with pytest.raises(ValueError, match="2 independent cycles"):
        build_preimage_component(theta)


# ---------------------------------------------------------------------------
# reinsert_edge


def test_reinsert_p4_middle_edge():
    # preimage of (P4 minus its middle edge) plus the pendant node 4 on 2
    d0 = Digraph(7, [(2, 0), (0, 1), (3, 4), (5, 3), (6, 3)])
    cert0 = ArcCertificate((0, 1, 2, 3, 4))
    assert check_certificate(UGraph(5, [(0, 1), (2, 3), (2, 4)]), d0, cert0)
    d, cert = reinsert_edge(d0, cert0, 1, 2)
    assert check_certificate(UGraph(4, path(4)), d, cert)


def test_reinsert_type_two_against_type_two():
    # both sides share tails with their neighbors (the empty cell of the
    # compatibility table); one side must be rewritten to type III first
    d0 = Digraph(8, [(0, 1), (0, 2), (3, 4), (4, 6), (3, 7)])
    cert0 = ArcCertificate((0, 1, 2, 3, 4))
    assert check_certificate(UGraph(5, [(0, 1), (2, 3), (2, 4)]), d0, cert0)
    d, cert = reinsert_edge(d0, cert0, 1, 2)
    assert check_certificate(UGraph(4, path(4)), d, cert)


def test_reinsert_rebuilds_c6_as_directed_cycle():
    # grow the path 0-1-...-5 edge by edge, then close the cycle; every
    # pendant is a fresh arc entering the tail of c's arc
    k = 6
    d = Digraph(2 * k, [(2 * i, 2 * i + 1) for i in range(k)])
    cert = ArcCertificate(tuple(range(k)))
    edges = []
    for b, c in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]:
        arcs = [(a.tail, a.head) for a in d.arcs]
        fresh = d.n
        arcs.append((fresh, arcs[cert.mapping[c]][0]))
        d_aug = Digraph(d.n + 1, arcs)
        cert_aug = ArcCertificate(tuple(cert.mapping) + (len(arcs) - 1,))
        d, cert = reinsert_edge(d_aug, cert_aug, b, c)
        edges.append((b, c))
        assert check_certificate(UGraph(k, edges), d, cert)
    assert d.n == k and d.m == k
    assert all(x == 1 for x in d.out_degrees())
    assert all(x == 1 for x in d.in_degrees())


def test_reinsert_rejects_bad_certificate_length():
    d = Digraph(4, [(0, 1), (2, 3)])
    with pytest.raises(ValueError, match="cover"):
        reinsert_edge(d, ArcCertificate((0,)), 0, 1)


def test_reinsert_rejects_equal_endpoints():
    d = Digraph(6, [(0, 1), (2, 3), (4, 5)])
    with pytest.raises(ValueError, match="distinct"):
        reinsert_edge(d, ArcCertificate((0, 1, 2)), 1, 1)


def test_reinsert_rejects_unnormalized_sink():
    d = Digraph(5, [(0, 3), (1, 3), (2, 4)])
    with pytest.raises(ValueError, match="sink-normalized"):
        reinsert_edge(d, ArcCertificate((0, 1, 2)), 0, 1)


def test_reinsert_rejects_floating_pendant():
    d = Digraph(6, [(0, 1), (2, 3), (4, 5)])
    with pytest.raises(ValueError, match="pendant"):
        reinsert_edge(d, ArcCertificate((0, 1, 2)), 0, 1)


def test_reinsert_rejects_busy_endpoint():
    d = Digraph(7, [(0, 1), (2, 0), (3, 0), (4, 5), (6, 4)])
    cert = ArcCertificate((0, 1, 2, 3, 4))
    with pytest.raises(ValueError, match="degree"):
        reinsert_edge(d, cert, 0, 3)


# ---------------------------------------------------------------------------
# recognize


def test_recognize_c4_gives_directed_cycle():
    d, cert = accept(UGraph(4, cycle(4)))
    assert all(x == 1 for x in d.out_degrees())
    assert all(x == 1 for x in d.in_degrees())


def test_recognize_star_layout():
    d, cert = accept(UGraph(4, [(0, 1), (0, 2), (0, 3)]))
    assert sorted(d.arcs) == [(0, 1), (2, 0), (3, 0), (4, 0)]


def test_recognize_p4_gives_directed_path():
    d, cert = accept(UGraph(4, path(4)))
    assert all(x <= 1 for x in d.out_degrees())
    assert all(x <= 1 for x in d.in_degrees())


def test_recognize_trivial_graphs():
    for g in (UGraph(0, []), UGraph(1, []), UGraph(2, []), UGraph(2, [(0, 1)])):
        d, cert = accept(g)
        assert d.m == g.n


def test_recognize_refuses_double_cycle():
    g = double_cycle_with_leaves()
    r = recognize(g)
    assert isinstance(r, Refusal)
    assert r.cycles == 2
    assert r.component == tuple(range(17))
    assert has_preimage(g) is False


def test_recognize_rejects_triangle():
    with pytest.raises(ValueError, match="triangle"):
        recognize(UGraph(4, [(0, 1), (1, 2), (0, 2), (2, 3)]))


def test_recognize_subdivided_k4():
    accept(sub_k4())


def test_recognize_disjoint_cycles_and_trees():
    g = UGraph(12, cycle(4) + cycle(5, 4) + [(9, 10)])
    accept(g)


def test_recognize_is_deterministic():
    g = UGraph(9, cycle(4) + [(3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (4, 8)])
    first = recognize(g)
    second = recognize(g)
    assert first == second


def test_recognize_matches_search_exhaustively_to_five_nodes():
    for n in range(6):
        pairs = list(combinations(range(n), 2))
        for bits in range(1 << len(pairs)):
            edges = [pairs[i] for i in range(len(pairs)) if bits >> i & 1]
            masks = [0] * n
            for u, v in edges:
                masks[u] |= 1 << v
                masks[v] |= 1 << u
            if any(masks[u] & masks[v] for u, v in edges):
                continue
            g = UGraph(n, edges)
            result = recognize(g, debug=True)
            if isinstance(result, Refusal):
                assert has_preimage(g) is False, sorted(g.edges)
            else:
                assert check_certificate(g, *result)
                assert has_preimage(g) is True, sorted(g.edges)


def test_recognize_sound_on_random_graphs():
    rng = random.Random(11)
    for _ in range(300):
        g = random_trianglefree(rng)
        result = recognize(g, debug=True)
        if not isinstance(result, Refusal):
            assert check_certificate(g, *result)


def test_recognize_accepts_every_intersection_graph():
    rng = random.Random(13)
    seen = 0
    while seen < 300:
        nn = rng.randrange(2, 9)
        arcs = []
        for _ in range(rng.randrange(1, 11)):
            t, h = rng.randrange(nn), rng.randrange(nn)
            if t != h:
                arcs.append((t, h))
        if not arcs:
            continue
        d = normalize_sinks(Digraph(nn, arcs))
        g, _ = intersection_graph(d)
        adj = g.adjacency_sets()
        if any(adj[u] & adj[v] for u, v in g.edges):
            continue
        seen += 1
        result = recognize(g, debug=True)
        assert not isinstance(result, Refusal), arcs
        assert check_certificate(g, *result)


def test_recognize_handles_a_larger_random_tree():
    rng = random.Random(3)
    m = 20000
    g = UGraph(m + 1, [(rng.randrange(v), v) for v in range(1, m + 1)])
    accept(g, debug=False)


# ---------------------------------------------------------------------------
# small types


def test_connection_type_validates_kind():
    assert ConnectionType("II").kind == "II"
    with pytest.raises(ValueError):
        ConnectionType("IV")


def test_refusal_fields():
    r = Refusal((1, 2, 3), 2)
    assert r.component == (1, 2, 3) and r.cycles == 2
