import random
from itertools import combinations, product

import pytest

from flg.coloring import (
    Coloring,
    chromatic_brute,
    color_trianglefree_fl,
    edge_chromatic_brute,
    edgecolor_reduction,
)
from flg.core import Digraph, UGraph, find_triangle
from flg.intersect import intersection_graph


def cycle(k):
    return [(i, (i + 1) % k) for i in range(k)]


def path(k):
    return [(i, i + 1) for i in range(k - 1)]


def petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, 5 + i) for i in range(5)]
    return UGraph(10, edges)


def all_small_graphs(n):
    pairs = list(combinations(range(n), 2))
    for bits in range(1 << len(pairs)):
        yield UGraph(n, [pairs[i] for i in range(len(pairs)) if bits >> i & 1])


def naive_k_colorable(g, k):
    return any(
        all(c[u] != c[v] for u, v in g.edges)
        for c in product(range(k), repeat=g.n)
    )


def naive_k_edge_colorable(g, k):
    edges = sorted(g.edges)
    return any(
        all(
            c[i] != c[j]
            for i in range(len(edges))
            for j in range(i)
            if set(edges[i]) & set(edges[j])
        )
        for c in product(range(k), repeat=len(edges))
    )


def chi(g):
    k = 0
    while chromatic_brute(g, k) is None:
        k += 1
    return k


def random_accepted(rng, max_nodes):
    # images of sparse digraphs are always accepted; keep retrying
    # until the image is triangle-free and small enough
    while True:
        nn = rng.randrange(1, max(2, max_nodes // 2))
        arcs = set()
        for _ in range(rng.randrange(1, nn + 3)):
            t, h = rng.randrange(nn), rng.randrange(nn)
            if t != h:
                arcs.add((t, h))
        if not arcs or len(arcs) > max_nodes:
            continue
        g, _ = intersection_graph(Digraph(nn, sorted(arcs)))
        if find_triangle(g) is None:
            return g


# ---------------------------------------------------------------------------
# Coloring type


def test_coloring_count_and_properness():
    col = Coloring((0, 1, 0))
    assert col.count == 2
    assert col.is_proper(UGraph(3, path(3)))
    assert not col.is_proper(UGraph(3, [(0, 2)]))


# ---------------------------------------------------------------------------
# color_trianglefree_fl


def test_color_p4_two_colors():
    col = color_trianglefree_fl(UGraph(4, path(4)))
    assert col.count == 2 and col.is_proper(UGraph(4, path(4)))


def test_color_c5_three_colors():
    g = UGraph(5, cycle(5))
    col = color_trianglefree_fl(g)
    assert col.count == 3 and col.is_proper(g)


def test_color_even_cycle_two_colors():
    g = UGraph(6, cycle(6))
    col = color_trianglefree_fl(g)
    assert col.count == 2 and col.is_proper(g)


def test_color_single_node():
    assert color_trianglefree_fl(UGraph(1, [])).colors == (0,)


def test_color_empty_graph():
    assert color_trianglefree_fl(UGraph(0, [])).colors == ()


def test_color_tree_two_colors():
    g = UGraph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    col = color_trianglefree_fl(g)
    assert col.count == 2 and col.is_proper(g)


def test_color_rejects_triangle():
    with pytest.raises(ValueError, match="triangle"):
        color_trianglefree_fl(UGraph(3, [(0, 1), (1, 2), (0, 2)]))


def test_color_rejects_two_cycle_component():
    # two leaf-decorated 4-cycles joined by a path survive reduction whole
    edges = cycle(4) + [(4 + i, 4 + (i + 1) % 4) for i in range(4)]
    edges += [(i, 8 + i) for i in range(8)] + [(3, 16), (16, 4)]
    with pytest.raises(ValueError, match="independent cycles"):
        color_trianglefree_fl(UGraph(17, edges))


def test_color_random_accepted_instances():
    rng = random.Random(21)
    for _ in range(200):
        g = random_accepted(rng, 40)
        col = color_trianglefree_fl(g)
        assert col.is_proper(g) and col.count <= 3


def test_color_never_beats_the_oracle():
    rng = random.Random(22)
    for _ in range(50):
        g = random_accepted(rng, 12)
        used = color_trianglefree_fl(g).count
        assert chi(g) <= used <= 3


# ---------------------------------------------------------------------------
# chromatic_brute


def test_brute_c5():
    assert chromatic_brute(UGraph(5, cycle(5)), 2) is None
    col = chromatic_brute(UGraph(5, cycle(5)), 3)
    assert col is not None and col.count == 3
    assert col.is_proper(UGraph(5, cycle(5)))


def test_brute_empty_graph_zero_colors():
    assert chromatic_brute(UGraph(0, []), 0) == Coloring(())


def test_brute_labels_are_first_seen():
    col = chromatic_brute(UGraph(5, cycle(5)), 3)
    firsts = [col.colors.index(c) for c in range(col.count)]
    assert firsts == sorted(firsts) and col.colors[0] == 0


def test_brute_petersen_chromatic_number():
    assert chi(petersen()) == 3


def test_brute_matches_naive_enumeration():
    for n in range(5):
        for g in all_small_graphs(n):
            for k in range(4):
                got = chromatic_brute(g, k)
                assert (got is not None) == naive_k_colorable(g, k)
                if got is not None:
                    assert got.is_proper(g) and got.count <= k or g.n == 0


# ---------------------------------------------------------------------------
# edgecolor_reduction


def test_reduction_shape_for_k3():
    g = UGraph(3, cycle(3))
    d, pair = edgecolor_reduction(g, 3)
    assert d.n == 3 + 3 + 6 and d.m == 6 + 6
    assert sorted(pair) == sorted(tuple(sorted(e)) for e in g.edges)
    for (u, v), (i, j) in pair.items():
        assert d.arcs[i].tail == u and d.arcs[j].tail == v
        assert d.arcs[i].head == d.arcs[j].head


def test_reduction_single_edge_one_color():
    d, _ = edgecolor_reduction(UGraph(2, [(0, 1)]), 1)
    gi, _ = intersection_graph(d)
    assert gi.n == 2 and gi.m == 0


def test_reduction_rejects_zero_colors():
    with pytest.raises(ValueError):
        edgecolor_reduction(UGraph(2, [(0, 1)]), 0)


def test_reduction_equivalence_exhaustive_four_nodes():
    for g in all_small_graphs(4):
        if g.m == 0:
            continue
        for k in range(1, 4):
            gi, _ = intersection_graph(edgecolor_reduction(g, k)[0])
            lhs = edge_chromatic_brute(g, k)
            rhs = chromatic_brute(gi, k) is not None
            assert lhs == rhs, (sorted(g.edges), k)


# ---------------------------------------------------------------------------
# edge_chromatic_brute


def test_edge_brute_examples():
    assert edge_chromatic_brute(UGraph(3, cycle(3)), 3)
    assert not edge_chromatic_brute(UGraph(3, cycle(3)), 2)
    k4 = UGraph(4, [e for e in combinations(range(4), 2)])
    assert edge_chromatic_brute(k4, 3)
    star = UGraph(4, [(0, 1), (0, 2), (0, 3)])
    assert not edge_chromatic_brute(star, 2)
    assert not edge_chromatic_brute(UGraph(5, cycle(5)), 2)
    assert edge_chromatic_brute(UGraph(5, cycle(5)), 3)


def test_edge_brute_matches_naive_enumeration():
    for n in range(4):
        for g in all_small_graphs(n):
            for k in range(3):
                assert edge_chromatic_brute(g, k) == naive_k_edge_colorable(g, k)
