import random

import networkx as nx
import pytest

from bar_layout import (Bar, BarLayout, random_layout, realizes_weakly, strong_visibility_graph,
                        visibility_intervals, x_overlap)
from errors import LayoutError
from fixtures import s3_graph, s3_layout
from graph_core import Classification, forest_or_triangle, make_graph, same_edges
from oracle import brute_force_visibility_graph

# K3,3 with sides {0, 1, 2} and {3, 4, 5}; every edge is 1-visible.
K33_ROWS = [(0, 0, 0, 2), (3, 1, 1, 3), (1, 2, 1, 3), (4, 3, 0, 2), (2, 4, 1, 3), (5, 5, 0, 3)]


def edge_set(g):
    return {frozenset(e) for e in g.edges}


def stacked():
    return BarLayout.from_tuples([(1, 0, 0, 10), (2, 1, 0, 10), (3, 2, 0, 10)])


def test_stacked_bars():
    assert edge_set(strong_visibility_graph(stacked(), 0)) == {frozenset((1, 2)), frozenset((2, 3))}
    assert edge_set(strong_visibility_graph(stacked(), 1)) == {
        frozenset((1, 2)), frozenset((2, 3)), frozenset((1, 3))}


def test_single_bar_has_no_edges():
    g = strong_visibility_graph(BarLayout.from_tuples([("v", 0, 0, 1)]), 1)
    assert list(g.nodes) == ["v"]
    assert g.number_of_edges() == 0


def test_s3_layout_is_exactly_s3():
    g = strong_visibility_graph(s3_layout(), 1)
    assert same_edges(g, s3_graph())
    assert same_edges(brute_force_visibility_graph(s3_layout(), 1), s3_graph())


def test_endpoint_contact_is_not_visibility():
    layout = BarLayout.from_tuples([(1, 0, 0, 1), (2, 1, 1, 2)])
    assert x_overlap(layout[1], layout[2]) is None
    assert strong_visibility_graph(layout, 0).number_of_edges() == 0


def test_same_height_bars_never_see_each_other():
    layout = BarLayout.from_tuples([(1, 0, 0, 1), (2, 0, 2, 3)])
    assert strong_visibility_graph(layout, 2).number_of_edges() == 0


def test_invalid_layouts():
    with pytest.raises(LayoutError):
        Bar(1, 0, 2, 2)
    with pytest.raises(LayoutError):
        BarLayout.from_tuples([(1, 0, 0, 2), (2, 0, 2, 3)])
    with pytest.raises(LayoutError):
        BarLayout.from_tuples([(1, 0, 0, 2), (1, 1, 0, 2)])
    with pytest.raises(LayoutError):
        strong_visibility_graph(stacked(), -1)


def test_realizes_weakly():
    triangle = make_graph([1, 2, 3], [(1, 2), (2, 3), (1, 3)])
    report = realizes_weakly(stacked(), triangle, 0)
    assert not report.realized
    assert report.missing == [(1, 3)]
    assert realizes_weakly(stacked(), triangle, 1).realized
    assert realizes_weakly(stacked(), make_graph([1, 2, 3], []), 0).realized


def test_realizes_weakly_needs_same_vertices():
    with pytest.raises(LayoutError):
        realizes_weakly(stacked(), make_graph([1, 2], [(1, 2)]), 1)


def test_k33_is_weak_but_not_strong():
    layout = BarLayout.from_tuples(K33_ROWS)
    k33 = nx.complete_bipartite_graph(3, 3)
    assert realizes_weakly(layout, k33, 1).realized
    assert forest_or_triangle(k33) == Classification.NEITHER
    assert forest_or_triangle(strong_visibility_graph(layout, 1)) != Classification.NEITHER


def test_visibility_intervals_record_blockers():
    layout = BarLayout.from_tuples([(1, 0, 0, 4), (2, 1, 1, 2), (3, 2, 0, 4)])
    runs = visibility_intervals(layout, 1)
    assert runs[frozenset((1, 3))] == [(0, 1, ()), (1, 2, (2,)), (2, 4, ())]
    assert runs[frozenset((1, 2))] == [(1, 2, ())]
    assert visibility_intervals(layout, 0)[frozenset((1, 3))] == [(0, 1, ()), (2, 4, ())]


def test_sweep_matches_brute_force():
    rng = random.Random(7)
    for _ in range(1000):
        layout = random_layout(rng, rng.randint(1, 8))
        for k in (0, 1, 2):
            assert edge_set(strong_visibility_graph(layout, k)) == edge_set(brute_force_visibility_graph(layout, k))


def test_monotone_in_k_and_planar_at_zero():
    rng = random.Random(11)
    for _ in range(200):
        layout = random_layout(rng, rng.randint(2, 10))
        graphs = [edge_set(strong_visibility_graph(layout, k)) for k in range(4)]
        assert all(a <= b for a, b in zip(graphs, graphs[1:]))
        assert nx.check_planarity(strong_visibility_graph(layout, 0))[0]


def test_strong_1_visibility_is_forest_or_has_triangle():
    rng = random.Random(2024)
    for _ in range(500):
        layout = random_layout(rng, rng.randint(1, 12), grid=10)
        assert forest_or_triangle(strong_visibility_graph(layout, 1)) != Classification.NEITHER


def test_edge_bound_on_random_layouts():
    rng = random.Random(5)
    for _ in range(300):
        n = rng.randint(5, 14)
        g = strong_visibility_graph(random_layout(rng, n, grid=12), 1)
        assert g.number_of_edges() <= 6 * n - 20
