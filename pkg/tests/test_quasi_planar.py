import random
from fractions import Fraction

import pytest

from bar_layout import BarLayout, random_layout, strong_visibility_graph
from errors import DegenerateDrawingError
from geometry import point
from quasi_planar import (BLUE, RED, PolylineDrawing, blue_blue_crossings, classify_visibility_edges,
                          crossings_away_from_bars, drawing_parameters, find_crossings, layout_to_quasiplanar,
                          max_mutual_crossing, mutually_crossing_triples, same_bypass_crossings)


def stacked():
    return BarLayout.from_tuples([(1, 0, 0, 10), (2, 1, 0, 10), (3, 2, 0, 10)])


def test_classification_of_stacked_bars():
    c = classify_visibility_edges(stacked())
    assert set(c.blue) == {(1, 2), (2, 3)}
    assert set(c.red) == {(1, 3)}
    assert c.red[(1, 3)].bypass == 2
    assert c.blue[(1, 2)].bypass is None


def test_drawing_parameters_of_stacked_bars():
    layout = stacked()
    params = drawing_parameters(layout, classify_visibility_edges(layout))
    assert params.gamma == Fraction(1, 4)
    assert params.delta == Fraction(1, 40)
    assert params.shift_counts == {(1, 3): 0}
    assert params.shifts == {(1, 3): Fraction(1, 40)}


def test_stacked_polylines():
    d = layout_to_quasiplanar(stacked())
    assert d.points[1] == (0, 0)
    assert d.polylines[(1, 2)] == [(0, 0), (Fraction(39, 4), Fraction(1, 4)),
                                   (Fraction(39, 4), Fraction(3, 4)), (0, 1)]
    red = d.polylines[(1, 3)]
    assert len(red) == 7
    assert red[3] == (Fraction(-1, 40), 1)
    assert d.colors == {(1, 2): BLUE, (2, 3): BLUE, (1, 3): RED}
    assert d.bypass == {(1, 3): 2}
    assert find_crossings(d) == []


def test_red_edges_sharing_a_bypass_are_shifted_apart():
    # 1 and 4 both see 3 only through 2, in different columns
    layout = BarLayout.from_tuples([(1, 0, 0, 2), (4, 0, 4, 6), (2, 1, 0, 6), (3, 2, 0, 6)])
    c = classify_visibility_edges(layout)
    assert c.red[(1, 3)].bypass == c.red[(4, 3)].bypass == 2
    params = drawing_parameters(layout, c)
    assert params.shift_counts == {(1, 3): 1, (4, 3): 0}
    assert params.shifts[(1, 3)] > params.shifts[(4, 3)]


def test_empty_and_single_bar():
    assert layout_to_quasiplanar(BarLayout()).polylines == {}
    d = layout_to_quasiplanar(BarLayout.from_tuples([(0, 0, 0, 1)]))
    assert list(d.points) == [0]
    assert max_mutual_crossing(d) == 0


def test_drawing_has_one_polyline_per_edge():
    rng = random.Random(3)
    for _ in range(20):
        layout = random_layout(rng, rng.randint(2, 12), grid=10)
        d = layout_to_quasiplanar(layout)
        assert {frozenset(e) for e in d.polylines} == {frozenset(e) for e in strong_visibility_graph(layout, 1).edges}


def test_random_layouts_give_quasi_planar_drawings():
    rng = random.Random(2024)
    for _ in range(200):
        layout = random_layout(rng, rng.randint(1, 30), grid=16)
        d = layout_to_quasiplanar(layout)
        crossings = find_crossings(d)
        assert max_mutual_crossing(d) <= 2
        assert mutually_crossing_triples(d) == []
        assert blue_blue_crossings(d, crossings) == []
        assert same_bypass_crossings(d, crossings) == []
        assert crossings_away_from_bars(layout, d, crossings) == []


def straight_drawing(segments):
    d = PolylineDrawing()
    for (u, p), (v, q) in segments:
        d.points[u], d.points[v] = point(*p), point(*q)
        d.polylines[(u, v)] = [point(*p), point(*q)]
    return d


def test_two_disjoint_edges_have_mutual_crossing_1():
    d = straight_drawing([(("a", (0, 0)), ("b", (1, 0))), (("c", (0, 2)), ("d", (1, 2)))])
    assert max_mutual_crossing(d) == 1


def test_x_crossing_has_mutual_crossing_2():
    d = straight_drawing([(("a", (0, 0)), ("b", (2, 2))), (("c", (0, 2)), ("d", (2, 0)))])
    assert max_mutual_crossing(d) == 2
    assert find_crossings(d)[0].at == (1, 1)


def test_star_of_three_has_mutual_crossing_3():
    d = straight_drawing([(("a", (0, 0)), ("b", (6, 6))),
                          (("c", (0, 6)), ("d", (6, 0))),
                          (("e", (0, 2)), ("f", (6, 3)))])
    assert max_mutual_crossing(d) == 3
    assert len(mutually_crossing_triples(d)) == 1


def test_collinear_overlap_is_degenerate():
    d = straight_drawing([(("a", (0, 0)), ("b", (4, 0))), (("c", (2, 0)), ("d", (6, 0)))])
    with pytest.raises(DegenerateDrawingError):
        max_mutual_crossing(d)
