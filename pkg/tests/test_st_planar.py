import random
from fractions import Fraction

import networkx as nx
import pytest

from bar_layout import realizes_weakly
from errors import PathFamilyError, PipelineError
from flow_network import random_flow_network, st_augment_1flow
from graph_core import embedding_from_positions, make_digraph, make_graph, underlying_graph
from st_planar import (LEFT_OUTER, RIGHT_OUTER, StDigraph, aligned_bar_layout, dual_with_numberings,
                       st_orient, strip_containment_violations, trichotomy_violations, tt_bar_layout,
                       validate_path_family, validate_st_digraph)

DIAMOND_POS = {"s": (0, 0), "a": (-1, 1), "b": (1, 1), "t": (0, 2)}
DIAMOND_EDGES = [("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")]

# v has in-neighbors a, b and out-neighbors c, e
BOWTIE_POS = {"s": (0, -2), "a": (-1, -1), "b": (1, -1), "v": (0, 0),
              "c": (-1, 1), "e": (1, 1), "t": (0, 2)}
BOWTIE_ARCS = [("s", "a"), ("s", "b"), ("a", "v"), ("b", "v"), ("v", "c"), ("v", "e"),
               ("c", "t"), ("e", "t"), ("a", "c"), ("b", "e")]


def diamond():
    g = make_graph(DIAMOND_POS, DIAMOND_EDGES)
    return st_orient(embedding_from_positions(g, DIAMOND_POS), "s", "t")


def bowtie():
    d = make_digraph(BOWTIE_POS, BOWTIE_ARCS)
    emb = embedding_from_positions(underlying_graph(d), BOWTIE_POS)
    return StDigraph(emb, d, "s", "t")


def grid3():
    g = nx.grid_2d_graph(3, 3)
    pos = {v: v for v in g}
    return st_orient(embedding_from_positions(g, pos), (0, 0), (2, 2))


def test_single_edge():
    g = make_graph("st", [("s", "t")])
    d = st_orient(embedding_from_positions(g, {"s": (0, 0), "t": (0, 1)}), "s", "t")
    assert list(d.digraph.edges) == [("s", "t")]
    dual, numbers, _ = dual_with_numberings(d)
    assert list(dual.edges) == [(LEFT_OUTER, RIGHT_OUTER)]
    assert numbers.chi == {LEFT_OUTER: 0, RIGHT_OUTER: 1}
    layout = tt_bar_layout(d).layout
    assert (layout["s"].x_left, layout["s"].x_right) == (layout["t"].x_left, layout["t"].x_right)


def test_diamond_orientation():
    d = diamond()
    assert set(d.digraph.edges) == set(DIAMOND_EDGES)
    validate_st_digraph(d)


def test_diamond_numberings():
    dual, numbers, faces = dual_with_numberings(diamond())
    assert numbers.psi == {"s": 0, "a": 1, "b": 1, "t": 2}
    assert dual.number_of_nodes() == 3
    assert sorted(numbers.chi.values()) == [0, 1, 2]
    assert numbers.chi[LEFT_OUTER] == 0 and numbers.chi[RIGHT_OUTER] == 2
    assert faces.vertex_left["a"] == LEFT_OUTER
    assert faces.vertex_right["b"] == RIGHT_OUTER


def test_diamond_bars():
    tt = tt_bar_layout(diamond())
    bars = {v: (b.y, b.x_left, b.x_right) for v, b in tt.layout.bars.items()}
    assert bars == {"s": (0, 0, 3), "a": (1, 0, 1), "b": (1, 2, 3), "t": (2, 0, 3)}
    assert strip_containment_violations(diamond(), tt.layout, tt.strips) == []


def test_path_bars_are_stacked():
    pos = {i: (0, i) for i in range(4)}
    d = make_digraph(range(4), [(0, 1), (1, 2), (2, 3)])
    st = StDigraph(embedding_from_positions(underlying_graph(d), pos), d, 0, 3)
    validate_st_digraph(st)
    layout = tt_bar_layout(st).layout
    assert {(b.x_left, b.x_right) for b in layout.bars.values()} == {(0, 1)}
    assert [layout[i].y for i in range(4)] == [0, 1, 2, 3]


def test_grid_orientation():
    d = grid3()
    validate_st_digraph(d)
    for v in d.digraph:
        assert nx.has_path(d.digraph, (0, 0), v) and nx.has_path(d.digraph, v, (2, 2))
    assert trichotomy_violations(d) == []


def test_numberings_increase_along_arcs():
    for d in (diamond(), grid3(), bowtie()):
        dual, numbers, _ = dual_with_numberings(d)
        assert all(numbers.psi[u] < numbers.psi[v] for u, v in d.digraph.edges)
        assert all(numbers.chi[f] < numbers.chi[g] for f, g in dual.edges)
        assert max(numbers.psi.values()) == nx.dag_longest_path_length(d.digraph)


def test_tt_layout_realizes_underlying_graph():
    for d in (diamond(), grid3(), bowtie()):
        tt = tt_bar_layout(d)
        tt.layout.validate()
        assert realizes_weakly(tt.layout, underlying_graph(d.digraph), 0).realized
        assert strip_containment_violations(d, tt.layout, tt.strips) == []


def test_bowtie_trichotomy():
    d = bowtie()
    validate_st_digraph(d)
    assert trichotomy_violations(d) == []


def test_st_orient_rejects_bad_input():
    path = make_graph("abc", [("a", "b"), ("b", "c")])
    emb = embedding_from_positions(path, {"a": (0, 0), "b": (0, 1), "c": (0, 2)})
    with pytest.raises(PipelineError):
        st_orient(emb, "a", "c")
    with pytest.raises(PipelineError):
        st_orient(embedding_from_positions(make_graph(DIAMOND_POS, DIAMOND_EDGES), DIAMOND_POS), "s", "s")


def test_aligned_diamond_path():
    d = diamond()
    aligned = aligned_bar_layout(d, [["s", "a", "t"]])
    assert aligned.path_x == [Fraction(1, 2)]
    assert realizes_weakly(aligned.layout, underlying_graph(d.digraph), 0).realized


def test_aligned_without_paths_is_plain_layout():
    d = diamond()
    assert aligned_bar_layout(d, []).layout == tt_bar_layout(d).layout


def test_path_family_checks():
    d = bowtie()
    validate_path_family(d, [["a", "v", "c"], ["b", "v", "e"]])
    with pytest.raises(PathFamilyError) as err:
        validate_path_family(d, [["a", "v", "e"], ["b", "v", "c"]])
    assert err.value.pair == (0, 1)
    with pytest.raises(PathFamilyError):
        validate_path_family(d, [["s", "a", "v"], ["a", "v", "c"]])
    with pytest.raises(PathFamilyError):
        validate_path_family(d, [["a", "s"]])


def test_aligned_falls_back_to_joint_numbering():
    d = bowtie()
    path = ["a", "v", "e"]
    tt = tt_bar_layout(d)
    arcs = list(zip(path, path[1:]))
    assert (tt.strips[("a", "v")], tt.strips[("v", "e")]) == ((2, 3), (4, 5))
    assert max(tt.strips[a][0] for a in arcs) >= min(tt.strips[a][1] for a in arcs)

    aligned = aligned_bar_layout(d, [path])
    assert aligned.path_x == [6]
    for arc in arcs:
        lo, hi = aligned.strips[arc]
        assert lo < aligned.path_x[0] < hi
    for w in path:
        bar = aligned.layout[w]
        assert bar.x_left < aligned.path_x[0] < bar.x_right
    assert realizes_weakly(aligned.layout, underlying_graph(d.digraph), 0).realized


def test_numberings_on_random_st_digraphs():
    rng = random.Random(8)
    for _ in range(30):
        f = random_flow_network(rng, rng.randint(2, 30))
        d = st_augment_1flow(f).st
        dual, numbers, _ = dual_with_numberings(d)
        assert all(numbers.psi[u] < numbers.psi[v] for u, v in d.digraph.edges)
        assert all(numbers.chi[g] < numbers.chi[h] for g, h in dual.edges)
        assert numbers.chi[LEFT_OUTER] == 0
        assert numbers.chi[RIGHT_OUTER] == max(numbers.chi.values())
        tt = tt_bar_layout(d)
        assert realizes_weakly(tt.layout, underlying_graph(d.digraph), 0).realized
        assert strip_containment_violations(d, tt.layout, tt.strips) == []
        assert trichotomy_violations(d) == []
