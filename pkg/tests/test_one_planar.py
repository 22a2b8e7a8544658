import random

import networkx as nx
import pytest

from bar_layout import realizes_weakly
from errors import EmbeddingError, PipelineError
from fixtures import complete_graph, k5_drawing, k6_drawing
from graph_core import make_graph, same_edges, sorted_vertices
from one_planar import (kite_augment, oneplanar_embedding_from_drawing, oneplanar_to_web1, random_oneplanar_drawing,
                        registry_visibility_violations, replace_crossings)
from st_planar import validate_st_digraph

# Square with both diagonals crossing at (1, 1); side a-c is missing.
OPEN_KITE_POS = {"a": (0, 0), "b": (2, 2), "c": (2, 0), "d": (0, 2)}
OPEN_KITE_EDGES = [("a", "b"), ("c", "d"), ("a", "d"), ("d", "b"), ("b", "c")]


def open_kite():
    g = make_graph(OPEN_KITE_POS, OPEN_KITE_EDGES)
    return g, oneplanar_embedding_from_drawing(g, OPEN_KITE_POS)


def test_k5_planarization():
    g, pos = k5_drawing()
    emb = oneplanar_embedding_from_drawing(g, pos)
    assert len(emb.crossings) == 1
    assert same_edges(emb.original_graph(), complete_graph(5))
    (quad,) = emb.crossings.values()
    assert {frozenset(quad[0::2]), frozenset(quad[1::2])} == {frozenset((0, 4)), frozenset((1, 3))}


def test_k6_planarization():
    g, pos = k6_drawing()
    emb = oneplanar_embedding_from_drawing(g, pos)
    assert len(emb.crossings) == 3
    assert same_edges(emb.original_graph(), complete_graph(6))


def test_edge_crossed_twice_is_rejected():
    pos = {"a": (0, 0), "b": (10, 0), "c": (2, -1), "d": (2, 1), "e": (5, -1), "f": (5, 1)}
    g = make_graph(pos, [("a", "b"), ("c", "d"), ("e", "f")])
    with pytest.raises(EmbeddingError):
        oneplanar_embedding_from_drawing(g, pos)


def test_kite_augment_leaves_complete_kites_alone():
    g, pos = k5_drawing()
    emb = oneplanar_embedding_from_drawing(g, pos)
    kited, changes = kite_augment(emb)
    assert changes == []
    assert same_edges(kited.original_graph(), g)


def test_kite_augment_on_crossing_free_drawing():
    pos = {0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (3, 2)}
    g = complete_graph(4)
    emb = oneplanar_embedding_from_drawing(g, pos)
    assert emb.crossings == {}
    _, changes = kite_augment(emb)
    assert changes == []


def test_kite_augment_inserts_missing_side():
    _, emb = open_kite()
    kited, changes = kite_augment(emb)
    assert [(c.kind, frozenset(c.edge)) for c in changes] == [("inserted", frozenset("ac"))]
    assert kited.plane.has_edge("a", "c")
    assert len(kited.crossings) == 1
    kited.validate()


def test_replace_crossings_k5():
    g, pos = k5_drawing()
    kited, _ = kite_augment(oneplanar_embedding_from_drawing(g, pos))
    result = replace_crossings(kited)
    validate_st_digraph(result.st)
    assert len(result.registry) == 1
    entry = result.registry[0]
    for w in entry.dummies:
        assert result.st.digraph.in_degree(w) == 1 and result.st.digraph.out_degree(w) == 1
    assert all(result.st.is_arc(p, q) for p, q in zip(entry.path, entry.path[1:]))


def test_replace_crossings_without_crossings():
    pos = {0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (3, 2)}
    emb = oneplanar_embedding_from_drawing(complete_graph(4), pos)
    result = replace_crossings(emb)
    assert result.registry == []
    validate_st_digraph(result.st)


@pytest.mark.parametrize("drawing, n", [(k5_drawing, 5), (k6_drawing, 6)])
def test_complete_graphs_are_weak_bar_1_visibility(drawing, n):
    g, pos = drawing()
    result = oneplanar_to_web1(oneplanar_embedding_from_drawing(g, pos), g)
    assert set(result.layout.bars) == set(range(n))
    assert realizes_weakly(result.layout, complete_graph(n), 1).realized
    assert registry_visibility_violations(result.layout, result.registry) == []


def test_open_kite_pipeline():
    g, emb = open_kite()
    result = oneplanar_to_web1(emb, g)
    assert realizes_weakly(result.layout, g, 1).realized


def test_pipeline_edge_cases():
    g = make_graph(["v"], [])
    emb = oneplanar_embedding_from_drawing(g, {"v": (0, 0)})
    assert len(oneplanar_to_web1(emb, g).layout) == 1

    pos = {0: (0, 0), 1: (0, 1), 2: (5, 0), 3: (5, 1)}
    g = make_graph(pos, [(0, 1), (2, 3)])
    with pytest.raises(PipelineError):
        oneplanar_to_web1(oneplanar_embedding_from_drawing(g, pos), g)


# Two crossings share kite edge a-c; z sits in the upper quadrant beside it.
SHARED_KITE_POS = {"a": (0, 0), "c": (4, 0), "b": (4, 4), "d": (0, 4),
                   "e": (4, -4), "f": (0, -4), "z": (2, 1)}
SHARED_KITE_EDGES = [("a", "b"), ("c", "d"), ("a", "e"), ("c", "f"), ("a", "c"), ("z", "a"), ("z", "c")]

# Kite side a-c is itself crossed by e-f.
CROSSED_SIDE_POS = {"a": (0, 0), "c": (4, 0), "b": (4, 4), "d": (0, 4), "e": (2, -2), "f": (2, 1)}
CROSSED_SIDE_EDGES = [("a", "b"), ("c", "d"), ("a", "c"), ("c", "b"), ("b", "d"), ("d", "a"),
                      ("e", "f"), ("f", "a"), ("f", "c")]


def test_kite_edge_shared_by_two_crossings():
    g = make_graph(SHARED_KITE_POS, SHARED_KITE_EDGES)
    emb = oneplanar_embedding_from_drawing(g, SHARED_KITE_POS)
    assert len(emb.crossings) == 2
    kited, changes = kite_augment(emb)
    assert {c.kind for c in changes} == {"inserted"}
    assert len(changes) == 6
    assert frozenset("ac") not in {frozenset(c.edge) for c in changes}
    assert len(kited.crossings) == 2

    result = oneplanar_to_web1(emb, g)
    assert realizes_weakly(result.layout, g, 1).realized
    assert len(result.registry) == 2
    assert registry_visibility_violations(result.layout, result.registry) == []


def test_crossed_kite_side_is_rerouted():
    g = make_graph(CROSSED_SIDE_POS, CROSSED_SIDE_EDGES)
    emb = oneplanar_embedding_from_drawing(g, CROSSED_SIDE_POS)
    assert len(emb.crossings) == 2
    kited, changes = kite_augment(emb)
    assert [(c.kind, frozenset(c.edge)) for c in changes] == [("rerouted", frozenset("ac"))]
    assert len(kited.crossings) == 1
    assert kited.plane.has_edge("e", "f")
    assert kited.plane.has_edge("a", "c")
    assert same_edges(kited.original_graph(), g)

    result = oneplanar_to_web1(emb, g)
    assert realizes_weakly(result.layout, g, 1).realized
    assert [c.kind for c in result.kite_changes] == ["rerouted"]


def test_tuple_vertex_ids():
    g, pos = k5_drawing()
    names = {v: (v, 0) for v in g}
    g = nx.relabel_nodes(g, names)
    pos = {names[v]: p for v, p in pos.items()}
    assert sorted_vertices([(1, 0), "x", 3, ("x", 0), (0, 0)]) == [3, "x", (0, 0), (1, 0), ("x", 0)]
    result = oneplanar_to_web1(oneplanar_embedding_from_drawing(g, pos), g)
    assert set(result.layout.bars) == set(g)
    assert realizes_weakly(result.layout, g, 1).realized


def test_random_drawings_are_1_planar():
    rng = random.Random(3)
    for _ in range(20):
        g, pos = random_oneplanar_drawing(rng, rng.randint(2, 10))
        emb = oneplanar_embedding_from_drawing(g, pos)
        assert same_edges(emb.original_graph(), g)
        assert g.number_of_edges() <= max(4 * len(g) - 8, len(g) - 1)


def _random_sweep(seed: int, count: int):
    rng = random.Random(seed)
    done = 0
    while done < count:
        g, pos = random_oneplanar_drawing(rng, rng.randint(4, 12))
        if not nx.is_connected(g):
            continue
        result = oneplanar_to_web1(oneplanar_embedding_from_drawing(g, pos), g)
        assert realizes_weakly(result.layout, g, 1).realized
        assert registry_visibility_violations(result.layout, result.registry) == []
        done += 1


def test_random_1_planar_drawings_are_weak_bar_1_visibility():
    _random_sweep(11, 40)


@pytest.mark.slow
def test_random_1_planar_sweep():
    _random_sweep(2024, 300)
