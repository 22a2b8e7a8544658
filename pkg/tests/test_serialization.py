import json
from fractions import Fraction

import pytest

from bar_layout import BarLayout
from errors import SerializationError
from fixtures import complete_graph, diamond_network, k5_drawing, s3_layout
from graph_core import embedding_from_positions, make_digraph, same_edges
from one_planar import oneplanar_embedding_from_drawing
from oracle import HAMPATH_PLANAR, bound_audit, search_1flow_preimage
from quasi_planar import classify_visibility_edges, layout_to_quasiplanar
from serialization import FORMAT, decode_rational, emit, load, parse, save
from st_planar import aligned_bar_layout, st_orient

DIAMOND_POS = {"s": (0, 0), "a": (-1, 1), "b": (1, 1), "t": (0, 2)}


def through_json(obj):
    doc = json.loads(json.dumps(emit(obj)))
    return emit(parse(doc)) == emit(obj)


def diamond_st():
    g = diamond_network().digraph.to_undirected()
    return st_orient(embedding_from_positions(g, DIAMOND_POS), "s", "t")


def test_manifest_header():
    doc = emit(s3_layout())
    assert doc["format"] == FORMAT
    assert doc["kind"] == "layout"
    assert doc["payload"]["bars"][0] == {"id": 0, "y": "0", "x1": "0", "x2": "3"}


def test_layout_with_fractions():
    layout = BarLayout.from_tuples([(1, Fraction(1, 2), 0, Fraction(7, 3)), (2, 1, 1, 2)])
    assert emit(layout)["payload"]["bars"][0]["x2"] == "7/3"
    assert parse(emit(layout)) == layout


def test_graphs_keep_tuple_vertices():
    g = make_digraph([(0, 0), (0, 1)], [((0, 0), (0, 1))])
    doc = json.loads(json.dumps(emit(g)))
    assert doc["kind"] == "digraph"
    back = parse(doc)
    assert list(back.edges) == [((0, 0), (0, 1))]
    assert same_edges(parse(emit(complete_graph(4))), complete_graph(4))


@pytest.mark.parametrize("make", [
    lambda: complete_graph(5),
    lambda: make_digraph("abc", [("a", "b"), ("b", "c")]),
    s3_layout,
    diamond_network,
    lambda: embedding_from_positions(complete_graph(4), {0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (3, 2)}),
    lambda: oneplanar_embedding_from_drawing(*k5_drawing()),
    lambda: aligned_bar_layout(diamond_st(), [["s", "a", "t"]]),
    lambda: layout_to_quasiplanar(s3_layout()),
    lambda: classify_visibility_edges(s3_layout()),
    lambda: search_1flow_preimage(complete_graph(3), HAMPATH_PLANAR),
    lambda: bound_audit(complete_graph(7), "oneplanar"),
])
def test_documents_are_stable_through_json(make):
    assert through_json(make())


def test_oneplanar_crossing_ids_survive():
    emb = oneplanar_embedding_from_drawing(*k5_drawing())
    back = parse(json.loads(json.dumps(emit(emb))), expect="oneplanar-embedding")
    assert back.crossings == emb.crossings


def test_bad_documents():
    with pytest.raises(SerializationError):
        parse({"kind": "layout", "payload": {}})
    with pytest.raises(SerializationError):
        parse({"format": FORMAT, "kind": "teapot", "payload": {}})
    with pytest.raises(SerializationError):
        parse({"format": FORMAT, "kind": "layout", "payload": {}})
    with pytest.raises(SerializationError):
        parse(emit(s3_layout()), expect="graph")
    with pytest.raises(SerializationError):
        emit(object())
    with pytest.raises(SerializationError):
        decode_rational("one half")


def test_save_and_load(tmp_path):
    path = str(tmp_path / "nested" / "s3.json")
    assert save(path, s3_layout())
    assert load(path, expect="layout") == s3_layout()
    with pytest.raises(SerializationError):
        load(str(tmp_path / "missing.json"))
