from bar_layout import BarLayout, strong_visibility_graph
from fixtures import (NAMED_GRAPHS, S3_LAYOUT_ROWS, bipartite_c4_network, diamond_network, k5_drawing, k6_drawing,
                      s3_graph, s3_layout, two_arcs_network, w_network)
from graph_core import check_planarity, same_edges


def test_named_graphs():
    assert {name: g.number_of_edges() for name, g in ((n, f()) for n, f in NAMED_GRAPHS.items())} == {
        "K3": 3, "K4": 6, "K5": 10, "K6": 15, "K7": 21, "K8": 28, "S3": 9}


def test_s3_is_planar_with_one_triangle_hub():
    g = s3_graph()
    assert check_planarity(g).is_planar
    assert sorted(d for _, d in g.degree) == [2, 2, 2, 4, 4, 4]
    s3_layout().validate()


def test_drawings_cover_every_vertex():
    for drawing in (k5_drawing, k6_drawing):
        g, pos = drawing()
        assert set(pos) == set(g)


def test_small_networks_validate():
    for make in (diamond_network, bipartite_c4_network, two_arcs_network, w_network):
        make().validate()


def test_s3_rows_give_s3_at_k_1_only():
    layout = BarLayout.from_tuples(S3_LAYOUT_ROWS)
    assert len(layout) == 6
    assert same_edges(strong_visibility_graph(layout, 1), s3_graph())
    assert not same_edges(strong_visibility_graph(layout, 0), s3_graph())
