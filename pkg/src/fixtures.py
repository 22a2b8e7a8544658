"""
Named Graphs, Drawings and Layouts

Small instances used by the pipelines, the CLI and the tests:
- Complete graphs and S3 (6-cycle with an inscribed triangle)
- 1-planar straight-line drawings of K5 and K6
- A strong bar 1-visibility layout of S3
- Small upward flow networks
"""

from typing import Dict, Hashable, Tuple

import networkx as nx

from bar_layout import BarLayout
from flow_network import FlowNetwork, network_from_arcs
from graph_core import make_graph

K5_POSITIONS: Dict[Hashable, Tuple[int, int]] = {
    0: (0, 0), 1: (6, 0), 2: (3, 6), 3: (2, 2), 4: (4, 2),
}

K6_POSITIONS: Dict[Hashable, Tuple[int, int]] = {
    0: (0, 0), 1: (36, 0), 2: (18, 36), 3: (12, 8), 4: (24, 8), 5: (18, 20),
}

# Vertices 0, 2, 4 form the triangle; 1, 3, 5 sit between them on the 6-cycle.
S3_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 2), (2, 4), (4, 0)]

# Columns (0,1), (1,2), (2,3) hold the stacks 0-2-1, 0-2-4-3 and 0-4-5.
S3_LAYOUT_ROWS = [
    (0, 0, 0, 3),
    (2, 2, 0, 2),
    (1, 3, 0, 1),
    (4, 4, 1, 3),
    (5, 5, 2, 3),
    (3, 6, 1, 2),
]


def complete_graph(n: int) -> nx.Graph:
    return make_graph(range(n), [(i, j) for i in range(n) for j in range(i + 1, n)])


def s3_graph() -> nx.Graph:
    return make_graph(range(6), S3_EDGES)


def s3_layout() -> BarLayout:
    return BarLayout.from_tuples(S3_LAYOUT_ROWS)


def k5_drawing() -> Tuple[nx.Graph, Dict]:
    return complete_graph(5), dict(K5_POSITIONS)


def k6_drawing() -> Tuple[nx.Graph, Dict]:
    return complete_graph(6), dict(K6_POSITIONS)


def diamond_network() -> FlowNetwork:
    """s -> a -> t and s -> b -> t with a left of b"""
    pos = {"s": (0, 0), "a": (-1, 1), "b": (1, 1), "t": (0, 2)}
    return network_from_arcs([("s", "a"), ("s", "b"), ("a", "t"), ("b", "t")], pos)


def two_arcs_network() -> FlowNetwork:
    """Two disjoint vertical arcs side by side"""
    pos = {"a1": (0, 0), "b1": (0, 1), "a2": (2, 0), "b2": (2, 1)}
    return network_from_arcs([("a1", "b1"), ("a2", "b2")], pos)


def bipartite_c4_network() -> FlowNetwork:
    """C4 with sources 0, 2 and sinks 1, 3; vertex 3 sits inside the outer cycle"""
    pos = {0: (0, 0), 2: (2, 0), 1: (1, 2), 3: (1, 1)}
    return network_from_arcs([(0, 1), (0, 3), (2, 1), (2, 3)], pos)


def w_network() -> FlowNetwork:
    """W through p, m, q under the arc l -> r; sink m opens up into the face p-l-r-q"""
    pos = {"p": (-1, 0), "q": (1, 0), "l": (-2, 3), "m": (0, 2), "r": (2, 4)}
    return network_from_arcs([("p", "l"), ("p", "m"), ("q", "m"), ("q", "r"), ("l", "r")], pos)


NAMED_GRAPHS = {
    "K3": lambda: complete_graph(3),
    "K4": lambda: complete_graph(4),
    "K5": lambda: complete_graph(5),
    "K6": lambda: complete_graph(6),
    "K7": lambda: complete_graph(7),
    "K8": lambda: complete_graph(8),
    "S3": s3_graph,
}
