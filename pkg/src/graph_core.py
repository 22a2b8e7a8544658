"""
Graph Core for Bar Visibility

Graph model and planar services used by every pipeline:
- Simple graphs and digraphs (networkx Graph / DiGraph)
- Plane embeddings (rotation system + outer face reference)
- Planarity testing with Kuratowski witnesses
- Biconnectivity augmentation inside faces
- Graph squares and the forest-or-triangle classifier

Independent module - only depends on networkx and errors.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cmp_to_key
from typing import Dict, Hashable, Iterable, List, NamedTuple, Optional, Tuple

import networkx as nx

from errors import EmbeddingError, GraphError, PipelineError

logger = logging.getLogger(__name__)

HalfEdge = Tuple[Hashable, Hashable]


def vertex_key(v):
    """Sort key that tolerates mixed vertex id types, tuples included"""
    if isinstance(v, tuple):
        return ("tuple", tuple(vertex_key(x) for x in v))
    if isinstance(v, (int, float, Fraction)) and not isinstance(v, bool):
        return ("number", v)
    if isinstance(v, str):
        return ("str", v)
    return (type(v).__name__, repr(v))


def sorted_vertices(vertices: Iterable) -> List:
    return sorted(vertices, key=vertex_key)


def edge_key(e) -> Tuple:
    a, b = sorted(e, key=vertex_key)
    return (vertex_key(a), vertex_key(b))


def sorted_edges(edges: Iterable) -> List[Tuple]:
    """Undirected edges as sorted pairs, in deterministic order"""
    pairs = [tuple(sorted(e, key=vertex_key)) for e in edges]
    return sorted(set(pairs), key=edge_key)


def make_graph(vertices: Iterable, edges: Iterable) -> nx.Graph:
    """Build a simple undirected graph, rejecting loops and unknown endpoints"""
    g = nx.Graph()
    g.add_nodes_from(vertices)
    for e in edges:
        u, v = tuple(e)
        if u == v:
            raise GraphError(f"Loop at vertex {u!r}")
        if u not in g or v not in g:
            raise GraphError(f"Edge {u!r}-{v!r} uses an undeclared vertex")
        g.add_edge(u, v)
    return g


def make_digraph(vertices: Iterable, arcs: Iterable) -> nx.DiGraph:
    """Build a simple digraph, rejecting loops and unknown endpoints"""
    d = nx.DiGraph()
    d.add_nodes_from(vertices)
    for u, v in arcs:
        if u == v:
            raise GraphError(f"Loop at vertex {u!r}")
        if u not in d or v not in d:
            raise GraphError(f"Arc {u!r}->{v!r} uses an undeclared vertex")
        d.add_edge(u, v)
    return d


def underlying_graph(d: nx.DiGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(d.nodes)
    g.add_edges_from(d.edges)
    return g


def same_edges(g: nx.Graph, h: nx.Graph) -> bool:
    """Equality of vertex and undirected edge sets"""
    if set(g.nodes) != set(h.nodes):
        return False
    return {frozenset(e) for e in g.edges} == {frozenset(e) for e in h.edges}


def square_of_digraph(g: nx.DiGraph) -> nx.Graph:
    """Undirected square: pairs joined by a directed path of length 1 or 2"""
    sq = nx.Graph()
    sq.add_nodes_from(g.nodes)
    for u in g:
        for v in g.successors(u):
            sq.add_edge(u, v)
            for w in g.successors(v):
                if w != u:
                    sq.add_edge(u, w)
    return sq


class Classification(str, Enum):
    FOREST = "forest"
    HAS_TRIANGLE = "has-triangle"
    NEITHER = "neither"


def forest_or_triangle(g: nx.Graph) -> Classification:
    """Classify a graph as acyclic, triangle-containing, or neither"""
    if g.number_of_nodes() == 0 or nx.is_forest(g):
        return Classification.FOREST
    if any(count > 0 for count in nx.triangles(g).values()):
        return Classification.HAS_TRIANGLE
    return Classification.NEITHER


# Plane embeddings

class Chord(NamedTuple):
    """Edge u-w added inside the face corner u, apex, w"""
    u: Hashable
    apex: Hashable
    w: Hashable

    @property
    def edge(self) -> frozenset:
        return frozenset((self.u, self.w))


@dataclass
class PlaneEmbedding:
    """
    Rotation system plus a reference to the outer face.

    Rotations follow networkx: neighbors are in clockwise order with y up.
    `outer` is a half-edge whose right-hand face is the outer face.
    """
    rotation: nx.PlanarEmbedding
    outer: Optional[HalfEdge] = None

    @classmethod
    def from_rotation(cls, data: Dict[Hashable, List], outer: Optional[HalfEdge] = None,
                      vertices: Iterable = ()) -> "PlaneEmbedding":
        rotation = nx.PlanarEmbedding()
        rotation.add_nodes_from(vertices)
        rotation.add_nodes_from(data)
        rotation.set_data(data)
        emb = cls(rotation, outer)
        if emb.outer is None:
            emb.outer = emb.largest_face_reference()
        return emb

    def copy(self) -> "PlaneEmbedding":
        return PlaneEmbedding(self.rotation.copy(), self.outer)

    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.rotation.nodes)
        g.add_edges_from((u, v) for u, v in self.rotation.edges)
        return g

    def vertices(self) -> List:
        return sorted_vertices(self.rotation.nodes)

    def cw(self, v) -> List:
        return list(self.rotation.neighbors_cw_order(v))

    def has_edge(self, u, v) -> bool:
        return self.rotation.has_edge(u, v)

    def cw_next(self, v, u):
        return self.rotation[v][u]["cw"]

    def ccw_next(self, v, u):
        return self.rotation[v][u]["ccw"]

    def face_half_edges(self, v, w) -> List[HalfEdge]:
        """Half-edges of the face to the right of v->w, starting with (v, w)"""
        nodes = self.rotation.traverse_face(v, w)
        return [(nodes[i], nodes[(i + 1) % len(nodes)]) for i in range(len(nodes))]

    def faces(self) -> List[List[HalfEdge]]:
        """All faces, each as its half-edge cycle, in deterministic order"""
        seen = set()
        result = []
        for v in self.vertices():
            for w in self.cw(v):
                if (v, w) in seen:
                    continue
                face = self.face_half_edges(v, w)
                seen.update(face)
                result.append(face)
        return result

    def outer_face(self) -> List[HalfEdge]:
        if self.outer is None:
            return []
        return self.face_half_edges(*self.outer)

    def outer_vertices(self) -> set:
        return {u for u, _ in self.outer_face()}

    def largest_face_reference(self) -> Optional[HalfEdge]:
        faces = self.faces()
        if not faces:
            return None
        return max(faces, key=len)[0]

    def validate(self) -> None:
        try:
            self.rotation.check_structure()
        except nx.NetworkXException as e:
            raise EmbeddingError(f"Invalid rotation system: {e}") from e
        if self.rotation.number_of_edges() and (
                self.outer is None or not self.rotation.has_edge(*self.outer)):
            raise EmbeddingError(f"Outer reference {self.outer!r} is not a half-edge")

    # Local edits

    def insert_chord(self, u, v, w) -> HalfEdge:
        """
        Add edge u-w inside the face containing consecutive half-edges
        (u, v), (v, w). The triangle u, v, w ends up right of (w, u).
        """
        if self.ccw_next(v, u) != w:
            raise EmbeddingError(f"({u!r},{v!r}),({v!r},{w!r}) are not consecutive on a face")
        if u == w or self.rotation.has_edge(u, w):
            raise EmbeddingError(f"Chord {u!r}-{w!r} would be a loop or parallel edge")
        on_outer = self.outer is not None and (u, v) in set(self.outer_face())
        self.rotation.add_half_edge(u, w, ccw=v)
        self.rotation.add_half_edge(w, u, cw=v)
        if on_outer:
            self.outer = (u, w)
        return (u, w)

    def add_edge_after(self, u, w, after_at_u, after_at_w) -> None:
        """Add u-w placed cw-after the given neighbors at each end"""
        self.rotation.add_half_edge(u, w, ccw=after_at_u)
        self.rotation.add_half_edge(w, u, ccw=after_at_w)

    def remove_edge(self, u, v) -> None:
        if self.outer is not None:
            doomed = {(u, v), (v, u)}
            keep = [h for h in self.outer_face() if h not in doomed]
            self.rotation.remove_edge(u, v)
            self.outer = keep[0] if keep else self.largest_face_reference()
        else:
            self.rotation.remove_edge(u, v)

    def remove_vertex(self, x) -> None:
        keep = [h for h in self.outer_face() if x not in h]
        self.rotation.remove_node(x)
        self.outer = keep[0] if keep else self.largest_face_reference()

    def smooth_vertex(self, y) -> Tuple[Hashable, Hashable]:
        """Replace degree-2 vertex y (neighbors r, s) by the edge r-s in place"""
        r, s = self.cw(y)
        if self.rotation.has_edge(r, s):
            raise EmbeddingError(f"Smoothing {y!r} would duplicate edge {r!r}-{s!r}")
        self.rotation.add_half_edge(r, s, ccw=y)
        self.rotation.add_half_edge(s, r, ccw=y)
        mapping = {(r, y): (r, s), (y, s): (r, s), (s, y): (s, r), (y, r): (s, r)}
        self.outer = mapping.get(self.outer, self.outer)
        self.rotation.remove_node(y)
        return (r, s)


def _ccw_compare(a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> int:
    """Exact counterclockwise angle comparison of two direction vectors"""
    def half(d):
        return 0 if (d[1] > 0 or (d[1] == 0 and d[0] > 0)) else 1
    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    cross = a[0] * b[1] - a[1] * b[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


def _signed_area(face: List[HalfEdge], pos: Dict) -> Fraction:
    total = Fraction(0)
    for u, v in face:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        total += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return total / 2


def embedding_from_positions(g: nx.Graph, pos: Dict) -> PlaneEmbedding:
    """
    Rotation system of a straight-line planar drawing (y axis up).
    The outer face is the face of maximum signed area.
    """
    data = {}
    for v in g:
        vx, vy = Fraction(pos[v][0]), Fraction(pos[v][1])
        dirs = {w: (Fraction(pos[w][0]) - vx, Fraction(pos[w][1]) - vy) for w in g[v]}
        ccw = sorted(dirs, key=cmp_to_key(lambda a, b: _ccw_compare(dirs[a], dirs[b])))
        data[v] = list(reversed(ccw))
    emb = PlaneEmbedding.from_rotation(data, vertices=g.nodes)
    faces = emb.faces()
    if faces:
        emb.outer = max(faces, key=lambda f: _signed_area(f, pos))[0]
    emb.validate()
    return emb


@dataclass
class PlanarityResult:
    is_planar: bool
    embedding: Optional[PlaneEmbedding] = None
    witness: Optional[nx.Graph] = None
    witness_kind: Optional[str] = None


def check_planarity(g: nx.Graph) -> PlanarityResult:
    """Planar embedding of g, or a Kuratowski subdivision witness"""
    planar, cert = nx.check_planarity(g, counterexample=True)
    if planar:
        emb = PlaneEmbedding(cert, None)
        emb.outer = emb.largest_face_reference()
        return PlanarityResult(True, embedding=emb)
    branch = [v for v in cert if cert.degree(v) >= 3]
    kind = "K5" if len(branch) == 5 else "K3,3"
    logger.debug(f"Non-planar: {kind} subdivision on {cert.number_of_nodes()} vertices")
    return PlanarityResult(False, witness=cert, witness_kind=kind)


def _block_index(g: nx.Graph) -> Dict[frozenset, int]:
    index = {}
    for i, block in enumerate(nx.biconnected_component_edges(g)):
        for u, v in block:
            index[frozenset((u, v))] = i
    return index


def biconnect_planar_augment(emb: PlaneEmbedding) -> Tuple[PlaneEmbedding, List[Chord]]:
    """
    Make a connected plane embedding biconnected by adding chords inside
    faces at cut vertices. Added edges carry the 'dummy' attribute.
    """
    result = emb.copy()
    g = result.graph()
    if g.number_of_nodes() <= 2:
        return result, []
    if not nx.is_connected(g):
        raise PipelineError("Biconnectivity augmentation needs a connected embedding")

    added: List[Chord] = []
    while True:
        cuts = sorted_vertices(nx.articulation_points(g))
        if not cuts:
            break
        v = cuts[0]
        blocks = _block_index(g)
        for u in result.cw(v):
            w = result.ccw_next(v, u)
            if blocks[frozenset((u, v))] != blocks[frozenset((v, w))]:
                result.insert_chord(u, v, w)
                result.rotation[u][w]["dummy"] = True
                result.rotation[w][u]["dummy"] = True
                g.add_edge(u, w)
                added.append(Chord(u, v, w))
                logger.debug(f"Added chord {u!r}-{w!r} at cut vertex {v!r}")
                break
        else:
            raise EmbeddingError(f"No face corner joins two blocks at cut vertex {v!r}")

    if added:
        logger.info(f"Biconnectivity augmentation added {len(added)} edges")
    return result, added
