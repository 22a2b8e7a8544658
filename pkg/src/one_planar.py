"""
1-Planar Graphs to Weak Bar 1-Visibility

Pipeline from a 1-planar embedding to a bar layout:
- 1-planar embeddings as planarizations with marked crossing vertices
- Kite completion around every crossing
- Crossing replacement by directed dummy paths a, u, c, v, b
- Path-aligned visibility layout with the dummy bars removed
- Random straight-line 1-planar drawings

Depends on graph_core, st_planar, bar_layout and geometry.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple

import networkx as nx

from bar_layout import BarLayout, Bar, realizes_weakly, visibility_windows
from errors import DegenerateDrawingError, EmbeddingError, InternalInvariantError, PipelineError
from geometry import orientation, point, segment_intersection
from graph_core import (Chord, PlaneEmbedding, biconnect_planar_augment,
                        embedding_from_positions, make_graph, same_edges, sorted_edges,
                        sorted_vertices, vertex_key)
from st_planar import (AlignedLayout, StDigraph, aligned_bar_layout, orient_by_numbers,
                       st_orient, validate_st_digraph)

logger = logging.getLogger(__name__)


@dataclass
class OnePlanarEmbedding:
    """
    Planarization of a 1-planar drawing.

    `crossings` maps each crossing vertex x to (a, c, b, d), its neighbors in
    clockwise order; the crossing edges are a-b and c-d.
    """
    plane: PlaneEmbedding
    crossings: Dict[Hashable, Tuple] = field(default_factory=dict)

    def copy(self) -> "OnePlanarEmbedding":
        return OnePlanarEmbedding(self.plane.copy(), dict(self.crossings))

    def original_vertices(self) -> List:
        return [v for v in self.plane.vertices() if v not in self.crossings]

    def planar_edges(self) -> List[Tuple]:
        return sorted_edges((u, v) for u, v in self.plane.rotation.edges
                            if u not in self.crossings and v not in self.crossings)

    def crossing_pairs(self) -> List[Tuple]:
        pairs = []
        for a, c, b, d in self.crossings.values():
            pairs.extend([(a, b), (c, d)])
        return sorted_edges(pairs)

    def original_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.original_vertices())
        g.add_edges_from(self.planar_edges())
        g.add_edges_from(self.crossing_pairs())
        return g

    def validate(self, g: Optional[nx.Graph] = None) -> None:
        self.plane.validate()
        seen = set()
        for x, quad in self.crossings.items():
            if x not in self.plane.rotation:
                raise EmbeddingError(f"Crossing {x!r} is not a vertex of the planarization")
            rot = self.plane.cw(x)
            if len(rot) != 4:
                raise EmbeddingError(f"Crossing {x!r} has degree {len(rot)}, expected 4")
            if len(set(quad)) != 4:
                raise EmbeddingError(f"Crossing {x!r} joins edges that share an endpoint")
            i = rot.index(quad[0]) if quad[0] in rot else -1
            if i < 0 or tuple(rot[i:] + rot[:i]) != tuple(quad):
                raise EmbeddingError(f"Crossing {x!r} rotation {rot} does not interleave {quad}")
            for w in quad:
                if w in self.crossings:
                    raise EmbeddingError(f"Crossings {x!r} and {w!r} are adjacent")
            a, c, b, d = quad
            for pair in (frozenset((a, b)), frozenset((c, d))):
                if pair in seen:
                    raise EmbeddingError(f"Edge {sorted(pair, key=vertex_key)} is crossed twice")
                if self.plane.has_edge(*pair):
                    raise EmbeddingError(f"Edge {sorted(pair, key=vertex_key)} is both crossed and planar")
                seen.add(pair)

        original = self.original_graph()
        n, m = original.number_of_nodes(), original.number_of_edges()
        if n >= 3 and m > 4 * n - 8:
            raise EmbeddingError(f"{m} edges exceed the 1-planar bound 4n-8 = {4 * n - 8}")
        if g is not None and not same_edges(original, g):
            raise EmbeddingError("Embedding does not represent the given graph")


def oneplanar_embedding_from_drawing(g: nx.Graph, pos: Dict) -> OnePlanarEmbedding:
    """Planarize a straight-line drawing in which every edge is crossed at most once"""
    pts = {v: point(*pos[v]) for v in g}
    edges = sorted_edges(g.edges)
    crossed: Dict[Tuple, Tuple] = {}
    found = []
    for i, (a, b) in enumerate(edges):
        for c, d in edges[i + 1:]:
            if {a, b} & {c, d}:
                continue
            hit = segment_intersection(pts[a], pts[b], pts[c], pts[d])
            if hit is None:
                continue
            if hit in (pts[a], pts[b], pts[c], pts[d]):
                raise EmbeddingError(f"Edges {a!r}-{b!r} and {c!r}-{d!r} meet at a vertex")
            for e in ((a, b), (c, d)):
                if e in crossed:
                    raise EmbeddingError(f"Edge {e} is crossed more than once")
            crossed[(a, b)] = crossed[(c, d)] = (c, d)
            found.append(((a, b), (c, d), hit))

    planar = nx.Graph()
    planar.add_nodes_from(g.nodes)
    planar.add_edges_from(e for e in edges if e not in crossed)
    positions = dict(pts)
    for i, ((a, b), (c, d), hit) in enumerate(found):
        x = ("x", i)
        positions[x] = hit
        planar.add_edges_from([(a, x), (x, b), (c, x), (x, d)])

    plane = embedding_from_positions(planar, positions)
    crossings = {}
    for i, ((a, b), _, _) in enumerate(found):
        x = ("x", i)
        rot = plane.cw(x)
        j = rot.index(a)
        crossings[x] = tuple(rot[j:] + rot[:j])
    emb = OnePlanarEmbedding(plane, crossings)
    emb.validate(g)
    logger.debug(f"Planarized drawing with {len(crossings)} crossings")
    return emb


def random_oneplanar_drawing(rng: random.Random, n: int,
                             grid: Optional[int] = None) -> Tuple[nx.Graph, Dict]:
    """
    Random straight-line drawing on grid points in which every edge is
    crossed at most once: vertex pairs in random order, each kept when its
    segment avoids other vertices and crosses at most one uncrossed edge.
    """
    grid = grid or max(4, 3 * n)
    cells = rng.sample(range(grid * grid), n)
    pos = {v: (c % grid, c // grid) for v, c in enumerate(cells)}
    pts = {v: point(*p) for v, p in pos.items()}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)

    edges: List[Tuple] = []
    crossed = set()
    for u, v in pairs:
        p, q = pts[u], pts[v]
        if any(w not in (u, v) and orientation(p, q, r) == 0 and
               min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])
               for w, r in pts.items()):
            continue
        hits = []
        for a, b in edges:
            if {a, b} & {u, v}:
                continue
            try:
                meet = segment_intersection(p, q, pts[a], pts[b])
            except DegenerateDrawingError:
                hits = None
                break
            if meet is not None:
                hits.append((a, b))
        if hits is None or len(hits) > 1 or (hits and hits[0] in crossed):
            continue
        if hits:
            crossed.update((hits[0], (u, v)))
        edges.append((u, v))
    return make_graph(range(n), edges), pos


# Kite completion

@dataclass
class KiteChange:
    kind: str
    edge: Tuple
    crossing: Hashable


def _crossing_with_pair(e: OnePlanarEmbedding, p, q) -> Optional[Hashable]:
    for y, (a, c, b, d) in e.crossings.items():
        if {a, b} == {p, q} or {c, d} == {p, q}:
            return y
    return None


def _uncross(e: OnePlanarEmbedding, y, p, q) -> None:
    """Delete the crossed copy of p-q at y; the partner edge becomes planar"""
    a, c, b, d = e.crossings.pop(y)
    r, s = (c, d) if {a, b} == {p, q} else (a, b)
    e.plane.remove_edge(y, p)
    e.plane.remove_edge(y, q)
    if e.plane.has_edge(r, s):
        e.plane.remove_vertex(y)
    else:
        e.plane.smooth_vertex(y)


def kite_augment(emb: OnePlanarEmbedding) -> Tuple[OnePlanarEmbedding, List[KiteChange]]:
    """
    Make the four kite edges of every crossing present and crossing-free.

    A missing kite edge is inserted through its quadrant next to the
    crossing vertex. A crossed one is rerouted there and its crossing
    dissolves. A crossing-free kite edge stays where it is even when it
    does not bound the quadrant, so two crossings may share it.
    """
    emb.validate()
    e = emb.copy()
    changes: List[KiteChange] = []
    changed = True
    while changed:
        changed = False
        for x in sorted(e.crossings, key=vertex_key):
            if x not in e.crossings:
                continue
            quad = e.crossings[x]
            for i in range(4):
                p, q = quad[i], quad[(i + 1) % 4]
                if e.plane.has_edge(p, q):
                    continue
                y = _crossing_with_pair(e, p, q)
                if y is not None:
                    _uncross(e, y, p, q)
                    kind = "rerouted"
                else:
                    kind = "inserted"
                e.plane.insert_chord(q, x, p)
                changes.append(KiteChange(kind, (p, q), x))
                logger.debug(f"Kite edge {p!r}-{q!r} {kind} at crossing {x!r}")
                changed = True
    e.validate()
    if changes:
        logger.info(f"Kite completion made {len(changes)} changes")
    return e, changes


# Crossing replacement

@dataclass
class DummyPath:
    """Directed path a, u, c, v, b replacing crossed edge a-b"""
    path: Tuple
    partner: Tuple
    dummies: Tuple
    crossing: Hashable


@dataclass
class ReplacementResult:
    st: StDigraph
    registry: List[DummyPath]
    chords: List[Chord]


def _skeleton(e: OnePlanarEmbedding) -> PlaneEmbedding:
    g0 = e.plane.copy()
    for x in sorted(e.crossings, key=vertex_key):
        g0.remove_vertex(x)
    return g0


def _splice(rotation: List, old, new: List) -> List:
    i = rotation.index(old)
    return rotation[:i] + new + rotation[i + 1:]


def replace_crossings(emb: OnePlanarEmbedding) -> ReplacementResult:
    """
    st-orient the crossing-free skeleton and replace every crossing by a
    directed dummy path through the middle kite vertex.
    """
    plane = emb.plane.copy()
    skeleton, chords = biconnect_planar_augment(_skeleton(emb))
    for chord in chords:
        plane.insert_chord(chord.u, chord.apex, chord.w)
    s, t = skeleton.outer
    base = st_orient(skeleton, s, t)
    numbers = dict(base.numbers)

    data = plane.rotation.get_data()
    registry: List[DummyPath] = []
    for x in sorted(emb.crossings, key=vertex_key):
        cycle = list(emb.crossings[x])
        pick = None
        for i in range(4):
            for step in (1, -1):
                p, q, r = cycle[i], cycle[(i + step) % 4], cycle[(i + 2 * step) % 4]
                if base.is_arc(p, q) and base.is_arc(q, r):
                    pick = (p, q, r, cycle[(i + 3 * step) % 4], step)
                    break
            if pick:
                break
        if pick is None:
            raise InternalInvariantError(f"Kite around {x!r} has no directed two-arc path")
        a, c, b, d, step = pick
        u, v = ("dummy-u", x), ("dummy-v", x)

        data[a] = _splice(data[a], x, [u])
        data[b] = _splice(data[b], x, [v])
        data[d] = _splice(data[d], x, [c])
        data[c] = _splice(data[c], x, [v, d, u] if step == 1 else [u, d, v])
        data[u] = [a, c]
        data[v] = [c, b]
        del data[x]

        numbers[u] = (numbers[a] + numbers[c]) / 2
        numbers[v] = (numbers[c] + numbers[b]) / 2
        registry.append(DummyPath((a, u, c, v, b), (c, d), (u, v), x))

    final = PlaneEmbedding.from_rotation(data, outer=(s, t))
    final.validate()
    st = StDigraph(final, orient_by_numbers(final, numbers), s, t, numbers)
    validate_st_digraph(st)
    logger.info(f"Replaced {len(registry)} crossings with dummy paths")
    return ReplacementResult(st, registry, chords)


def registry_visibility_violations(layout: BarLayout, registry: List[DummyPath]) -> List[DummyPath]:
    """Entries whose ends a, b are not 1-visible through exactly bar c"""
    windows = visibility_windows(layout, 1)
    bad = []
    for entry in registry:
        a, _, c, _, b = entry.path
        if not any(w.edge == frozenset((a, b)) and w.between == (c,) for w in windows):
            bad.append(entry)
    return bad


@dataclass
class OnePlanarResult:
    layout: BarLayout
    registry: List[DummyPath]
    kite_changes: List[KiteChange]
    augmentation: List[Chord]


def oneplanar_to_web1(emb: OnePlanarEmbedding, g: nx.Graph) -> OnePlanarResult:
    """Weak bar 1-visibility layout of a 1-planar graph from its embedding"""
    emb.validate(g)
    if g.number_of_nodes() == 1:
        only = next(iter(g.nodes))
        return OnePlanarResult(BarLayout.from_bars([Bar(only, 0, 0, 1)]), [], [], [])
    if g.number_of_nodes() == 0 or not nx.is_connected(g):
        raise PipelineError("1-planar pipeline needs a connected graph")

    kited, changes = kite_augment(emb)
    replaced = replace_crossings(kited)
    aligned: AlignedLayout = aligned_bar_layout(replaced.st, [entry.path for entry in replaced.registry])
    dummies = [w for entry in replaced.registry for w in entry.dummies]
    layout = aligned.layout.without(dummies)

    report = realizes_weakly(layout, g, 1)
    if not report.realized:
        raise InternalInvariantError(f"Layout misses edges {report.missing}")
    logger.info(f"1-planar graph with {g.number_of_nodes()} vertices realized by "
                f"{len(layout)} bars ({len(replaced.registry)} crossings)")
    return OnePlanarResult(layout, replaced.registry, changes, replaced.chords)
