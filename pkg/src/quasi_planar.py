"""
Quasi-Planar Drawings from Bar Layouts

Polyline drawing of a strong bar 1-visibility graph:
- Blue (direct) / red (through one bar) edge classification
- Drawing parameters gamma and delta in exact arithmetic
- 3-segment blue and 6-segment red polylines
- Crossing detection and maximum mutually crossing edge sets

Depends on bar_layout and geometry; numpy for crossing candidate filtering.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, NamedTuple, Optional, Tuple

import networkx as nx
import numpy as np

from bar_layout import BarLayout, visibility_windows
from geometry import Point, point, segment_intersection
from graph_core import sorted_vertices, vertex_key

logger = logging.getLogger(__name__)

BLUE = "blue"
RED = "red"

EdgeId = Tuple[Hashable, Hashable]


@dataclass(frozen=True)
class VisibilityEdge:
    """Edge lower-upper with its rightmost realizing window (lo, hi)"""
    lower: Hashable
    upper: Hashable
    lo: Fraction
    hi: Fraction
    bypass: Optional[Hashable] = None

    @property
    def key(self) -> EdgeId:
        return (self.lower, self.upper)


@dataclass
class EdgeClassification:
    blue: Dict[EdgeId, VisibilityEdge] = field(default_factory=dict)
    red: Dict[EdgeId, VisibilityEdge] = field(default_factory=dict)

    def edges(self) -> List[EdgeId]:
        return list(self.blue) + list(self.red)


def classify_visibility_edges(layout: BarLayout) -> EdgeClassification:
    """Blue edges have a direct visibility; red ones only see through one bar"""
    direct: Dict[frozenset, VisibilityEdge] = {}
    through: Dict[frozenset, VisibilityEdge] = {}
    for w in visibility_windows(layout, 1):
        target = direct if not w.between else through
        best = target.get(w.edge)
        if best is None or w.lo > best.lo:
            bypass = w.between[0] if w.between else None
            target[w.edge] = VisibilityEdge(w.lower, w.upper, w.lo, w.hi, bypass)

    result = EdgeClassification()
    for edge in sorted(direct, key=lambda e: sorted(map(vertex_key, e))):
        info = direct[edge]
        result.blue[info.key] = info
    for edge in sorted(through, key=lambda e: sorted(map(vertex_key, e))):
        if edge not in direct:
            info = through[edge]
            result.red[info.key] = info
    logger.debug(f"Classified {len(result.blue)} blue and {len(result.red)} red edges")
    return result


@dataclass
class DrawingParams:
    gamma: Fraction
    delta: Fraction
    shift_counts: Dict[EdgeId, int] = field(default_factory=dict)
    shifts: Dict[EdgeId, Fraction] = field(default_factory=dict)


def _min_positive_gap(values) -> Optional[Fraction]:
    vals = sorted(set(values))
    gaps = [b - a for a, b in zip(vals, vals[1:])]
    return min(gaps) if gaps else None


def drawing_parameters(layout: BarLayout, classification: EdgeClassification) -> DrawingParams:
    """
    gamma is a quarter of the smallest positive coordinate gap, delta is
    gamma / (|E|^2 + 1). Red edges are shifted left by (k + 1) delta, k being
    the number of red edges with the same bypass whose window lies further
    right, plus a sub-delta offset that separates red edges sharing a column.
    """
    xs = [c for b in layout.bars.values() for c in (b.x_left, b.x_right)]
    ys = [b.y for b in layout.bars.values()]
    gaps = [g for g in (_min_positive_gap(xs), _min_positive_gap(ys)) if g is not None]
    gamma = (min(gaps) if gaps else Fraction(1)) / 4
    m = len(classification.blue) + len(classification.red)
    delta = gamma / (m * m + 1)
    params = DrawingParams(gamma, delta)

    by_bypass: Dict[Hashable, List[VisibilityEdge]] = {}
    by_column: Dict[Fraction, List[VisibilityEdge]] = {}
    for info in classification.red.values():
        by_bypass.setdefault(info.bypass, []).append(info)
        by_column.setdefault(info.lo, []).append(info)
    epsilon = delta / (m + 1)
    rank = {}
    for column in by_column.values():
        column.sort(key=lambda i: layout[i.lower].y)
        for j, info in enumerate(column):
            rank[info.key] = j
    for group in by_bypass.values():
        for info in group:
            k = sum(1 for other in group if other.lo > info.lo)
            params.shift_counts[info.key] = k
            params.shifts[info.key] = (k + 1) * delta + rank[info.key] * epsilon
    return params


@dataclass
class PolylineDrawing:
    points: Dict[Hashable, Point] = field(default_factory=dict)
    polylines: Dict[EdgeId, List[Point]] = field(default_factory=dict)
    colors: Dict[EdgeId, str] = field(default_factory=dict)
    params: Optional[DrawingParams] = None
    bypass: Dict[EdgeId, Hashable] = field(default_factory=dict)


def _hop(layout: BarLayout, u, w, x: Fraction, gamma: Fraction, shift: Fraction,
         start, end) -> List[Point]:
    """Points from start to end rising along the vertical line x - shift"""
    cx = x - shift
    return [start, (cx, layout[u].y + gamma), (cx, layout[w].y - gamma), end]


def layout_to_quasiplanar(layout: BarLayout) -> PolylineDrawing:
    """Quasi-planar polyline drawing of the strong 1-visibility graph"""
    layout.validate()
    classification = classify_visibility_edges(layout)
    params = drawing_parameters(layout, classification)
    gamma = params.gamma
    drawing = PolylineDrawing(params=params)
    for v in layout.vertices():
        drawing.points[v] = point(layout[v].x_left, layout[v].y)

    for key, info in classification.blue.items():
        u, w = key
        x = info.hi - gamma
        drawing.polylines[key] = _hop(layout, u, w, x, gamma, Fraction(0),
                                      drawing.points[u], drawing.points[w])
        drawing.colors[key] = BLUE

    for key, info in classification.red.items():
        u, w = key
        v = info.bypass
        x = info.hi - gamma
        s = params.shifts[key]
        via = (drawing.points[v][0] - s, drawing.points[v][1])
        first = _hop(layout, u, v, x, gamma, s, drawing.points[u], via)
        second = _hop(layout, v, w, x, gamma, s, via, drawing.points[w])
        drawing.polylines[key] = first + second[1:]
        drawing.colors[key] = RED
        drawing.bypass[key] = v

    logger.info(f"Drew {len(classification.blue)} blue and {len(classification.red)} red edges")
    return drawing


# Crossings

class Crossing(NamedTuple):
    first: EdgeId
    second: EdgeId
    at: Point


def find_crossings(drawing: PolylineDrawing) -> List[Crossing]:
    """
    All pairs of edges without a common endpoint whose polylines meet,
    with one meeting point each. Raises DegenerateDrawingError on overlap.
    """
    segments = []
    for key, line in drawing.polylines.items():
        for p, q in zip(line, line[1:]):
            segments.append((key, p, q))
    if not segments:
        return []

    boxes = np.array([[float(min(p[0], q[0])), float(max(p[0], q[0])),
                       float(min(p[1], q[1])), float(max(p[1], q[1]))] for _, p, q in segments])
    tol = 1e-9
    overlap = ((boxes[:, None, 0] <= boxes[None, :, 1] + tol) & (boxes[None, :, 0] <= boxes[:, None, 1] + tol) &
               (boxes[:, None, 2] <= boxes[None, :, 3] + tol) & (boxes[None, :, 2] <= boxes[:, None, 3] + tol))
    rows, cols = np.nonzero(np.triu(overlap, k=1))

    found: Dict[Tuple[EdgeId, EdgeId], Point] = {}
    for i, j in zip(rows.tolist(), cols.tolist()):
        e, p1, p2 = segments[i]
        f, q1, q2 = segments[j]
        if e == f or set(e) & set(f):
            continue
        pair = (e, f) if (e, f) not in found and (f, e) not in found else None
        if pair is None:
            continue
        hit = segment_intersection(p1, p2, q1, q2)
        if hit is not None:
            found[pair] = hit
    return [Crossing(e, f, at) for (e, f), at in found.items()]


def crossing_graph(drawing: PolylineDrawing, crossings: Optional[List[Crossing]] = None) -> nx.Graph:
    if crossings is None:
        crossings = find_crossings(drawing)
    g = nx.Graph()
    g.add_nodes_from(drawing.polylines)
    g.add_edges_from((c.first, c.second) for c in crossings)
    return g


def max_mutual_crossing(drawing: PolylineDrawing) -> int:
    """Size of the largest set of pairwise crossing edges"""
    g = crossing_graph(drawing)
    if g.number_of_nodes() == 0:
        return 0
    return max(len(c) for c in nx.find_cliques(g))


def mutually_crossing_triples(drawing: PolylineDrawing) -> List[Tuple[EdgeId, ...]]:
    g = crossing_graph(drawing)
    return [tuple(c) for c in nx.enumerate_all_cliques(g) if len(c) == 3]


def blue_blue_crossings(drawing: PolylineDrawing, crossings: List[Crossing]) -> List[Crossing]:
    return [c for c in crossings
            if drawing.colors[c.first] == BLUE and drawing.colors[c.second] == BLUE]


def same_bypass_crossings(drawing: PolylineDrawing, crossings: List[Crossing]) -> List[Crossing]:
    return [c for c in crossings
            if drawing.colors[c.first] == RED and drawing.colors[c.second] == RED
            and drawing.bypass[c.first] == drawing.bypass[c.second]]


def crossings_away_from_bars(layout: BarLayout, drawing: PolylineDrawing,
                             crossings: List[Crossing]) -> List[Crossing]:
    """Crossings farther than gamma (L-infinity) from every bar"""
    gamma = drawing.params.gamma
    far = []
    for c in crossings:
        px, py = c.at
        near = False
        for bar in layout.bars.values():
            dx = max(bar.x_left - px, Fraction(0), px - bar.x_right)
            if max(dx, abs(py - bar.y)) <= gamma:
                near = True
                break
        if not near:
            far.append(c)
    return far
