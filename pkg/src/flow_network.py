"""
Planar k-Flow Networks and Their Squares

Upward planar flow networks and the bar 1-visibility of their squares:
- Flow network model with straight-line upward drawings
- k-flow checks
- Augmentation of a 1-flow network to a planar st-digraph that stays 1-flow
- Square of a 1-flow network realized as a weak bar 1-visibility layout
- Rotated grid 2-flow network whose square is too dense for bar 1-visibility
- Random upward planar 1-flow networks

Uses graph_core, st_planar and bar_layout; pandas for degree histograms;
config.limits for the grid side and the 6n - 20 bound.
"""

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Set, Tuple

import networkx as nx
import pandas as pd

from bar_layout import Bar, BarLayout, realizes_weakly
from config import limits
from errors import DegenerateDrawingError, GraphError, InternalInvariantError, PipelineError
from geometry import orientation, point, segment_intersection
from graph_core import (_signed_area, embedding_from_positions, sorted_vertices,
                        square_of_digraph, underlying_graph, vertex_key)
from st_planar import StDigraph, tt_bar_layout, validate_st_digraph

logger = logging.getLogger(__name__)

Arc = Tuple[Hashable, Hashable]

UP = math.pi / 2
DOWN = -math.pi / 2
TWO_PI = 2 * math.pi


@dataclass
class FlowNetwork:
    """Acyclic digraph with a straight-line upward planar drawing"""
    digraph: nx.DiGraph
    pos: Dict[Hashable, Tuple[Fraction, Fraction]]
    k: int = 1

    def __post_init__(self):
        self.pos = {v: point(*p) for v, p in self.pos.items()}

    def rank(self, v) -> Tuple:
        x, y = self.pos[v]
        return (y, x, vertex_key(v))

    def validate(self, check_drawing: bool = True) -> None:
        g = self.digraph
        missing = [v for v in g if v not in self.pos]
        if missing:
            raise GraphError(f"Vertices without coordinates: {sorted_vertices(missing)}")
        if not nx.is_directed_acyclic_graph(g):
            raise GraphError("Flow network has a directed cycle")
        for u, v in g.edges:
            if not self.pos[u][1] < self.pos[v][1]:
                raise GraphError(f"Arc {u!r}->{v!r} does not point upward")
        ok, bad = is_k_flow(g, self.k)
        if not ok:
            raise GraphError(f"Not a {self.k}-flow network at {bad[:5]}")
        if check_drawing:
            hits = drawing_crossings(g, self.pos)
            if hits:
                raise GraphError(f"Drawing is not planar: {hits[:3]}")


def is_k_flow(g: nx.DiGraph, k: int) -> Tuple[bool, List]:
    """Every vertex has in-degree or out-degree at most k"""
    bad = [v for v in sorted_vertices(g.nodes) if min(g.in_degree(v), g.out_degree(v)) > k]
    return (not bad, bad)


def drawing_crossings(g: nx.DiGraph, pos: Dict) -> List[Tuple[Arc, Arc]]:
    """Pairs of arcs without a common endpoint whose segments meet (x-sweep)"""
    segments = []
    for u, v in g.edges:
        p, q = pos[u], pos[v]
        segments.append((min(p[0], q[0]), max(p[0], q[0]), (u, v)))
    segments.sort(key=lambda s: (s[0], s[1]))

    hits = []
    active: List[Tuple] = []
    for lo, hi, arc in segments:
        active = [s for s in active if s[1] >= lo]
        for _, _, other in active:
            if set(arc) & set(other):
                continue
            try:
                meet = segment_intersection(pos[arc[0]], pos[arc[1]], pos[other[0]], pos[other[1]])
            except DegenerateDrawingError:
                meet = True
            if meet is not None:
                hits.append((other, arc))
        active.append((lo, hi, arc))
    return hits


def bar_containment_check(d: nx.DiGraph, layout: BarLayout) -> List[Arc]:
    """Arcs (u, v), v with in-degree one, whose bar(v) x-range leaves bar(u)"""
    bad = []
    for v in sorted_vertices(d.nodes):
        preds = list(d.predecessors(v))
        if len(preds) != 1:
            continue
        u = preds[0]
        if not layout[u].covers(layout[v].x_left, layout[v].x_right):
            bad.append((u, v))
    return bad


# st-augmentation

@dataclass
class Switch:
    """Face corner where both boundary arcs point in (sink) or out (source)"""
    vertex: Hashable
    out: Optional[Hashable]
    sink: bool
    large: bool


@dataclass
class AugmentationResult:
    st: StDigraph
    added: List[Arc] = field(default_factory=list)


def _cw_mid(a: float, b: float) -> float:
    """Angle halfway from a to b going clockwise"""
    return a - ((a - b) % TWO_PI) / 2


def _inside(face: List, pos: Dict, p) -> bool:
    """Crossing-number test of point p against a face boundary walk"""
    px, py = p
    inside = False
    for u, v in face:
        (x1, y1), (x2, y2) = pos[u], pos[v]
        if (y1 > py) != (y2 > py):
            cx = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
            if cx > px:
                inside = not inside
    return inside


class _Augmenter:
    """
    Cancels sinks and sources of a bimodal upward embedding one arc at a time.

    Switches whose large corner (containing the vertical direction, up at
    sinks and down at sources) lies on the outer face are fanned into the
    top vertex and out of the bottom vertex. Every other sink shoots an
    upward vertical ray, follows the first boundary edge it meets upward
    to a sink corner of the same face and is joined to that vertex;
    sources do the same downward. Heights tie-break on x, so an arc
    between two vertices at the same height runs left to right.
    """

    def __init__(self, f: FlowNetwork):
        self.f = f
        self.d = f.digraph.copy()
        self.emb = embedding_from_positions(underlying_graph(self.d), f.pos)
        self.theta: Dict[Hashable, Dict[Hashable, float]] = {}
        for v in self.d:
            vx, vy = f.pos[v]
            self.theta[v] = {w: math.atan2(float(f.pos[w][1] - vy), float(f.pos[w][0] - vx))
                             for w in self.emb.cw(v)}
        self.top = max(self.d, key=f.rank)
        self.bottom = min(self.d, key=f.rank)
        self.added: List[Arc] = []

    # corners

    def _end(self, v, a):
        return a if self.emb.rotation.degree(v) <= 1 else self.emb.cw_next(v, a)

    def _contains(self, v, a, direction: float) -> bool:
        if a is None:
            return True
        x = self._end(v, a)
        span = TWO_PI if x == a else (self.theta[v][a] - self.theta[v][x]) % TWO_PI
        offset = (self.theta[v][a] - direction) % TWO_PI
        return 0 < offset < span

    def _switch(self, v, a) -> Optional[Switch]:
        x = self._end(v, a)
        in_a, in_x = self.d.has_edge(a, v), self.d.has_edge(x, v)
        if in_a and in_x:
            return Switch(v, a, True, self._contains(v, a, UP))
        if not in_a and not in_x:
            return Switch(v, a, False, self._contains(v, a, DOWN))
        return None

    def _face_switches(self, face) -> List[Switch]:
        return [s for s in (self._switch(v, a) for v, a in face) if s is not None]

    def _large_corner(self, v, direction: float) -> Optional[Hashable]:
        for a in self.emb.cw(v):
            if self._contains(v, a, direction):
                return a
        return None

    def _above(self, v, w, up: bool) -> bool:
        return self.f.rank(v) > self.f.rank(w) if up else self.f.rank(v) < self.f.rank(w)

    # edits

    def _new_angle(self, v, a, toward: Optional[float], cut_at_start: bool) -> float:
        """Direction for a new edge in corner (v, a), hugging one side of `toward`"""
        if a is None:
            return UP if toward is None else toward
        start, end = self.theta[v][a], self.theta[v][self._end(v, a)]
        if toward is None:
            if self._end(v, a) == a:
                return start - math.pi
            return _cw_mid(start, end)
        return _cw_mid(start, toward) if cut_at_start else _cw_mid(toward, end)

    def _add(self, tail, head, u_corner, w_corner, u_angle: float, w_angle: float,
             new_outer: Optional[Tuple]) -> None:
        (u, a_u), (w, a_w) = u_corner, w_corner
        self.emb.add_edge_after(u, w, after_at_u=a_u, after_at_w=a_w)
        self.theta[u][w] = u_angle
        self.theta[w][u] = w_angle
        self.d.add_edge(tail, head)
        self.added.append((tail, head))
        if new_outer is not None:
            self.emb.outer = new_outer
        logger.debug(f"Augmenting arc {tail!r}->{head!r}")

    def _fan(self, sink: bool) -> bool:
        """Join one large outer sink to the top vertex, or the bottom vertex to one large outer source"""
        hub, marker = (self.top, self.bottom) if sink else (self.bottom, self.top)
        vertical = UP if sink else DOWN
        hub_out = self._large_corner(hub, vertical)
        marker_out = self._large_corner(marker, DOWN if sink else UP)
        outer = self.emb.outer_face()
        candidates = [s for s in self._face_switches(outer)
                      if s.sink == sink and s.large and s.vertex != hub]
        if not candidates:
            return False
        t = min(candidates, key=lambda s: self.f.rank(s.vertex))
        if self.emb.has_edge(t.vertex, hub):
            raise InternalInvariantError(f"Outer switch {t.vertex!r} is already joined to {hub!r}")

        walk = self.emb.face_half_edges(t.vertex, t.out)
        if (hub, hub_out) not in walk:
            raise InternalInvariantError(f"Large corner of {hub!r} left the outer face")
        idx = walk.index((hub, hub_out))
        marker_between = (marker, marker_out) in walk[1:idx]
        # face right of (hub, t) holds the walk from t to hub
        if marker_between:
            new_outer, cut_at_start = (hub, t.vertex), True
        else:
            new_outer, cut_at_start = (t.vertex, hub), False
        hub_angle = self._new_angle(hub, hub_out, vertical, cut_at_start)
        tail, head = (t.vertex, hub) if sink else (hub, t.vertex)
        self._add(tail, head, (t.vertex, t.out), (hub, hub_out),
                  vertical, hub_angle, new_outer)
        return True

    # vertical rays

    def _straight(self, p, q) -> bool:
        return self.f.digraph.has_edge(p, q) or self.f.digraph.has_edge(q, p)

    def _ray_hit(self, walk: List, v, up: bool) -> Optional[Tuple[int, Optional[Hashable]]]:
        """Index of the first straight boundary half-edge met by the vertical ray from v, and the vertex hit if any"""
        vx, vy = self.f.pos[v]
        best = None
        for i, (p, q) in enumerate(walk):
            if v in (p, q) or not self._straight(p, q):
                continue
            (x1, y1), (x2, y2) = self.f.pos[p], self.f.pos[q]
            if x1 == x2:
                if x1 != vx:
                    continue
                y = min(y1, y2) if up else max(y1, y2)
            elif min(x1, x2) <= vx <= max(x1, x2):
                y = y1 + (vx - x1) * (y2 - y1) / (x2 - x1)
            else:
                continue
            gap = y - vy if up else vy - y
            if gap <= 0 or (best is not None and gap >= best[0]):
                continue
            at = p if (vx, y) == self.f.pos[p] else q if (vx, y) == self.f.pos[q] else None
            best = (gap, i, at)
        return None if best is None else best[1:]

    def _climb(self, walk: List, i: int, at, up: bool):
        """Follow the face boundary from the hit on half-edge i until it stops rising"""
        verts = [h[0] for h in walk]
        n = len(verts)
        if at is None:
            j, step = (i + 1, 1) if self._above(verts[(i + 1) % n], verts[i], up) else (i, -1)
        else:
            j = i if verts[i] == at else i + 1
            step = 1 if self._above(verts[(j + 1) % n], verts[j % n], up) else -1
        j %= n
        for _ in range(n):
            nxt = (j + step) % n
            if not self._above(verts[nxt], verts[j], up):
                break
            j = nxt
        return verts[j]

    def _ray_targets(self, sink: bool) -> Dict[Hashable, Optional[Hashable]]:
        direction = UP if sink else DOWN
        outer = set(self.emb.outer_face())
        targets = {}
        for v in sorted(self.d, key=self.f.rank):
            if v in (self.top, self.bottom):
                continue
            if (self.d.out_degree(v) if sink else self.d.in_degree(v)) > 0:
                continue
            a = self._large_corner(v, direction)
            if (v, a) in outer:
                raise InternalInvariantError(f"Switch {v!r} still opens onto the outer face")
            walk = self.emb.face_half_edges(v, a)
            hit = self._ray_hit(walk, v, sink)
            targets[v] = None if hit is None else self._climb(walk, *hit, sink)
        return targets

    def _cancel(self, v, target, sink: bool) -> None:
        """Join switch v to a switch corner of the face its vertical ray enters"""
        direction = UP if sink else DOWN
        a = self._large_corner(v, direction)
        corners = []
        for w, b in self.emb.face_half_edges(v, a):
            s = self._switch(w, b)
            if w != v and s is not None and s.sink == sink and self._above(w, v, sink):
                corners.append((w, b))
        if not corners:
            raise InternalInvariantError(f"Face above switch {v!r} has no switch to join")
        hits = [c for c in corners if c[0] == target]
        if hits:
            w, b = hits[0]
        else:
            logger.debug(f"Ray target {target!r} of {v!r} is not on its face, joining the face extreme")
            w, b = max(corners, key=lambda c: self.f.rank(c[0])) if sink else \
                min(corners, key=lambda c: self.f.rank(c[0]))
        toward = direction if self._contains(w, b, direction) else None
        tail, head = (v, w) if sink else (w, v)
        self._add(tail, head, (v, a), (w, b), direction, self._new_angle(w, b, toward, True), None)

    # components

    def _connect_components(self) -> None:
        g = underlying_graph(self.d)
        comps = [set(c) for c in nx.connected_components(g)]
        if len(comps) <= 1:
            return
        faces = self.emb.faces()
        pos = self.f.pos
        comp_faces = []
        for comp in comps:
            mine = [face for face in faces if face[0][0] in comp]
            comp_faces.append(mine)
        for i, comp in enumerate(comps):
            mine = comp_faces[i]
            if not mine:
                continue
            outer = max(mine, key=lambda face: _signed_area(face, pos))
            for j, other in enumerate(comps):
                if i == j:
                    continue
                corner = pos[min(other, key=vertex_key)]
                for face in mine:
                    if face is not outer and _inside(face, pos, corner):
                        raise PipelineError("Flow network has a component nested inside a face "
                                            "of another component")

        home = next(c for c in comps if self.top in c)
        others = sorted((c for c in comps if c is not home),
                        key=lambda c: self.f.rank(max(c, key=self.f.rank)), reverse=True)
        for comp in others:
            c = max(comp, key=self.f.rank)
            hub_out = self._large_corner(self.top, UP)
            c_out = self._large_corner(c, UP) if self.emb.rotation.degree(c) else None
            left = pos[c][0] < pos[self.top][0]
            hub_angle = self._new_angle(self.top, hub_out, UP, left)
            if hub_out is None:
                cx, cy = pos[c][0] - pos[self.top][0], pos[c][1] - pos[self.top][1]
                hub_angle = math.atan2(float(cy), float(cx))
            self._add(c, self.top, (c, c_out), (self.top, hub_out), UP, hub_angle,
                      (c, self.top))
        logger.info(f"Joined {len(others)} side-by-side components to the top vertex")

    def run(self) -> AugmentationResult:
        if self.d.number_of_edges() == 0 and len(self.d) <= 1:
            st = StDigraph(self.emb, self.d, self.bottom, self.top, {self.bottom: Fraction(0)})
            return AugmentationResult(st, [])
        self._connect_components()
        while self._fan(True):
            pass
        while self._fan(False):
            pass
        targets = {sink: self._ray_targets(sink) for sink in (True, False)}
        for sink in (True, False):
            for v, target in targets[sink].items():
                self._cancel(v, target, sink)

        sources = [v for v in self.d if self.d.in_degree(v) == 0]
        sinks = [v for v in self.d if self.d.out_degree(v) == 0]
        if sources != [self.bottom] or sinks != [self.top]:
            raise InternalInvariantError(f"Augmentation left sources {sources} and sinks {sinks}")
        order = sorted(self.d, key=self.f.rank)
        numbers = {v: Fraction(i) for i, v in enumerate(order)}
        st = StDigraph(self.emb, self.d, self.bottom, self.top, numbers)
        return AugmentationResult(st, self.added)


def st_augment_1flow(f: FlowNetwork) -> AugmentationResult:
    """
    Planar st-digraph containing the 1-flow network f as a spanning
    subgraph, still 1-flow, with the lowest vertex as source and the
    highest as sink. Added arcs are upward once heights tie-break on x.
    """
    if f.k != 1:
        raise GraphError(f"Augmentation needs a 1-flow network, got k={f.k}")
    f.validate()
    result = _Augmenter(f).run()
    validate_st_digraph(result.st)
    downward = [(u, v) for u, v in result.added if not f.rank(u) < f.rank(v)]
    if downward:
        raise InternalInvariantError(f"Augmenting arcs do not point upward: {downward[:5]}")
    ok, bad = is_k_flow(result.st.digraph, 1)
    if not ok:
        raise InternalInvariantError(f"Augmentation broke the 1-flow property at {bad}")
    logger.info(f"Augmented {f.digraph.number_of_nodes()} vertices with {len(result.added)} arcs")
    return result


# Squares of 1-flow networks

@dataclass
class FlowSquareResult:
    layout: BarLayout
    square: nx.Graph
    augmentation: Optional[AugmentationResult] = None
    containment_violations: List[Arc] = field(default_factory=list)


def flow_square_to_web1(f: FlowNetwork) -> FlowSquareResult:
    """Weak bar 1-visibility layout of the square of a planar 1-flow network"""
    f.validate()
    square = square_of_digraph(f.digraph)
    if len(f.digraph) == 1:
        v = next(iter(f.digraph))
        return FlowSquareResult(BarLayout.from_bars([Bar(v, 0, 0, 1)]), square)

    aug = st_augment_1flow(f)
    tt = tt_bar_layout(aug.st)
    report = realizes_weakly(tt.layout, square, 1)
    if not report.realized:
        raise InternalInvariantError(f"Square edges not 1-visible: {report.missing[:5]}")
    violations = bar_containment_check(aug.st.digraph, tt.layout)
    if violations:
        raise InternalInvariantError(f"Bar containment fails on arcs {violations[:5]}")
    logger.info(f"Realized square with {square.number_of_edges()} edges on {len(tt.layout)} bars")
    return FlowSquareResult(tt.layout, square, aug, violations)


def square_out_degrees(d: nx.DiGraph) -> Dict[Hashable, int]:
    """Out-degree of each vertex in the directed square"""
    result = {}
    for v in d:
        reach: Set = set(d.successors(v))
        for w in list(reach):
            reach.update(d.successors(w))
        reach.discard(v)
        result[v] = len(reach)
    return result


# Rotated grid

@dataclass
class GridResult:
    network: FlowNetwork
    m: int
    square_edges: int
    web1_bound: int
    density_bound: Fraction
    histogram: pd.Series

    @property
    def exceeds_web1(self) -> bool:
        return self.square_edges > self.web1_bound

    def summary(self) -> Dict:
        return {
            "m": self.m,
            "n": self.m * self.m,
            "square_edges": self.square_edges,
            "web1_bound": self.web1_bound,
            "density_bound": str(self.density_bound),
            "exceeds_web1": self.exceeds_web1,
            "histogram": {int(k): int(v) for k, v in self.histogram.items()},
        }


def grid_vertex(m: int, i: int, j: int) -> int:
    return i * m + j


def grid_network(m: int) -> FlowNetwork:
    """
    m x m grid rotated by 45 degrees with every arc pointing up. Each
    square cell whose lower-left row is odd (rows counted from 1) also
    gets its vertical diagonal, bottom to top.
    """
    if m < limits.GRID_MIN_SIDE:
        raise GraphError(f"Grid side must be at least {limits.GRID_MIN_SIDE}, got {m}")
    d = nx.DiGraph()
    pos = {}
    for i in range(m):
        for j in range(m):
            v = grid_vertex(m, i, j)
            d.add_node(v)
            pos[v] = (i - j, i + j)
            if i + 1 < m:
                d.add_edge(v, grid_vertex(m, i + 1, j))
            if j + 1 < m:
                d.add_edge(v, grid_vertex(m, i, j + 1))
            if i % 2 == 0 and i + 1 < m and j + 1 < m:
                d.add_edge(v, grid_vertex(m, i + 1, j + 1))
    return FlowNetwork(d, pos, 2)


def grid_2flow_counterexample(m: int, check_drawing: Optional[bool] = None) -> GridResult:
    """Planar 2-flow grid and the density of its square against 6n - 20"""
    f = grid_network(m)
    if check_drawing is None:
        check_drawing = m <= 20
    f.validate(check_drawing=check_drawing)

    square = square_of_digraph(f.digraph)
    degrees = square_out_degrees(f.digraph)
    interior = [degrees[grid_vertex(m, i, j)] for i in range(m - 2) for j in range(m - 2)]
    histogram = pd.Series(interior, dtype="int64").value_counts().sort_index()
    n = m * m
    result = GridResult(f, m, square.number_of_edges(), limits.web1_bound(n),
                        Fraction(13, 2) * (m - 2) ** 2, histogram)
    logger.info(f"Grid m={m}: square has {result.square_edges} edges, bound {result.web1_bound}")
    return result


# Random instances

def _blocked(pos: Dict, u, v, edges: List[Arc]) -> bool:
    p, q = pos[u], pos[v]
    for z, zp in pos.items():
        if z not in (u, v) and orientation(p, q, zp) == 0 and \
                min(p[0], q[0]) <= zp[0] <= max(p[0], q[0]) and \
                min(p[1], q[1]) <= zp[1] <= max(p[1], q[1]):
            return True
    for a, b in edges:
        r, s = pos[a], pos[b]
        shared = {u, v} & {a, b}
        if shared:
            c = shared.pop()
            far1 = q if c == u else p
            far2 = s if c == a else r
            base = pos[c]
            if orientation(base, far1, far2) == 0 and \
                    (far1[0] - base[0]) * (far2[0] - base[0]) + (far1[1] - base[1]) * (far2[1] - base[1]) > 0:
                return True
            continue
        o1, o2 = orientation(p, q, r), orientation(p, q, s)
        o3, o4 = orientation(r, s, p), orientation(r, s, q)
        if o1 * o2 <= 0 and o3 * o4 <= 0:
            return True
    return False


def random_flow_network(rng: random.Random, n: int, grid: Optional[int] = None,
                        max_tries: int = 100) -> FlowNetwork:
    """
    Random connected upward planar 1-flow network: a greedy straight-line
    triangulation of random points, oriented upward and thinned to 1-flow.
    """
    grid = grid or max(4, 3 * n)
    for _ in range(max_tries):
        cells = rng.sample(range(grid * grid), n)
        pos = {v: (c % grid, c // grid) for v, c in enumerate(cells)}
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n) if pos[u][1] != pos[v][1]]
        pairs.sort(key=lambda e: ((pos[e[0]][0] - pos[e[1]][0]) ** 2 + (pos[e[0]][1] - pos[e[1]][1]) ** 2, e))
        arcs: List[Arc] = []
        for u, v in pairs:
            if not _blocked(pos, u, v, arcs):
                arcs.append((u, v) if pos[u][1] < pos[v][1] else (v, u))

        d = nx.DiGraph()
        d.add_nodes_from(range(n))
        d.add_edges_from(arcs)
        for v in sorted(d, key=lambda w: (pos[w][1], pos[w][0])):
            while min(d.in_degree(v), d.out_degree(v)) > 1:
                side = list(d.in_edges(v)) if d.in_degree(v) <= d.out_degree(v) else list(d.out_edges(v))
                rng.shuffle(side)
                keep_connected = [e for e in side if _still_connected(d, e)]
                d.remove_edge(*(keep_connected[0] if keep_connected else side[0]))
        if n == 1 or nx.is_weakly_connected(d):
            f = FlowNetwork(d, pos, 1)
            f.validate(check_drawing=False)
            return f
    raise GraphError(f"Could not generate a connected 1-flow network on {n} vertices")


def _still_connected(d: nx.DiGraph, arc: Arc) -> bool:
    d.remove_edge(*arc)
    ok = nx.is_weakly_connected(d)
    d.add_edge(*arc)
    return ok


def network_from_arcs(arcs, pos: Dict, k: int = 1) -> FlowNetwork:
    d = nx.DiGraph()
    d.add_nodes_from(pos)
    for u, v in arcs:
        if u not in pos or v not in pos:
            raise GraphError(f"Arc {u!r}->{v!r} uses an undeclared vertex")
        d.add_edge(u, v)
    return FlowNetwork(d, pos, k)
