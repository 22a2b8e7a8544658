"""
Planar st-Digraphs and Visibility Layouts

st-orientation and the bar 0-visibility construction:
- DFS-based st-numbering of a biconnected plane embedding
- Faces, left/right incidence and the directed dual
- Optimal topological numberings psi (vertices) and chi (faces)
- Bar layout from the numberings, with per-arc visibility strips
- Path-aligned layouts where each path's arcs share one x-coordinate

Independent module - uses graph_core and bar_layout.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

import networkx as nx

from bar_layout import Bar, BarLayout, realizes_weakly
from errors import InternalInvariantError, PathFamilyError, PipelineError
from graph_core import PlaneEmbedding, sorted_vertices, underlying_graph

logger = logging.getLogger(__name__)

LEFT_OUTER = "s*"
RIGHT_OUTER = "t*"

Arc = Tuple[Hashable, Hashable]


@dataclass
class StDigraph:
    """Plane embedding plus an acyclic orientation with source s and sink t"""
    embedding: PlaneEmbedding
    digraph: nx.DiGraph
    s: Hashable
    t: Hashable
    numbers: Dict[Hashable, Fraction] = field(default_factory=dict)

    def arcs(self) -> List[Arc]:
        return sorted(self.digraph.edges, key=lambda a: (self.numbers.get(a[0], 0), self.numbers.get(a[1], 0), repr(a)))

    def is_arc(self, u, v) -> bool:
        return self.digraph.has_edge(u, v)


@dataclass
class FaceStructure:
    """Face names and left/right incidence of arcs and vertices"""
    names: List[str]
    arc_left: Dict[Arc, str]
    arc_right: Dict[Arc, str]
    vertex_left: Dict[Hashable, str]
    vertex_right: Dict[Hashable, str]


@dataclass
class Numberings:
    psi: Dict[Hashable, int]
    chi: Dict[str, int]


# st-numbering

def _dfs_preorder(adj: Dict[Hashable, List], s, t):
    """Iterative DFS from s taking t first; returns preorder, parent, low"""
    pre = {s: 0}
    order = [s]
    parent = {s: None}
    low = {}
    stack = [(s, iter([t] + [w for w in adj[s] if w != t]))]
    while stack:
        v, it = stack[-1]
        for w in it:
            if w not in pre:
                pre[w] = len(order)
                order.append(w)
                parent[w] = v
                stack.append((w, iter(adj[w])))
                break
        else:
            stack.pop()
            best = pre[v]
            for w in adj[v]:
                if w == parent[v]:
                    continue
                best = min(best, low[w] if parent.get(w) == v else pre[w])
            low[v] = best
    return order, parent, low


def st_numbering(emb: PlaneEmbedding, s, t) -> Dict[Hashable, int]:
    """st-numbering of a biconnected graph via DFS and the sign-list method"""
    adj = {v: emb.cw(v) for v in emb.rotation}
    if t not in adj[s]:
        adj[s] = adj[s] + [t]
        adj[t] = adj[t] + [s]
    order, parent, low = _dfs_preorder(adj, s, t)
    if len(order) != len(adj):
        raise PipelineError("st-numbering needs a connected graph")

    nxt = {s: t, t: None}
    prv = {s: None, t: s}
    sign = {s: "-"}
    for v in order[2:]:
        p = parent[v]
        if sign[order[low[v]]] == "-":
            before = prv[p]
            prv[v], nxt[v] = before, p
            prv[p] = v
            if before is not None:
                nxt[before] = v
            sign[p] = "+"
        else:
            after = nxt[p]
            prv[v], nxt[v] = p, after
            nxt[p] = v
            if after is not None:
                prv[after] = v
            sign[p] = "-"

    head = s
    while prv[head] is not None:
        head = prv[head]
    numbers = {}
    v = head
    while v is not None:
        numbers[v] = len(numbers)
        v = nxt[v]
    return numbers


def orient_by_numbers(emb: PlaneEmbedding, numbers: Dict) -> nx.DiGraph:
    d = nx.DiGraph()
    d.add_nodes_from(emb.rotation.nodes)
    for u, v in emb.rotation.edges:
        if numbers[u] < numbers[v]:
            d.add_edge(u, v)
    return d


def st_orient(emb: PlaneEmbedding, s, t) -> StDigraph:
    """Orient a biconnected plane embedding with source s and sink t"""
    g = emb.graph()
    if s == t or s not in g or t not in g:
        raise PipelineError(f"Invalid source/sink pair {s!r}, {t!r}")
    if g.number_of_nodes() > 2 and not nx.is_biconnected(g):
        raise PipelineError("st-orientation needs a biconnected embedding")
    if g.number_of_nodes() == 2 and not g.has_edge(s, t):
        raise PipelineError("st-orientation needs a biconnected embedding")
    outer = emb.outer_vertices()
    if s not in outer or t not in outer:
        raise PipelineError(f"{s!r} and {t!r} must both lie on the outer face")

    numbers = st_numbering(emb, s, t)
    d = StDigraph(emb, orient_by_numbers(emb, numbers), s, t,
                  {v: Fraction(n) for v, n in numbers.items()})
    sources = [v for v in d.digraph if d.digraph.in_degree(v) == 0]
    sinks = [v for v in d.digraph if d.digraph.out_degree(v) == 0]
    if sources != [s] or sinks != [t]:
        raise InternalInvariantError(f"st-numbering left sources {sources} and sinks {sinks}")
    logger.debug(f"st-oriented {g.number_of_nodes()} vertices from {s!r} to {t!r}")
    return d


# Faces and the dual

def _leftmost_out(d: StDigraph, v) -> Optional[Hashable]:
    """Out-neighbor w of v whose ccw neighbor at v is an in-neighbor"""
    for w in d.embedding.cw(v):
        if d.is_arc(v, w) and d.is_arc(d.embedding.ccw_next(v, w), v):
            return w
    return None


def _rightmost_out(d: StDigraph, v) -> Optional[Hashable]:
    for w in d.embedding.cw(v):
        if d.is_arc(v, w) and d.is_arc(d.embedding.cw_next(v, w), v):
            return w
    return None


def face_structure(d: StDigraph) -> FaceStructure:
    emb = d.embedding
    outer = set(emb.outer_face())
    names = [LEFT_OUTER]
    face_of = {}
    for face in emb.faces():
        if face[0] in outer:
            continue
        name = f"f{len(names) - 1}"
        names.append(name)
        for h in face:
            face_of[h] = name
    names.append(RIGHT_OUTER)

    arc_left, arc_right = {}, {}
    for u, v in d.digraph.edges:
        arc_right[(u, v)] = face_of.get((u, v), RIGHT_OUTER)
        arc_left[(u, v)] = face_of.get((v, u), LEFT_OUTER)

    vertex_left, vertex_right = {}, {}
    for v in d.digraph:
        if v in (d.s, d.t):
            vertex_left[v], vertex_right[v] = LEFT_OUTER, RIGHT_OUTER
            continue
        lw, rw = _leftmost_out(d, v), _rightmost_out(d, v)
        if lw is None or rw is None:
            raise InternalInvariantError(f"Vertex {v!r} has no separated in/out arcs")
        vertex_left[v] = arc_left[(v, lw)]
        vertex_right[v] = arc_right[(v, rw)]
    return FaceStructure(names, arc_left, arc_right, vertex_left, vertex_right)


def longest_path_layering(g: nx.DiGraph) -> Dict[Hashable, int]:
    """Optimal topological numbering: longest path from any source"""
    level = {}
    for v in nx.topological_sort(g):
        level[v] = max((level[u] + 1 for u in g.predecessors(v)), default=0)
    return level


def dual_digraph(d: StDigraph, faces: FaceStructure) -> nx.DiGraph:
    dual = nx.DiGraph()
    dual.add_nodes_from(faces.names)
    for arc in d.digraph.edges:
        dual.add_edge(faces.arc_left[arc], faces.arc_right[arc])
    return dual


def dual_with_numberings(d: StDigraph) -> Tuple[nx.DiGraph, Numberings, FaceStructure]:
    """Directed dual (left to right) and the optimal numberings psi, chi"""
    faces = face_structure(d)
    dual = dual_digraph(d, faces)
    if not nx.is_directed_acyclic_graph(dual):
        raise InternalInvariantError("Dual of an st-digraph must be acyclic")
    return dual, Numberings(longest_path_layering(d.digraph), longest_path_layering(dual)), faces


def validate_st_digraph(d: StDigraph) -> None:
    """Raise InternalInvariantError unless d is a valid st-digraph"""
    g = d.digraph
    if not nx.is_directed_acyclic_graph(g):
        raise InternalInvariantError("Digraph has a cycle")
    sources = [v for v in g if g.in_degree(v) == 0]
    sinks = [v for v in g if g.out_degree(v) == 0]
    if sources != [d.s] or sinks != [d.t]:
        raise InternalInvariantError(f"Expected single source {d.s!r} and sink {d.t!r}, "
                                     f"got {sources} and {sinks}")
    outer = d.embedding.outer_vertices()
    if d.s not in outer or d.t not in outer:
        raise InternalInvariantError("Source and sink must lie on the outer face")
    for v in g:
        if v in (d.s, d.t):
            continue
        kinds = [d.is_arc(v, w) for w in d.embedding.cw(v)]
        switches = sum(1 for i in range(len(kinds)) if kinds[i] != kinds[i - 1])
        if switches != 2:
            raise InternalInvariantError(f"In/out arcs at {v!r} are not consecutive")
    for u, v in d.embedding.rotation.edges:
        if not (g.has_edge(u, v) or g.has_edge(v, u)):
            raise InternalInvariantError(f"Edge {u!r}-{v!r} is not oriented")


def trichotomy_violations(d: StDigraph) -> List[Tuple]:
    """Vertex pairs for which not exactly one of the four separations holds"""
    dual, _, faces = dual_with_numberings(d)
    bad = []
    verts = sorted_vertices(d.digraph.nodes)
    for i, v in enumerate(verts):
        for w in verts[i + 1:]:
            holds = [
                nx.has_path(d.digraph, v, w),
                nx.has_path(d.digraph, w, v),
                nx.has_path(dual, faces.vertex_right[v], faces.vertex_left[w]),
                nx.has_path(dual, faces.vertex_right[w], faces.vertex_left[v]),
            ]
            if sum(holds) != 1:
                bad.append((v, w))
    return bad


# Bar layouts

@dataclass
class TTLayout:
    layout: BarLayout
    strips: Dict[Arc, Tuple[int, int]]
    numberings: Numberings


def _bars_from(d: StDigraph, faces: FaceStructure, psi: Dict, chi: Dict) -> Tuple[BarLayout, Dict]:
    bars = [Bar(v, psi[v], 2 * chi[faces.vertex_left[v]], 2 * chi[faces.vertex_right[v]] - 1)
            for v in sorted_vertices(d.digraph.nodes)]
    strips = {arc: (2 * chi[faces.arc_left[arc]], 2 * chi[faces.arc_right[arc]] - 1)
              for arc in d.digraph.edges}
    return BarLayout.from_bars(bars), strips


def tt_bar_layout(d: StDigraph) -> TTLayout:
    """
    Bar of v at y = psi(v) spanning [2 chi(left(v)), 2 chi(right(v)) - 1].
    The strip of arc e is [2 chi(left(e)), 2 chi(right(e)) - 1].
    """
    _, numberings, faces = dual_with_numberings(d)
    layout, strips = _bars_from(d, faces, numberings.psi, numberings.chi)
    return TTLayout(layout, strips, numberings)


def strip_containment_violations(d: StDigraph, layout: BarLayout, strips: Dict) -> List[Arc]:
    bad = []
    for (u, v), (lo, hi) in strips.items():
        if not (lo < hi and layout[u].covers(lo, hi) and layout[v].covers(lo, hi)):
            bad.append((u, v))
    return bad


def _in_out_order(d: StDigraph, v) -> Tuple[List, List]:
    """In-neighbors and out-neighbors of v, each listed left to right"""
    first = _leftmost_out(d, v)
    outs = [first]
    w = d.embedding.cw_next(v, first)
    while d.is_arc(v, w):
        outs.append(w)
        w = d.embedding.cw_next(v, w)
    ins = []
    w = d.embedding.ccw_next(v, first)
    while d.is_arc(w, v):
        ins.append(w)
        w = d.embedding.ccw_next(v, w)
    return ins, outs


def validate_path_family(d: StDigraph, paths: Sequence[Sequence]) -> None:
    """Raise PathFamilyError unless paths are directed and pairwise nonintersecting"""
    owner: Dict[Arc, int] = {}
    through: Dict[Hashable, List[Tuple[int, Hashable, Hashable]]] = {}
    for i, path in enumerate(paths):
        if len(path) < 2:
            raise PathFamilyError(f"Path {i} has no arcs", pair=(i, i))
        for a, b in zip(path, path[1:]):
            if not d.is_arc(a, b):
                raise PathFamilyError(f"Path {i} uses {a!r}->{b!r}, which is not an arc", pair=(i, i))
            if (a, b) in owner:
                j = owner[(a, b)]
                raise PathFamilyError(f"Paths {j} and {i} share arc {a!r}->{b!r}", pair=(j, i))
            owner[(a, b)] = i
        for a, v, b in zip(path, path[1:], path[2:]):
            through.setdefault(v, []).append((i, a, b))

    for v, visits in through.items():
        if len(visits) < 2:
            continue
        ins, outs = _in_out_order(d, v)
        for x in range(len(visits)):
            for y in range(x + 1, len(visits)):
                i, a, b = visits[x]
                j, c, e = visits[y]
                if i == j:
                    continue
                if (ins.index(a) < ins.index(c)) != (outs.index(b) < outs.index(e)):
                    raise PathFamilyError(f"Paths {i} and {j} cross at {v!r}", pair=(i, j))


@dataclass
class AlignedLayout:
    layout: BarLayout
    strips: Dict[Arc, Tuple[int, int]]
    path_x: List[Fraction]


def aligned_bar_layout(d: StDigraph, paths: Sequence[Sequence]) -> AlignedLayout:
    """Bar 0-visibility layout in which every path's arcs share one x"""
    validate_path_family(d, paths)
    base = tt_bar_layout(d)
    path_x = []
    for path in paths:
        arcs = list(zip(path, path[1:]))
        lo = max(base.strips[a][0] for a in arcs)
        hi = min(base.strips[a][1] for a in arcs)
        if lo >= hi:
            break
        path_x.append(Fraction(lo) + Fraction(1, 2))
    else:
        result = AlignedLayout(base.layout, base.strips, path_x)
        _verify_aligned(d, paths, result)
        return result

    logger.warning("Path strips do not overlap; numbering faces and paths jointly")
    faces = face_structure(d)
    aux = nx.DiGraph()
    aux.add_nodes_from(faces.names)
    on_path = {}
    for i, path in enumerate(paths):
        aux.add_node(("path", i))
        for arc in zip(path, path[1:]):
            on_path[arc] = i
    for arc in d.digraph.edges:
        left, right = faces.arc_left[arc], faces.arc_right[arc]
        if arc in on_path:
            node = ("path", on_path[arc])
            aux.add_edge(left, node)
            aux.add_edge(node, right)
        else:
            aux.add_edge(left, right)
    if not nx.is_directed_acyclic_graph(aux):
        raise InternalInvariantError("Joint face/path numbering graph has a cycle")
    chi = longest_path_layering(aux)
    psi = longest_path_layering(d.digraph)
    layout, strips = _bars_from(d, faces, psi, chi)
    result = AlignedLayout(layout, strips, [Fraction(2 * chi[("path", i)]) for i in range(len(paths))])
    _verify_aligned(d, paths, result)
    return result


def _verify_aligned(d: StDigraph, paths, result: AlignedLayout) -> None:
    for x, path in zip(result.path_x, paths):
        for arc in zip(path, path[1:]):
            lo, hi = result.strips[arc]
            if not lo < x < hi:
                raise InternalInvariantError(f"Path x={x} leaves the strip of {arc!r}")
    report = realizes_weakly(result.layout, underlying_graph(d.digraph), 0)
    if not report.realized:
        raise InternalInvariantError(f"Aligned layout misses edges {report.missing}")
