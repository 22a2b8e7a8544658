"""
JSON Serialization for Bar Visibility Objects

Every document is a manifest {format, kind, payload}:
- Graphs, digraphs and flow networks
- Plane and 1-planar embeddings
- Bar layouts (plain and path-aligned)
- Polyline drawings and edge classifications
- Oracle search and audit reports

Rationals are written as "p/q" strings; tuple vertex ids become JSON lists.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List

import networkx as nx

from bar_layout import Bar, BarLayout
from errors import SerializationError
from flow_network import FlowNetwork
from graph_core import PlaneEmbedding, make_digraph, make_graph, sorted_edges, sorted_vertices, vertex_key
from one_planar import OnePlanarEmbedding
from oracle import AuditReport, SearchReport
from quasi_planar import DrawingParams, EdgeClassification, PolylineDrawing, VisibilityEdge
from st_planar import AlignedLayout
from utils import Utils

logger = logging.getLogger(__name__)

FORMAT = "barvis/1"

KINDS = (
    "graph", "digraph", "embedding", "oneplanar-embedding", "layout",
    "aligned-layout", "drawing", "flow-network", "search-report",
    "audit-report", "classification",
)


# Scalars

def encode_vertex(v) -> Any:
    if isinstance(v, tuple):
        return [encode_vertex(x) for x in v]
    return v


def decode_vertex(v) -> Any:
    if isinstance(v, list):
        return tuple(decode_vertex(x) for x in v)
    return v


def encode_rational(q) -> str:
    return str(Fraction(q))


def decode_rational(s) -> Fraction:
    try:
        return Fraction(s)
    except (TypeError, ValueError) as e:
        raise SerializationError(f"Bad rational {s!r}") from e


def _point(p) -> List[str]:
    return [encode_rational(p[0]), encode_rational(p[1])]


def _unpoint(p) -> tuple:
    return (decode_rational(p[0]), decode_rational(p[1]))


def _pair(e) -> List:
    return [encode_vertex(e[0]), encode_vertex(e[1])]


def _unpair(e) -> tuple:
    return (decode_vertex(e[0]), decode_vertex(e[1]))


def _arcs(arcs) -> List[List]:
    return [_pair(a) for a in sorted(arcs, key=lambda a: (vertex_key(a[0]), vertex_key(a[1])))]


# Payload encoders

def _graph(g: nx.Graph) -> Dict:
    vertices = [encode_vertex(v) for v in sorted_vertices(g.nodes)]
    if g.is_directed():
        return {"vertices": vertices, "edges": _arcs(g.edges), "directed": True}
    return {"vertices": vertices, "edges": [_pair(e) for e in sorted_edges(g.edges)], "directed": False}


def _embedding(e: PlaneEmbedding) -> Dict:
    rot = e.rotation
    dummy = [(u, w) for u, w in rot.edges if rot[u][w].get("dummy")]
    return {
        "rotations": [[encode_vertex(v), [encode_vertex(w) for w in e.cw(v)]] for v in e.vertices()],
        "outer_face": None if e.outer is None else _pair(e.outer),
        "dummy_edges": [_pair(x) for x in sorted_edges(dummy)],
    }


def _oneplanar(e: OnePlanarEmbedding) -> Dict:
    payload = _embedding(e.plane)
    payload["crossing_vertices"] = [
        [encode_vertex(x), [encode_vertex(w) for w in quad]]
        for x, quad in sorted(e.crossings.items(), key=lambda item: vertex_key(item[0]))
    ]
    return payload


def _layout(layout: BarLayout) -> Dict:
    return {"bars": [
        {"id": encode_vertex(v), "y": encode_rational(b.y),
         "x1": encode_rational(b.x_left), "x2": encode_rational(b.x_right)}
        for v in layout.vertices() for b in [layout[v]]
    ]}


def _strips(strips: Dict) -> List:
    return [[_pair(a), [encode_rational(lo), encode_rational(hi)]]
            for a, (lo, hi) in sorted(strips.items(), key=lambda item: (vertex_key(item[0][0]), vertex_key(item[0][1])))]


def _aligned(a: AlignedLayout) -> Dict:
    payload = _layout(a.layout)
    payload["strips"] = _strips(a.strips)
    payload["path_x"] = [encode_rational(x) for x in a.path_x]
    return payload


def _edge_items(d: Dict) -> List:
    return sorted(d.items(), key=lambda item: (vertex_key(item[0][0]), vertex_key(item[0][1])))


def _params(p: DrawingParams) -> Dict:
    return {
        "gamma": encode_rational(p.gamma),
        "delta": encode_rational(p.delta),
        "shift_counts": [[_pair(e), k] for e, k in _edge_items(p.shift_counts)],
        "shifts": [[_pair(e), encode_rational(s)] for e, s in _edge_items(p.shifts)],
    }


def _drawing(d: PolylineDrawing) -> Dict:
    return {
        "points": [[encode_vertex(v), _point(d.points[v])] for v in sorted_vertices(d.points)],
        "polylines": [[_pair(e), [_point(p) for p in line]] for e, line in _edge_items(d.polylines)],
        "colors": [[_pair(e), c] for e, c in _edge_items(d.colors)],
        "bypass": [[_pair(e), encode_vertex(v)] for e, v in _edge_items(d.bypass)],
        "params": None if d.params is None else _params(d.params),
    }


def _visibility_edge(info: VisibilityEdge) -> Dict:
    return {
        "lower": encode_vertex(info.lower), "upper": encode_vertex(info.upper),
        "lo": encode_rational(info.lo), "hi": encode_rational(info.hi),
        "bypass": None if info.bypass is None else encode_vertex(info.bypass),
    }


def _classification(c: EdgeClassification) -> Dict:
    return {
        "blue": [_visibility_edge(info) for _, info in _edge_items(c.blue)],
        "red": [_visibility_edge(info) for _, info in _edge_items(c.red)],
    }


def _flow_network(f: FlowNetwork) -> Dict:
    payload = _graph(f.digraph)
    payload["pos"] = [[encode_vertex(v), _point(f.pos[v])] for v in sorted_vertices(f.pos)]
    payload["k"] = f.k
    return payload


def _search_report(r: SearchReport) -> Dict:
    payload = r.to_dict()
    payload["vertices"] = [encode_vertex(v) for v in payload["vertices"]]
    payload["edges"] = [_pair(e) for e in payload["edges"]]
    payload["witness"] = None if r.witness is None else _arcs(r.witness.edges)
    return payload


def _kind_of(obj) -> str:
    if isinstance(obj, nx.DiGraph):
        return "digraph"
    if isinstance(obj, nx.Graph):
        return "graph"
    kinds = [
        (OnePlanarEmbedding, "oneplanar-embedding"),
        (PlaneEmbedding, "embedding"),
        (BarLayout, "layout"),
        (AlignedLayout, "aligned-layout"),
        (PolylineDrawing, "drawing"),
        (FlowNetwork, "flow-network"),
        (SearchReport, "search-report"),
        (AuditReport, "audit-report"),
        (EdgeClassification, "classification"),
    ]
    for cls, kind in kinds:
        if isinstance(obj, cls):
            return kind
    raise SerializationError(f"Cannot serialize {type(obj).__name__}")


_ENCODERS = {
    "graph": _graph,
    "digraph": _graph,
    "embedding": _embedding,
    "oneplanar-embedding": _oneplanar,
    "layout": _layout,
    "aligned-layout": _aligned,
    "drawing": _drawing,
    "flow-network": _flow_network,
    "search-report": _search_report,
    "audit-report": lambda r: r.to_dict(),
    "classification": _classification,
}


def emit(obj) -> Dict:
    """Wrap a domain object in a manifest"""
    kind = _kind_of(obj)
    return {"format": FORMAT, "kind": kind, "payload": _ENCODERS[kind](obj)}


# Payload decoders

def _ungraph(p: Dict) -> nx.Graph:
    vertices = [decode_vertex(v) for v in p["vertices"]]
    edges = [_unpair(e) for e in p["edges"]]
    if p.get("directed"):
        return make_digraph(vertices, edges)
    return make_graph(vertices, edges)


def _unembedding(p: Dict) -> PlaneEmbedding:
    data = {decode_vertex(v): [decode_vertex(w) for w in cw] for v, cw in p["rotations"]}
    outer = None if p.get("outer_face") is None else _unpair(p["outer_face"])
    emb = PlaneEmbedding.from_rotation(data, outer)
    for e in p.get("dummy_edges", []):
        u, w = _unpair(e)
        emb.rotation[u][w]["dummy"] = True
        emb.rotation[w][u]["dummy"] = True
    return emb


def _unoneplanar(p: Dict) -> OnePlanarEmbedding:
    crossings = {decode_vertex(x): tuple(decode_vertex(w) for w in quad)
                 for x, quad in p.get("crossing_vertices", [])}
    return OnePlanarEmbedding(_unembedding(p), crossings)


def _unlayout(p: Dict) -> BarLayout:
    return BarLayout.from_bars(
        Bar(decode_vertex(b["id"]), decode_rational(b["y"]),
            decode_rational(b["x1"]), decode_rational(b["x2"]))
        for b in p["bars"])


def _unaligned(p: Dict) -> AlignedLayout:
    strips = {_unpair(a): (decode_rational(lo), decode_rational(hi)) for a, (lo, hi) in p["strips"]}
    return AlignedLayout(_unlayout(p), strips, [decode_rational(x) for x in p["path_x"]])


def _unparams(p: Dict) -> DrawingParams:
    return DrawingParams(
        decode_rational(p["gamma"]), decode_rational(p["delta"]),
        {_unpair(e): int(k) for e, k in p["shift_counts"]},
        {_unpair(e): decode_rational(s) for e, s in p["shifts"]},
    )


def _undrawing(p: Dict) -> PolylineDrawing:
    return PolylineDrawing(
        points={decode_vertex(v): _unpoint(pt) for v, pt in p["points"]},
        polylines={_unpair(e): [_unpoint(pt) for pt in line] for e, line in p["polylines"]},
        colors={_unpair(e): c for e, c in p["colors"]},
        params=None if p.get("params") is None else _unparams(p["params"]),
        bypass={_unpair(e): decode_vertex(v) for e, v in p.get("bypass", [])},
    )


def _unvisibility_edge(p: Dict) -> VisibilityEdge:
    return VisibilityEdge(
        decode_vertex(p["lower"]), decode_vertex(p["upper"]),
        decode_rational(p["lo"]), decode_rational(p["hi"]),
        None if p["bypass"] is None else decode_vertex(p["bypass"]),
    )


def _unclassification(p: Dict) -> EdgeClassification:
    result = EdgeClassification()
    for info in map(_unvisibility_edge, p["blue"]):
        result.blue[info.key] = info
    for info in map(_unvisibility_edge, p["red"]):
        result.red[info.key] = info
    return result


def _unflow_network(p: Dict) -> FlowNetwork:
    return FlowNetwork(_ungraph(dict(p, directed=True)),
                       {decode_vertex(v): _unpoint(pt) for v, pt in p["pos"]},
                       int(p.get("k", 1)))


def _unsearch_report(p: Dict) -> SearchReport:
    target = make_graph([decode_vertex(v) for v in p["vertices"]], [_unpair(e) for e in p["edges"]])
    witness = None
    if p.get("witness") is not None:
        witness = make_digraph(target.nodes, [_unpair(a) for a in p["witness"]])
    return SearchReport(target, p["mode"], planar=bool(p["planar"]),
                        space_size=int(p["space_size"]), examined=int(p["examined"]),
                        witness=witness, witness_count=int(p["witness_count"]),
                        elapsed=float(p["elapsed"]))


def _unaudit_report(p: Dict) -> AuditReport:
    bound = None if p["bound"] is None else decode_rational(p["bound"])
    return AuditReport(p["class"], int(p["n"]), int(p["m"]), bound, p["verdict"],
                       bool(p.get("informational", False)))


_DECODERS = {
    "graph": _ungraph,
    "digraph": lambda p: _ungraph(dict(p, directed=True)),
    "embedding": _unembedding,
    "oneplanar-embedding": _unoneplanar,
    "layout": _unlayout,
    "aligned-layout": _unaligned,
    "drawing": _undrawing,
    "flow-network": _unflow_network,
    "search-report": _unsearch_report,
    "audit-report": _unaudit_report,
    "classification": _unclassification,
}


def parse(doc: Dict, expect: str = None):
    """Domain object from a manifest; `expect` restricts the accepted kind"""
    if not isinstance(doc, dict) or doc.get("format") != FORMAT:
        raise SerializationError(f"Not a {FORMAT} manifest")
    kind = doc.get("kind")
    if kind not in _DECODERS:
        raise SerializationError(f"Unknown kind {kind!r}")
    if expect is not None and kind != expect:
        raise SerializationError(f"Expected a {expect} document, got {kind}")
    try:
        return _DECODERS[kind](doc["payload"])
    except (KeyError, TypeError, IndexError) as e:
        raise SerializationError(f"Malformed {kind} payload: {e}") from e


def save(path: str, obj) -> bool:
    doc = emit(obj)
    logger.debug(f"Writing {doc['kind']} to {path}")
    return Utils().save_json(path, doc)


def load(path: str, expect: str = None):
    doc = Utils().load_json(path)
    if doc is None:
        raise SerializationError(f"Cannot read {path}")
    return parse(doc, expect)
