"""
Brute-Force Oracles and Audits

Exhaustive searches and counting checks:
- Rectangle oracle for strong bar k-visibility (independent of the sweep)
- Search for 1-flow networks whose square is a given graph
- Edge-count audits against class bounds
- Order-type search for bar layouts with a prescribed visibility graph

Depends on bar_layout and graph_core; config supplies the search limits.
"""

import itertools
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Set

import networkx as nx

from bar_layout import Bar, BarLayout, strong_visibility_graph, x_overlap
from config import limits, settings
from errors import SearchBoundError
from graph_core import sorted_edges, sorted_vertices
from utils import Utils

logger = logging.getLogger(__name__)

ALL_DAGS = "all-dags"
HAMPATH_PLANAR = "hampath-planar"
MODES = (ALL_DAGS, HAMPATH_PLANAR)


def brute_force_visibility_graph(layout: BarLayout, k: int) -> nx.Graph:
    """
    Strong bar k-visibility by testing every bar pair directly: a vertical
    segment at the midpoint of each piece of their common x-range counts the
    bars strictly between them.
    """
    bars = list(layout.bars.values())
    g = nx.Graph()
    g.add_nodes_from(layout.vertices())
    for a, b in itertools.combinations(bars, 2):
        if a.y == b.y:
            continue
        low, high = (a, b) if a.y < b.y else (b, a)
        common = x_overlap(low, high)
        if common is None:
            continue
        lo, hi = common
        between = [c for c in bars if low.y < c.y < high.y]
        cuts = {lo, hi}
        for c in between:
            cuts.update(x for x in (c.x_left, c.x_right) if lo < x < hi)
        cuts = sorted(cuts)
        for left, right in zip(cuts, cuts[1:]):
            x = (left + right) / 2
            if sum(1 for c in between if c.x_left <= x <= c.x_right) <= k:
                g.add_edge(low.id, high.id)
                break
    return g


# 1-flow preimages

@dataclass
class SearchReport:
    target: nx.Graph
    mode: str
    planar: bool = True
    space_size: int = 0
    examined: int = 0
    witness: Optional[nx.DiGraph] = None
    witness_count: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.witness is not None

    def summary(self) -> str:
        verdict = "witness found" if self.found else "no witness"
        return (f"{self.mode} search on {self.target.number_of_nodes()} vertices"
                f"{'' if self.planar else ' (planarity filter off)'}: {verdict}, "
                f"{self.examined} of {self.space_size} candidates in "
                f"{Utils().format_duration(self.elapsed)}")

    def to_dict(self) -> Dict:
        return {
            "mode": self.mode,
            "planar": self.planar,
            "vertices": sorted_vertices(self.target.nodes),
            "edges": [list(e) for e in sorted_edges(self.target.edges)],
            "space_size": self.space_size,
            "examined": self.examined,
            "witness_count": self.witness_count,
            "witness": None if self.witness is None else [list(a) for a in sorted(self.witness.edges, key=repr)],
            "elapsed": self.elapsed,
        }


class _PreimageSearch:
    """Depth-first enumeration with subtree counting for pruned branches"""

    def __init__(self, target: nx.Graph, report: SearchReport):
        self.target = target
        self.report = report
        self.verts = sorted_vertices(target.nodes)
        self.edges: Set[frozenset] = {frozenset(e) for e in target.edges}
        self.succ: Dict[Hashable, Set] = {v: set() for v in self.verts}
        self.pred: Dict[Hashable, Set] = {v: set() for v in self.verts}
        self.next_log = settings.ORACLE_PROGRESS_EVERY

    def count(self, amount: int) -> None:
        self.report.examined += amount
        if self.report.examined >= self.next_log:
            logger.info(f"{self.report.mode}: examined {self.report.examined} of {self.report.space_size}")
            while self.next_log <= self.report.examined:
                self.next_log += settings.ORACLE_PROGRESS_EVERY

    def flow_ok(self, v) -> bool:
        return min(len(self.succ[v]), len(self.pred[v])) <= 1

    def add(self, u, v) -> None:
        self.succ[u].add(v)
        self.pred[v].add(u)

    def remove(self, u, v) -> None:
        self.succ[u].discard(v)
        self.pred[v].discard(u)

    def reaches(self, src, dst) -> bool:
        stack, seen = [src], {src}
        while stack:
            x = stack.pop()
            if x == dst:
                return True
            for y in self.succ[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return False

    def square_edges(self) -> Set[frozenset]:
        result = set()
        for u in self.verts:
            for v in self.succ[u]:
                result.add(frozenset((u, v)))
                for w in self.succ[v]:
                    if w != u:
                        result.add(frozenset((u, w)))
        return result

    def record(self) -> None:
        self.report.witness_count += 1
        if self.report.witness is None:
            d = nx.DiGraph()
            d.add_nodes_from(self.verts)
            d.add_edges_from((u, v) for u in self.verts for v in self.succ[u])
            self.report.witness = d
            logger.info(f"Witness found: {sorted(d.edges, key=repr)}")


def _search_all_dags(s: _PreimageSearch) -> None:
    pairs = list(itertools.combinations(s.verts, 2))

    def visit(i: int) -> None:
        if i == len(pairs):
            s.count(1)
            if s.square_edges() == s.edges:
                s.record()
            return
        rest = 3 ** (len(pairs) - i - 1)
        u, v = pairs[i]
        visit(i + 1)
        for a, b in ((u, v), (v, u)):
            if frozenset((a, b)) not in s.edges or s.reaches(b, a):
                s.count(rest)
                continue
            s.add(a, b)
            if s.flow_ok(a) and s.flow_ok(b):
                visit(i + 1)
            else:
                s.count(rest)
            s.remove(a, b)

    visit(0)


def _search_hampath(s: _PreimageSearch, planar: bool) -> None:
    order = s.verts
    for a, b in zip(order, order[1:]):
        s.add(a, b)
    optional = [(order[i], order[j]) for i in range(len(order)) for j in range(i + 2, len(order))]
    everything = {frozenset(p) for p in itertools.combinations(order, 2)}

    def visit(i: int) -> None:
        if i == len(optional):
            s.count(1)
            if s.square_edges() == everything:
                if planar:
                    g = nx.Graph()
                    g.add_nodes_from(order)
                    g.add_edges_from((u, v) for u in order for v in s.succ[u])
                    if not nx.check_planarity(g)[0]:
                        return
                s.record()
            return
        rest = 2 ** (len(optional) - i - 1)
        visit(i + 1)
        u, v = optional[i]
        s.add(u, v)
        if s.flow_ok(u) and s.flow_ok(v):
            visit(i + 1)
        else:
            s.count(rest)
        s.remove(u, v)

    visit(0)


def search_1flow_preimage(target: nx.Graph, mode: str, planar: bool = True) -> SearchReport:
    """
    Exhaustively look for a 1-flow DAG whose square is `target`.

    all-dags tries every orientation or omission of every vertex pair.
    hampath-planar needs a complete target: its vertices then form a total
    order whose consecutive arcs are forced, and each remaining forward arc
    is present or absent. With `planar` the witness must also be planar.
    """
    if mode not in MODES:
        raise SearchBoundError(f"Unknown search mode {mode!r}")
    n = target.number_of_nodes()
    report = SearchReport(target, mode, planar=planar)
    search = _PreimageSearch(target, report)
    start = time.perf_counter()

    if mode == ALL_DAGS:
        if n > limits.ALL_DAGS_MAX_VERTICES:
            raise SearchBoundError(f"all-dags search handles at most "
                                   f"{limits.ALL_DAGS_MAX_VERTICES} vertices, got {n}")
        report.space_size = 3 ** (n * (n - 1) // 2)
        _search_all_dags(search)
    else:
        if n > limits.HAMPATH_MAX_VERTICES:
            raise SearchBoundError(f"hampath-planar search handles at most "
                                   f"{limits.HAMPATH_MAX_VERTICES} vertices, got {n}")
        if target.number_of_edges() != n * (n - 1) // 2:
            raise SearchBoundError("hampath-planar search needs a complete target graph")
        optional = max(0, n * (n - 1) // 2 - (n - 1))
        report.space_size = 2 ** optional
        _search_hampath(search, planar)

    report.elapsed = time.perf_counter() - start
    Utils().log_performance(f"{mode} search", report.elapsed)
    logger.info(report.summary())
    return report


# Edge-count audits

@dataclass
class AuditReport:
    graph_class: str
    n: int
    m: int
    bound: Optional[Fraction]
    verdict: str
    informational: bool = False

    def to_dict(self) -> Dict:
        return {
            "class": self.graph_class,
            "n": self.n,
            "m": self.m,
            "bound": None if self.bound is None else str(self.bound),
            "verdict": self.verdict,
            "informational": self.informational,
        }


def bound_audit(g: nx.Graph, graph_class: str) -> AuditReport:
    """Compare the edge count with the class bound; exceeding it proves non-membership"""
    n, m = g.number_of_nodes(), g.number_of_edges()
    if graph_class not in ("web1", "oneplanar", "quasiplanar"):
        raise SearchBoundError(f"Unknown graph class {graph_class!r}")
    informational = graph_class == "quasiplanar"
    if n < limits.BOUND_MIN_VERTICES:
        return AuditReport(graph_class, n, m, None, "not-applicable", informational)
    bound = Fraction(limits.class_bound(graph_class, n))
    verdict = "consistent" if m <= bound else "bound-exceeded"
    logger.debug(f"Audit {graph_class}: m={m}, bound={bound}, {verdict}")
    return AuditReport(graph_class, n, m, bound, verdict, informational)


# Layout search

@dataclass
class LayoutSearchReport:
    target: nx.Graph
    k: int
    layout: Optional[BarLayout] = None
    examined: int = 0
    elapsed: float = 0.0

    @property
    def found(self) -> bool:
        return self.layout is not None


def search_layout_for(target: nx.Graph, k: int = 1, grid: Optional[int] = None) -> LayoutSearchReport:
    """
    Bar layout whose strong k-visibility graph is exactly `target`.

    Bars get distinct heights in every vertex order and integer
    x-intervals in [0, grid]. Bars are placed bottom-up; a partial layout
    is abandoned once its visibility graph differs from the target on the
    placed vertices, since higher bars never change visibility below them.
    """
    verts = sorted_vertices(target.nodes)
    n = len(verts)
    if n > limits.LAYOUT_SEARCH_MAX_VERTICES:
        raise SearchBoundError(f"Layout search handles at most "
                               f"{limits.LAYOUT_SEARCH_MAX_VERTICES} vertices, got {n}")
    grid = grid or limits.LAYOUT_SEARCH_GRID
    intervals = [(a, b) for a in range(grid) for b in range(a + 1, grid + 1)]
    wanted = {frozenset(e) for e in target.edges}
    report = LayoutSearchReport(target, k)
    start = time.perf_counter()

    def place(order, bars: List[Bar]) -> Optional[BarLayout]:
        if len(bars) == n:
            return BarLayout.from_bars(bars)
        v = order[len(bars)]
        placed = {b.id for b in bars} | {v}
        expected = {e for e in wanted if e <= placed}
        for a, b in intervals:
            report.examined += 1
            trial = bars + [Bar(v, len(bars), a, b)]
            layout = BarLayout({bar.id: bar for bar in trial})
            seen = {frozenset(e) for e in strong_visibility_graph(layout, k).edges}
            if seen == expected:
                found = place(order, trial)
                if found is not None:
                    return found
        return None

    for order in itertools.permutations(verts):
        report.layout = place(order, [])
        if report.layout is not None:
            break

    report.elapsed = time.perf_counter() - start
    logger.info(f"Layout search for {n} vertices: "
                f"{'found' if report.found else 'none'} after {report.examined} placements")
    return report
