"""
Bar Layouts and Bar k-Visibility

Bar layout model and visibility computations:
- Bars as exact rational horizontal segments
- Layout validation (pairwise disjoint bars)
- Left-to-right sweep over elementary x-intervals
- Strong bar k-visibility graphs and visibility windows
- Weak realization checks
- Random layout generation

Independent module - uses graph_core for vertex ordering only.
"""

import bisect
import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Hashable, Iterable, Iterator, List, NamedTuple, Optional, Tuple

import networkx as nx

from errors import LayoutError
from graph_core import sorted_edges, sorted_vertices, vertex_key

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Bar:
    """Horizontal segment [x_left, x_right] at height y"""
    id: Hashable
    y: Fraction
    x_left: Fraction
    x_right: Fraction

    def __post_init__(self):
        for name in ("y", "x_left", "x_right"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if not self.x_left < self.x_right:
            raise LayoutError(f"Bar {self.id!r} has non-positive length")

    @property
    def length(self) -> Fraction:
        return self.x_right - self.x_left

    def covers(self, lo: Fraction, hi: Fraction) -> bool:
        """True if the open interval (lo, hi) lies inside the bar"""
        return self.x_left <= lo and hi <= self.x_right


@dataclass
class BarLayout:
    bars: Dict[Hashable, Bar] = field(default_factory=dict)

    @classmethod
    def from_bars(cls, bars: Iterable[Bar]) -> "BarLayout":
        layout = cls()
        for bar in bars:
            if bar.id in layout.bars:
                raise LayoutError(f"Duplicate bar id {bar.id!r}")
            layout.bars[bar.id] = bar
        layout.validate()
        return layout

    @classmethod
    def from_tuples(cls, rows: Iterable[Tuple]) -> "BarLayout":
        """Rows of (id, y, x_left, x_right)"""
        return cls.from_bars(Bar(*row) for row in rows)

    def __len__(self) -> int:
        return len(self.bars)

    def __getitem__(self, v) -> Bar:
        return self.bars[v]

    def vertices(self) -> List:
        return sorted_vertices(self.bars)

    def validate(self) -> None:
        by_y: Dict[Fraction, List[Bar]] = {}
        for bar in self.bars.values():
            by_y.setdefault(bar.y, []).append(bar)
        for y, row in by_y.items():
            row.sort(key=lambda b: b.x_left)
            for left, right in zip(row, row[1:]):
                if right.x_left <= left.x_right:
                    raise LayoutError(
                        f"Bars {left.id!r} and {right.id!r} intersect at y={y}")

    def without(self, ids: Iterable) -> "BarLayout":
        doomed = set(ids)
        return BarLayout({v: b for v, b in self.bars.items() if v not in doomed})

    def endpoints(self) -> List[Fraction]:
        xs = set()
        for bar in self.bars.values():
            xs.add(bar.x_left)
            xs.add(bar.x_right)
        return sorted(xs)

    def bounds(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        """(x_min, x_max, y_min, y_max); zeros for an empty layout"""
        if not self.bars:
            return (Fraction(0),) * 4
        bars = self.bars.values()
        return (min(b.x_left for b in bars), max(b.x_right for b in bars),
                min(b.y for b in bars), max(b.y for b in bars))


def x_overlap(a: Bar, b: Bar) -> Optional[Tuple[Fraction, Fraction]]:
    lo, hi = max(a.x_left, b.x_left), min(a.x_right, b.x_right)
    return (lo, hi) if lo < hi else None


def elementary_intervals(layout: BarLayout) -> List[Tuple[Fraction, Fraction]]:
    xs = layout.endpoints()
    return list(zip(xs, xs[1:]))


def sweep(layout: BarLayout) -> Iterator[Tuple[Fraction, Fraction, List[Bar]]]:
    """
    Yield (lo, hi, active) for every open elementary interval (lo, hi),
    with the bars spanning it sorted bottom to top.
    """
    xs = layout.endpoints()
    starts: Dict[Fraction, List[Bar]] = {}
    ends: Dict[Fraction, List[Bar]] = {}
    for bar in layout.bars.values():
        starts.setdefault(bar.x_left, []).append(bar)
        ends.setdefault(bar.x_right, []).append(bar)

    keys: List[Tuple] = []
    active: List[Bar] = []
    for lo, hi in zip(xs, xs[1:] + [None]):
        for bar in ends.get(lo, ()):
            i = bisect.bisect_left(keys, (bar.y, vertex_key(bar.id)))
            del keys[i]
            del active[i]
        for bar in starts.get(lo, ()):
            key = (bar.y, vertex_key(bar.id))
            i = bisect.bisect_left(keys, key)
            keys.insert(i, key)
            active.insert(i, bar)
        if hi is not None and active:
            yield lo, hi, list(active)


class Window(NamedTuple):
    """Open x-interval over which `lower` and `upper` see each other"""
    lo: Fraction
    hi: Fraction
    lower: Hashable
    upper: Hashable
    between: Tuple

    @property
    def edge(self) -> frozenset:
        return frozenset((self.lower, self.upper))


def visibility_windows(layout: BarLayout, k: int) -> List[Window]:
    """Every (elementary interval, bar pair) witnessing k-visibility"""
    if k < 0:
        raise LayoutError(f"k must be non-negative, got {k}")
    windows = []
    for lo, hi, active in sweep(layout):
        for i, low in enumerate(active):
            for j in range(i + 1, min(len(active), i + k + 2)):
                between = tuple(b.id for b in active[i + 1:j])
                windows.append(Window(lo, hi, low.id, active[j].id, between))
    return windows


def visibility_intervals(layout: BarLayout, k: int) -> Dict[frozenset, List[Tuple[Fraction, Fraction, Tuple]]]:
    """
    For every k-visible pair, the maximal open x-intervals of visibility
    with the ids of the bars in between. Adjacent elementary intervals with
    the same blocking bars are merged.
    """
    merged: Dict[frozenset, List[Tuple[Fraction, Fraction, Tuple]]] = {}
    for w in visibility_windows(layout, k):
        runs = merged.setdefault(w.edge, [])
        if runs and runs[-1][1] == w.lo and runs[-1][2] == w.between:
            runs[-1] = (runs[-1][0], w.hi, w.between)
        else:
            runs.append((w.lo, w.hi, w.between))
    return merged


def strong_visibility_graph(layout: BarLayout, k: int) -> nx.Graph:
    """Strong bar k-visibility graph of a valid layout"""
    layout.validate()
    g = nx.Graph()
    g.add_nodes_from(layout.vertices())
    for w in visibility_windows(layout, k):
        g.add_edge(w.lower, w.upper)
    logger.debug(f"Strong {k}-visibility: {len(layout)} bars, {g.number_of_edges()} edges")
    return g


@dataclass
class RealizationReport:
    realized: bool
    missing: List[Tuple] = field(default_factory=list)


def realizes_weakly(layout: BarLayout, g: nx.Graph, k: int) -> RealizationReport:
    """Check that every edge of g is k-visible in the layout"""
    if set(layout.bars) != set(g.nodes):
        raise LayoutError("Layout and graph have different vertex sets")
    strong = strong_visibility_graph(layout, k)
    missing = sorted_edges(e for e in g.edges if not strong.has_edge(*e))
    return RealizationReport(not missing, missing)


def random_layout(rng: random.Random, n: int, grid: int = 8,
                  max_tries: int = 1000) -> BarLayout:
    """Random valid layout with small integer coordinates"""
    bars: List[Bar] = []
    for v in range(n):
        for _ in range(max_tries):
            y = rng.randrange(grid)
            x1, x2 = sorted(rng.sample(range(grid + 1), 2))
            clash = any(b.y == y and not (x2 < b.x_left or b.x_right < x1) for b in bars)
            if not clash:
                bars.append(Bar(v, y, x1, x2))
                break
        else:
            raise LayoutError(f"Could not place {n} bars on a {grid}x{grid} grid")
    return BarLayout.from_bars(bars)
