"""
SVG Rendering of Layouts and Drawings

Static figures through drawsvg:
- Bar layouts as labeled horizontal strokes
- Polyline drawings with blue and red edges
- Coordinate scale recorded in the SVG metadata

Output is deterministic for identical input.
"""

import logging
from typing import Hashable, List, Optional, Tuple

import drawsvg as draw
import numpy as np

from bar_layout import BarLayout
from config import settings
from errors import SerializationError
from graph_core import sorted_vertices
from quasi_planar import PolylineDrawing
from utils import Utils

logger = logging.getLogger(__name__)

BAR_COLOR = "#222222"
LABEL_COLOR = "#444444"
EDGE_COLORS = {"blue": "#1f5fbf", "red": "#c8321e"}


class SvgRenderer:
    """Renders bar layouts and polyline drawings to SVG text"""

    def __init__(self, scale: Optional[float] = None, margin: Optional[float] = None):
        self.scale = float(scale if scale is not None else settings.SVG_SCALE)
        self.margin = float(margin if margin is not None else settings.SVG_MARGIN)
        self.logger = logging.getLogger(__name__)

    def _canvas(self, xs: List, ys: List) -> Tuple[draw.Drawing, float, float]:
        if xs:
            pts = np.array([[float(x), float(y)] for x, y in zip(xs, ys)])
            x_min, y_min = pts.min(axis=0)
            x_max, y_max = pts.max(axis=0)
        else:
            x_min = x_max = y_min = y_max = 0.0
        width = (x_max - x_min) * self.scale + 2 * self.margin
        height = (y_max - y_min) * self.scale + 2 * self.margin
        d = draw.Drawing(width, height)
        d.append(draw.Raw(
            f'<metadata>{{"scale": {self.scale:g}, "margin": {self.margin:g}, '
            f'"origin": [{x_min:g}, {y_min:g}]}}</metadata>'))
        d.append(draw.Rectangle(0, 0, width, height, fill="white"))
        self._origin = (x_min, y_max)
        return d, width, height

    def _xy(self, x, y) -> Tuple[float, float]:
        x0, y_top = self._origin
        return (self.margin + (float(x) - x0) * self.scale,
                self.margin + (y_top - float(y)) * self.scale)

    def _label(self, d: draw.Drawing, v: Hashable, x: float, y: float) -> None:
        d.append(draw.Text(str(v), 12, x, y - 4, fill=LABEL_COLOR,
                           font_family="monospace"))

    def render_layout(self, layout: BarLayout) -> str:
        bars = [layout[v] for v in layout.vertices()]
        xs = [c for b in bars for c in (b.x_left, b.x_right)]
        ys = [b.y for b in bars for _ in (0, 1)]
        d, _, _ = self._canvas(xs, ys)
        for bar in bars:
            x1, y = self._xy(bar.x_left, bar.y)
            x2, _ = self._xy(bar.x_right, bar.y)
            d.append(draw.Line(x1, y, x2, y, stroke=BAR_COLOR, stroke_width=3,
                               stroke_linecap="round"))
            self._label(d, bar.id, x1, y)
        self.logger.debug(f"Rendered {len(bars)} bars")
        return d.as_svg()

    def render_drawing(self, drawing: PolylineDrawing) -> str:
        xs, ys = [], []
        for p in drawing.points.values():
            xs.append(p[0])
            ys.append(p[1])
        for line in drawing.polylines.values():
            for p in line:
                xs.append(p[0])
                ys.append(p[1])
        d, _, _ = self._canvas(xs, ys)
        for key in sorted(drawing.polylines, key=repr):
            coords = []
            for p in drawing.polylines[key]:
                coords.extend(self._xy(*p))
            color = EDGE_COLORS.get(drawing.colors.get(key), BAR_COLOR)
            d.append(draw.Lines(*coords, close=False, fill="none", stroke=color,
                                stroke_width=1.5))
        for v in sorted_vertices(drawing.points):
            x, y = self._xy(*drawing.points[v])
            d.append(draw.Circle(x, y, 3, fill=BAR_COLOR))
            self._label(d, v, x, y)
        self.logger.debug(f"Rendered {len(drawing.polylines)} polylines")
        return d.as_svg()


def render_svg(obj, scale: Optional[float] = None, margin: Optional[float] = None) -> str:
    """SVG text for a BarLayout or a PolylineDrawing"""
    renderer = SvgRenderer(scale, margin)
    if isinstance(obj, BarLayout):
        return renderer.render_layout(obj)
    if isinstance(obj, PolylineDrawing):
        return renderer.render_drawing(obj)
    raise SerializationError(f"Cannot render {type(obj).__name__}")


def save_svg(path: str, obj, scale: Optional[float] = None) -> bool:
    svg = render_svg(obj, scale)
    logger.info(f"Writing SVG to {path}")
    return Utils().save_text(path, svg)
