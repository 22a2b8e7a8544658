"""
Exact Plane Geometry

Small exact-rational helpers for segment work:
- Orientation tests
- Segment intersection with collinear overlap detection

Independent module - pure functions on Fraction points.
"""

from fractions import Fraction
from typing import Optional, Tuple

from errors import DegenerateDrawingError

Point = Tuple[Fraction, Fraction]


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


def orientation(p: Point, q: Point, r: Point) -> int:
    """+1 for a left turn p->q->r, -1 for a right turn, 0 if collinear"""
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    return (cross > 0) - (cross < 0)


def _between(p: Point, q: Point, r: Point) -> bool:
    """r lies on segment pq, assuming collinearity"""
    return min(p[0], q[0]) <= r[0] <= max(p[0], q[0]) and min(p[1], q[1]) <= r[1] <= max(p[1], q[1])


def segment_intersection(p1: Point, p2: Point, q1: Point, q2: Point) -> Optional[Point]:
    """
    Common point of segments p1p2 and q1q2, or None.
    Raises DegenerateDrawingError when they overlap in more than one point.
    """
    o1, o2 = orientation(p1, p2, q1), orientation(p1, p2, q2)
    o3, o4 = orientation(q1, q2, p1), orientation(q1, q2, p2)

    if o1 == o2 == o3 == o4 == 0:
        shared = [r for r in (p1, p2) if _between(q1, q2, r)] + \
                 [r for r in (q1, q2) if _between(p1, p2, r)]
        distinct = set(shared)
        if not distinct:
            return None
        if len(distinct) == 1:
            return distinct.pop()
        raise DegenerateDrawingError(f"Collinear overlap between {p1}-{p2} and {q1}-{q2}")

    if o1 * o2 > 0 or o3 * o4 > 0:
        return None

    dx1, dy1 = p2[0] - p1[0], p2[1] - p1[1]
    dx2, dy2 = q2[0] - q1[0], q2[1] - q1[1]
    denom = dx1 * dy2 - dy1 * dx2
    t = ((q1[0] - p1[0]) * dy2 - (q1[1] - p1[1]) * dx2) / denom
    return (p1[0] + t * dx1, p1[1] + t * dy1)
