"""
Search Bounds and Edge-Density Limits

Size limits for the exhaustive searches and the edge bounds each graph
class obeys. Search limits can be overridden from the .env file.
"""

import os
from fractions import Fraction
from dotenv import load_dotenv

load_dotenv()


class Limits:
    """Search bounds and class edge bounds"""

    def __init__(self):
        # Exhaustive search sizes
        self.ALL_DAGS_MAX_VERTICES = int(os.getenv('ALL_DAGS_MAX_VERTICES', 6))
        self.HAMPATH_MAX_VERTICES = int(os.getenv('HAMPATH_MAX_VERTICES', 8))
        self.LAYOUT_SEARCH_MAX_VERTICES = int(os.getenv('LAYOUT_SEARCH_MAX_VERTICES', 7))
        self.LAYOUT_SEARCH_GRID = int(os.getenv('LAYOUT_SEARCH_GRID', 4))

        # Grid counterexample
        self.GRID_MIN_SIDE = 3

        # Edge bounds hold for n >= 5
        self.BOUND_MIN_VERTICES = 5

    def web1_bound(self, n: int) -> int:
        return 6 * n - 20

    def oneplanar_bound(self, n: int) -> int:
        return 4 * n - 8

    def quasiplanar_bound(self, n: int) -> Fraction:
        return Fraction(13, 2) * n

    def class_bound(self, graph_class: str, n: int):
        bounds = {
            'web1': self.web1_bound,
            'oneplanar': self.oneplanar_bound,
            'quasiplanar': self.quasiplanar_bound,
        }
        if graph_class not in bounds:
            raise KeyError(f"Unknown graph class {graph_class!r}")
        return bounds[graph_class](n)

    def __str__(self):
        return f"""
Limits Configuration:
- all-dags search: up to {self.ALL_DAGS_MAX_VERTICES} vertices
- hampath-planar search: up to {self.HAMPATH_MAX_VERTICES} vertices
- layout search: up to {self.LAYOUT_SEARCH_MAX_VERTICES} bars on a {self.LAYOUT_SEARCH_GRID} grid
        """
