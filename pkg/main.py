"""
Bar Visibility Command Line

Entry point for the bar visibility tools. Every subcommand reads JSON
manifests (or a named fixture) and prints a report; --json switches the
report to machine-readable JSON.

Usage:
    python main.py visibility layout.json --k 1
    python main.py realize layout.json graph.json
    python main.py oneplanar K6 -o layout.json
    python main.py quasiplanar layout.json -o drawing.json
    python main.py flowsquare network.json
    python main.py grid --m 52
    python main.py oracle K8 --mode hampath-planar
    python main.py audit K7 --class oneplanar
    python main.py render layout.json -o layout.svg

Exit codes: 0 success or verified, 1 verified false, 2 error.
"""

import os
import sys
import json
import random
import logging
import argparse

# Add src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from config import settings
from bar_layout import BarLayout, random_layout, realizes_weakly, strong_visibility_graph
from errors import SerializationError, VisibilityError
from fixtures import NAMED_GRAPHS, k5_drawing, k6_drawing
from flow_network import flow_square_to_web1, grid_2flow_counterexample, random_flow_network
from graph_core import forest_or_triangle, sorted_edges
from one_planar import oneplanar_embedding_from_drawing, oneplanar_to_web1
from oracle import MODES, bound_audit, search_1flow_preimage
from quasi_planar import (blue_blue_crossings, find_crossings, layout_to_quasiplanar,
                          max_mutual_crossing, same_bypass_crossings)
from rendering import save_svg
import serialization
from utils import Utils

VERSION = "1.0.0"

OK, FALSE, ERROR = 0, 1, 2

ONEPLANAR_FIXTURES = {"K5": k5_drawing, "K6": k6_drawing}


class BarVisApp:
    """Dispatches subcommands and formats their reports"""

    def __init__(self, debug=False, as_json=False):
        self.debug = debug
        self.as_json = as_json
        self.utils = Utils()

        log_level = "DEBUG" if debug else settings.LOG_LEVEL
        self.utils.setup_logging(settings.LOG_FILE_PATH, log_level)
        self.logger = logging.getLogger(__name__)

    # Input and output

    def load_graph(self, source: str):
        if source in NAMED_GRAPHS:
            return NAMED_GRAPHS[source]()
        g = serialization.load(source)
        if not hasattr(g, "nodes"):
            raise SerializationError(f"{source} does not hold a graph")
        return g

    def load_layout(self, source: str) -> BarLayout:
        obj = serialization.load(source)
        if hasattr(obj, "layout"):
            obj = obj.layout
        if not isinstance(obj, BarLayout):
            raise SerializationError(f"{source} does not hold a bar layout")
        return obj

    def report(self, data: dict, lines) -> None:
        if self.as_json:
            print(json.dumps(data, indent=2, default=str))
        else:
            for line in lines:
                print(line)

    def maybe_save(self, path, obj) -> None:
        if path:
            if not serialization.save(path, obj):
                raise OSError(f"could not write {path}")
            self.logger.info(f"Saved {path}")

    # Subcommands

    def visibility(self, args) -> int:
        layout = self.load_layout(args.layout)
        g = strong_visibility_graph(layout, args.k)
        edges = sorted_edges(g.edges)
        self.report(serialization.emit(g),
                    [f"Strong bar {args.k}-visibility graph: {len(g)} vertices, {len(edges)} edges"]
                    + [f"  {u} - {v}" for u, v in edges])
        self.maybe_save(args.output, g)
        return OK

    def realize(self, args) -> int:
        layout = self.load_layout(args.layout)
        g = self.load_graph(args.graph)
        result = realizes_weakly(layout, g, args.k)
        self.report({"realized": result.realized, "missing": result.missing},
                    [f"Weak bar {args.k}-visibility: {'yes' if result.realized else 'no'}"]
                    + [f"  missing {u} - {v}" for u, v in result.missing])
        return OK if result.realized else FALSE

    def oneplanar(self, args) -> int:
        if args.embedding in ONEPLANAR_FIXTURES:
            g, pos = ONEPLANAR_FIXTURES[args.embedding]()
            emb = oneplanar_embedding_from_drawing(g, pos)
        else:
            emb = serialization.load(args.embedding, expect="oneplanar-embedding")
            g = emb.original_graph()
        result = oneplanar_to_web1(emb, g)
        self.report(dict(serialization.emit(result.layout), crossings=len(result.registry)),
                    [f"1-planar graph with {len(g)} vertices and {g.number_of_edges()} edges",
                     f"  crossings replaced: {len(result.registry)}",
                     f"  kite changes: {len(result.kite_changes)}",
                     f"  biconnectivity chords: {len(result.augmentation)}",
                     f"  bars: {len(result.layout)}"])
        self.maybe_save(args.output, result.layout)
        return OK

    def quasiplanar(self, args) -> int:
        layout = self.load_layout(args.layout)
        drawing = layout_to_quasiplanar(layout)
        crossings = find_crossings(drawing)
        mutual = max_mutual_crossing(drawing)
        blue = blue_blue_crossings(drawing, crossings)
        same = same_bypass_crossings(drawing, crossings)
        ok = mutual <= 2 and not blue and not same
        summary = {
            "edges": len(drawing.polylines),
            "crossings": len(crossings),
            "max_mutual_crossing": mutual,
            "blue_blue": len(blue),
            "same_bypass": len(same),
            "quasi_planar": ok,
        }
        self.report(summary, [f"{key.replace('_', ' ')}: {value}" for key, value in summary.items()])
        self.maybe_save(args.output, drawing)
        return OK if ok else FALSE

    def flowsquare(self, args) -> int:
        if args.network:
            network = serialization.load(args.network, expect="flow-network")
        else:
            network = random_flow_network(random.Random(args.seed), args.random)
        result = flow_square_to_web1(network)
        self.report(dict(serialization.emit(result.layout), square_edges=result.square.number_of_edges()),
                    [f"1-flow network with {len(network.digraph)} vertices",
                     f"  square edges: {result.square.number_of_edges()}",
                     f"  augmentation arcs: {len(result.augmentation.added) if result.augmentation else 0}",
                     f"  bars: {len(result.layout)}"])
        self.maybe_save(args.output, result.layout)
        return OK

    def grid(self, args) -> int:
        result = grid_2flow_counterexample(args.m)
        summary = result.summary()
        self.report(summary,
                    [f"Grid 2-flow network, m={args.m}, n={args.m * args.m}",
                     f"  square edges: {result.square_edges}",
                     f"  6n-20 bound: {result.web1_bound}",
                     f"  13/2 (m-2)^2: {result.density_bound}",
                     f"  exceeds bound: {result.exceeds_web1}",
                     "  interior out-degrees in the square:"]
                    + [f"    {deg}: {count}" for deg, count in summary["histogram"].items()])
        self.maybe_save(args.output, result.network)
        return OK if result.exceeds_web1 else FALSE

    def oracle(self, args) -> int:
        target = self.load_graph(args.target)
        report = search_1flow_preimage(target, args.mode, planar=not args.no_planar)
        self.report(serialization.emit(report)["payload"], [report.summary()])
        self.maybe_save(args.output, report)
        return OK if report.found else FALSE

    def audit(self, args) -> int:
        g = self.load_graph(args.graph)
        report = bound_audit(g, args.graph_class)
        lines = [f"{args.graph_class}: n={report.n}, m={report.m}, bound={report.bound}, {report.verdict}"]
        if report.informational:
            lines.append("  (informational bound)")
        self.report(report.to_dict(), lines)
        return FALSE if report.verdict == "bound-exceeded" else OK

    def classify(self, args) -> int:
        layout = random_layout(random.Random(args.seed), args.n) if args.layout is None \
            else self.load_layout(args.layout)
        verdict = forest_or_triangle(strong_visibility_graph(layout, 1))
        self.report({"classification": verdict.value}, [f"Strong 1-visibility graph: {verdict.value}"])
        return FALSE if verdict.value == "neither" else OK

    def render(self, args) -> int:
        obj = serialization.load(args.input)
        if hasattr(obj, "layout") and not isinstance(obj, BarLayout):
            obj = obj.layout
        if not save_svg(args.output, obj, args.scale):
            raise OSError(f"could not write {args.output}")
        self.report({"output": args.output}, [f"SVG written to {args.output}"])
        return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description='Bar visibility layouts and drawings')
    parser.add_argument('--debug', action='store_true', help='Enable debug logging')
    parser.add_argument('--json', action='store_true', help='Print machine-readable JSON')
    parser.add_argument('--version', action='version', version=f'barvis v{VERSION}')
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('visibility', help='Strong bar k-visibility graph of a layout')
    p.add_argument('layout')
    p.add_argument('--k', type=int, default=settings.DEFAULT_K)
    p.add_argument('-o', '--output')

    p = sub.add_parser('realize', help='Check that a layout weakly realizes a graph')
    p.add_argument('layout')
    p.add_argument('graph', help='Graph manifest or a named graph (K3..K8, S3)')
    p.add_argument('--k', type=int, default=settings.DEFAULT_K)

    p = sub.add_parser('oneplanar', help='Bar 1-visibility layout of a 1-planar graph')
    p.add_argument('embedding', help='1-planar embedding manifest, or K5 / K6')
    p.add_argument('-o', '--output')

    p = sub.add_parser('quasiplanar', help='Quasi-planar drawing of a layout')
    p.add_argument('layout')
    p.add_argument('-o', '--output')

    p = sub.add_parser('flowsquare', help='Bar layout of the square of a 1-flow network')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('network', nargs='?')
    group.add_argument('--random', type=int, metavar='N', help='Use a random network with N vertices')
    p.add_argument('--seed', type=int, default=settings.RANDOM_SEED)
    p.add_argument('-o', '--output')

    p = sub.add_parser('grid', help='Grid 2-flow network whose square is too dense')
    p.add_argument('--m', type=int, default=52)
    p.add_argument('-o', '--output')

    p = sub.add_parser('oracle', help='Search for a 1-flow network with the given square')
    p.add_argument('target', help='Graph manifest or a named graph (K3..K8, S3)')
    p.add_argument('--mode', choices=MODES, required=True)
    p.add_argument('--no-planar', action='store_true', help='Drop the planarity filter')
    p.add_argument('-o', '--output')

    p = sub.add_parser('audit', help='Compare an edge count with a class bound')
    p.add_argument('graph')
    p.add_argument('--class', dest='graph_class', choices=['web1', 'oneplanar', 'quasiplanar'], required=True)

    p = sub.add_parser('classify', help='Forest-or-triangle check of a strong 1-visibility graph')
    p.add_argument('layout', nargs='?')
    p.add_argument('--n', type=int, default=8, help='Bars in a random layout')
    p.add_argument('--seed', type=int, default=settings.RANDOM_SEED)

    p = sub.add_parser('render', help='Render a layout or drawing manifest to SVG')
    p.add_argument('input')
    p.add_argument('-o', '--output', required=True)
    p.add_argument('--scale', type=float)

    return parser


def main(argv=None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    app = BarVisApp(debug=args.debug, as_json=args.json)
    try:
        return getattr(app, args.command)(args)
    except (VisibilityError, OSError, KeyError) as e:
        app.logger.error(f"Failed to run {args.command}: {e}")
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
