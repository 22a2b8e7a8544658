"""
Preparation Script for the Bar Visibility Tools

Sets up the working environment:
- Checks that the required packages import
- Creates the data, output and log directories
- Writes a default .env file
- Searches for a strong bar 1-visibility layout of S3 and stores it
- Stores the K5 and K6 1-planar embeddings as fixtures

Run this once before using main.py.
"""

import os
import sys
import logging

# Add src directory to path for imports
sys.path.insert(0, os.path.join(os.path.dirname(os.path.abspath(__file__)), 'src'))

from config import limits, settings
from bar_layout import strong_visibility_graph
from fixtures import k5_drawing, k6_drawing, s3_graph, s3_layout
from graph_core import same_edges
from one_planar import oneplanar_embedding_from_drawing
from oracle import search_layout_for
import serialization
from utils import Utils

DEFAULT_ENV = """# Bar visibility settings
LOG_LEVEL=INFO
LOG_FILE_PATH=logs/barvis.log
OUTPUT_DIR=output
FIXTURE_DIR=data/fixtures
S3_FIXTURE_PATH=data/fixtures/s3_layout.json
SVG_SCALE=40
SVG_MARGIN=20
DEFAULT_K=1
RANDOM_SEED=2024
ORACLE_PROGRESS_EVERY=250000
"""


class BarVisPrepare:
    """Preparation steps for a fresh checkout"""

    def __init__(self):
        self.utils = Utils()
        self.utils.setup_logging(level="INFO")
        self.logger = logging.getLogger(__name__)
        self.logger.info("Bar visibility preparation started")

    def check_dependencies(self):
        """Check that every required package imports"""
        required_packages = ['networkx', 'numpy', 'pandas', 'dotenv', 'psutil', 'drawsvg']
        missing = []
        for package in required_packages:
            try:
                __import__(package)
                self.logger.info(f"✓ {package}")
            except ImportError:
                missing.append(package)
                self.logger.error(f"✗ {package} - REQUIRED")
        if missing:
            self.logger.error(f"Install the missing packages: pip install -r requirements.txt")
            return False
        return True

    def create_directories(self):
        """Create all necessary directories"""
        directories = [
            settings.OUTPUT_DIR,
            settings.FIXTURE_DIR,
            os.path.dirname(settings.LOG_FILE_PATH),
            os.path.dirname(settings.S3_FIXTURE_PATH),
        ]
        for directory in directories:
            if not self.utils.ensure_directory(directory):
                return False
            if directory:
                self.logger.info(f"✓ Directory: {directory}")
        return True

    def create_env(self):
        """Write a default .env unless one exists"""
        if os.path.exists('.env'):
            self.logger.info("✓ .env already present")
            return True
        if not self.utils.save_text('.env', DEFAULT_ENV):
            return False
        self.logger.info("✓ Created default .env")
        return True

    def build_s3_fixture(self):
        """Search for an S3 layout and store it"""
        target = s3_graph()
        self.logger.info(f"Searching bar layouts of S3 on a {limits.LAYOUT_SEARCH_GRID} grid...")
        report = search_layout_for(target, 1)
        layout = report.layout
        if layout is None:
            self.logger.warning("Search found no layout on this grid, storing the built-in one")
            layout = s3_layout()
        if not same_edges(strong_visibility_graph(layout, 1), target):
            self.logger.error("✗ Stored S3 layout does not reproduce S3")
            return False
        self.logger.info(f"✓ S3 layout after {report.examined} placements "
                         f"({self.utils.format_duration(report.elapsed)})")
        return serialization.save(settings.S3_FIXTURE_PATH, layout)

    def build_oneplanar_fixtures(self):
        """Store the K5 and K6 1-planar embeddings"""
        for name, drawing in (("k5", k5_drawing), ("k6", k6_drawing)):
            g, pos = drawing()
            emb = oneplanar_embedding_from_drawing(g, pos)
            path = os.path.join(settings.FIXTURE_DIR, f"{name}_embedding.json")
            if not serialization.save(path, emb):
                return False
            self.logger.info(f"✓ {path}: {len(emb.crossings)} crossings")
        return True

    def show_system_info(self):
        """Log system information"""
        for key, value in self.utils.get_system_info().items():
            if key == 'uptime':
                self.logger.info(f"  {key}: {self.utils.format_duration(value)}")
            else:
                self.logger.info(f"  {key}: {value}")

    def run(self):
        """Run every preparation step"""
        self.logger.info("=" * 50)
        self.logger.info("BAR VISIBILITY PREPARATION")
        self.logger.info("=" * 50)

        steps = [
            ("Checking dependencies", self.check_dependencies),
            ("Creating .env file", self.create_env),
            ("Creating directories", self.create_directories),
            ("Building S3 fixture", self.build_s3_fixture),
            ("Building 1-planar fixtures", self.build_oneplanar_fixtures),
        ]

        failed_steps = []
        for step_name, step_function in steps:
            self.logger.info(f"--- {step_name} ---")
            try:
                if not step_function():
                    failed_steps.append(step_name)
            except Exception as e:
                self.logger.error(f"✗ {step_name} failed with exception: {e}")
                failed_steps.append(step_name)

        self.logger.info("--- System Information ---")
        self.show_system_info()

        if failed_steps:
            self.logger.error(f"❌ Preparation finished with {len(failed_steps)} issues:")
            for step in failed_steps:
                self.logger.error(f"  - {step}")
            return False
        self.logger.info("✅ Preparation completed")
        self.logger.info("Next: python main.py --help")
        return True


def main():
    """Main preparation function"""
    try:
        prepare = BarVisPrepare()
        sys.exit(0 if prepare.run() else 1)
    except KeyboardInterrupt:
        print("\nPreparation interrupted")
        sys.exit(1)


if __name__ == "__main__":
    main()
