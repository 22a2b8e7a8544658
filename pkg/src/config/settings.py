"""
Application Settings for Bar Visibility

Paths, logging and rendering options loaded from the .env file.
Defaults work without any .env present.
"""

import os
from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class Settings:
    """Application settings and configuration"""

    def __init__(self):
        # Logging
        self.LOG_LEVEL = os.getenv('LOG_LEVEL', 'INFO')
        self.LOG_FILE_PATH = os.getenv('LOG_FILE_PATH', 'logs/barvis.log')

        # File Paths
        self.OUTPUT_DIR = os.getenv('OUTPUT_DIR', 'output')
        self.FIXTURE_DIR = os.getenv('FIXTURE_DIR', 'data/fixtures')
        self.S3_FIXTURE_PATH = os.getenv('S3_FIXTURE_PATH', 'data/fixtures/s3_layout.json')

        # SVG Rendering
        self.SVG_SCALE = float(os.getenv('SVG_SCALE', 40))
        self.SVG_MARGIN = float(os.getenv('SVG_MARGIN', 20))

        # Defaults for commands and generators
        self.DEFAULT_K = int(os.getenv('DEFAULT_K', 1))
        self.RANDOM_SEED = int(os.getenv('RANDOM_SEED', 2024))
        self.ORACLE_PROGRESS_EVERY = int(os.getenv('ORACLE_PROGRESS_EVERY', 250000))

    def __str__(self):
        """String representation for debugging"""
        return f"""
Settings Configuration:
- Log level: {self.LOG_LEVEL} ({self.LOG_FILE_PATH})
- Output directory: {self.OUTPUT_DIR}
- Fixture directory: {self.FIXTURE_DIR}
- SVG scale / margin: {self.SVG_SCALE} / {self.SVG_MARGIN}
- Default k: {self.DEFAULT_K}
- Random seed: {self.RANDOM_SEED}
        """
