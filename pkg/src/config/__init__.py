"""
Bar Visibility Configuration Package

Settings and search limits, loaded from the .env file when present.
"""

from .limits import Limits
from .settings import Settings

# Make configs easily accessible
limits = Limits()
settings = Settings()

__all__ = ['limits', 'settings', 'Limits', 'Settings']
