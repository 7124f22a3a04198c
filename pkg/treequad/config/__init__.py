"""
Configuration package: module-level defaults and logging setup.
"""

from . import settings
from .log import configure_logging

__all__ = ["settings", "configure_logging"]
