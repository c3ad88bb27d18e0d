"""HTTP service wrapping the core engine."""

from .app import app

__all__ = ["app"]
