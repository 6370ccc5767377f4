"""HTTP service wrapping the inversion pipeline."""

from .app import app, create_app

__all__ = ["app", "create_app"]
