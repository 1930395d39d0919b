"""HTTP service exposing the verification engine."""

from .app import app

__all__ = ["app"]
