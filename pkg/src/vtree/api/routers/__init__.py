"""
Routers da API.
"""

from . import health, valuations

__all__ = ["health", "valuations"]
