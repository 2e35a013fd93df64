"""Valuative Tree Study - VTREE

Valuações indutivas e de limite em Q[x] sobre a valuação p-ádica,
com grupos de valores lexicográficos exatos.
"""

__version__ = "0.1.0"
