"""Exact stable bases for the Springer resolution: K-theory, cohomology and friends."""
from __future__ import annotations

__version__ = "0.1.0"
