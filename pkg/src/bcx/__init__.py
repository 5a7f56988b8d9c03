"""Broken circuit complexes of graphic matroids.

h-vectors and delta-vectors via deletion-contraction, nested ear
decompositions of series-parallel networks, parallel-irreducible
decompositions, and machine checks of the structural theorems tying them
together.
"""

from __future__ import annotations

__version__ = "0.1.0"
