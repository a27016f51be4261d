"""Desk-scale cross-checks of ELSV-type Hurwitz identities.

Three independent computation routes live here: symmetric-group counting
of branched covers, intersection numbers of twisted classes on moduli of
curves, and correlator coefficients of a topological recursion. The
campaign layer compares them on overlapping ranges.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
