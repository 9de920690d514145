"""Constructive pointfree topology: finite positive topologies, the formal
Baire space, spreads and the formal reals, with executable checks."""

__version__ = "0.1.0"
