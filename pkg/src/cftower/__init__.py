"""Exact tools for lower bounds on Ihara's constant A(q) via class field towers."""

__version__ = "0.1.0"
