"""Repulsive graphs with unbounded degrees: exact enumeration, capacity and temperedness."""

__version__ = "0.1.0"
