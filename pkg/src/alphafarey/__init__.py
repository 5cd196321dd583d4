"""Exact alpha-continued fractions, alpha-Farey maps and their natural extensions."""
__version__ = "0.1.0"
