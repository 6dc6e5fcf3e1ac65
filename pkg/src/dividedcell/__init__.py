"""Divided cells and continued fractions for binary Diophantine approximation."""

from .exactnum import Surd, parse_surd, format_surd, sqrt

__version__ = "0.1.0"
