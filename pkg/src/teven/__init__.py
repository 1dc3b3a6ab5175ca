"""Weighted sum formulas for products of t-values, multiple t-values and
multiple t-star values at even arguments."""

__version__ = "0.1.0"
