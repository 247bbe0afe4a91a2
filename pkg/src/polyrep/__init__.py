"""Weighted representation counts by polynomial values at prime powers, and
the circle-method quantities around them."""

__version__ = "0.1.0"
