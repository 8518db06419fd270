"""Balanced separators, divisions and exposure geometry with checkable certificates."""

__version__ = "0.1.0"
