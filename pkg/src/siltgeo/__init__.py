"""Exact tools for 2-term silting theory over bound quiver algebras."""
__version__ = "0.1.0"
