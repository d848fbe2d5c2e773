"""Invariants of codimension-4 schemes defined by submaximal minors of square matrices."""

__version__ = "0.1.0"
