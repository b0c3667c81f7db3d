"""Compound splitting with frequency, parallel-corpus and POS evidence."""

__version__ = "0.1.0"
