"""Coding choice sequences as real numbers and translating two-sorted
intuitionistic analysis into the language of ordered rings."""

__version__ = "0.1.0"
