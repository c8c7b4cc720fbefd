"""Depths of powers of edge ideals of forests, computed exactly and checked against closed-form bounds."""

__version__ = "0.1.0"
