"""Moment graphs, localization and character formulas for flag varieties G/H."""

__version__ = "0.1.0"
