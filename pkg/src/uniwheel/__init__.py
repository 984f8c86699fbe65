"""Desk-scale simulation and control testbed for a reaction-wheel unicycle."""

__version__ = "0.1.0"
