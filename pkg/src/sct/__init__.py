"""Exact moment and free-cumulant computations on Schroeder trees."""

__version__ = "0.1.0"
