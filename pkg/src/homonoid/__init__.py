"""Exhaustive, desk-scale verification of finite monoidal categories,
homotopy monoids, and the collapsed-simplex comonoid."""

__version__ = "0.1.0"
