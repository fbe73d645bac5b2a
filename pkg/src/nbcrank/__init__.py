"""Exact q-series workbench for the k-colored partition statistic NB_k(r, m, n)."""

__version__ = "0.1.0"
