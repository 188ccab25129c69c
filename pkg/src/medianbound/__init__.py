"""Median-perturbed integral inequalities and certified quadrature."""

__version__ = "0.1.0"
