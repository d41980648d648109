"""Exact symbolic verification of the U_q(mu, nu) co-linking family and its homogeneous spaces."""

__version__ = "0.1.0"
