"""Exact engine for the fixed locus of a rational map on the Berkovich
projective line over a nonarchimedean working field."""

__version__ = "0.1.0"
