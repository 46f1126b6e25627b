"""Determinants with Fisher-Hartwig singularities: exact engines, asymptotic predictors, identities."""

__version__ = "0.1.0"
