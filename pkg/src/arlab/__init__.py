"""Arnoux-Rauzy words and their non-repetitive complexity."""
__version__ = "0.1.0"
