"""Sato-Tate equidistribution checks for the family of all elliptic curves mod p."""

__version__ = "0.1.0"
