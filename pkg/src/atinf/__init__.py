"""Critical points at infinity of bivariate polynomials."""

__version__ = "0.1.0"
