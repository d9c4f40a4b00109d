"""Exact cohomology computations for the height-3 stabilizer algebra."""

__version__ = "0.1.0"
