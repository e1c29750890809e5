"""Equivariant contextuality of simplicial distributions and its cohomological obstructions."""

__version__ = "0.1.0"
