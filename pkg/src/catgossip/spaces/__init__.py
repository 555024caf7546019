"""Concrete geodesic spaces: Euclidean vectors, SPD matrices with the
affine-invariant metric, the unit 2-sphere, the rotation group, and the
metric tree of reduced words over two generators."""

from . import euclidean, rotations, spd, sphere, tree

__all__ = ["euclidean", "rotations", "spd", "sphere", "tree"]
