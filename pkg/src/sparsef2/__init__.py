"""Sparse solutions of GF(2) linear systems: instance transformers, coding-theory
building blocks, and exact brute-force solvers for desk-scale verification."""

from .f2 import BitMat, BitVec, gauss_solve, mat_mul, mat_vec_mul, nullspace_basis, rank, weight
from .instances import EvenSetInstance, PointValueSet, VectorSumInstance

__all__ = [
    "BitMat",
    "BitVec",
    "EvenSetInstance",
    "PointValueSet",
    "VectorSumInstance",
    "gauss_solve",
    "mat_mul",
    "mat_vec_mul",
    "nullspace_basis",
    "rank",
    "weight",
]

__version__ = "0.1.0"
