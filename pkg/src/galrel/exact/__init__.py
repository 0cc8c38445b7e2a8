"""Exact and certified numeric foundations."""

from galrel.exact.abelian import FinAbelianGroup, abelian_structure
from galrel.exact.certified import Certified
from galrel.exact.lattice import GramMatrix, enumerate_short_vectors, lll_reduce
from galrel.exact.matrices import hnf, rational_kernel, snf
from galrel.exact.polynomial import Polynomial, sturm_real_root_count

__all__ = [
    "Certified",
    "FinAbelianGroup",
    "GramMatrix",
    "Polynomial",
    "abelian_structure",
    "enumerate_short_vectors",
    "hnf",
    "lll_reduce",
    "rational_kernel",
    "snf",
    "sturm_real_root_count",
]
