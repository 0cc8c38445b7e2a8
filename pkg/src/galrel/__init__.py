"""
galrel: relations among Galois-equivariant invariants of number fields.
"""

__version__ = "1.0.0"
