"""Exact polynomial and rational-function arithmetic over Q."""
from .gcd import cofactors, gcd_poly, squarefree_decomposition, squarefree_part
from .poly import MultiPoly, canonical_vars, format_poly, poly_vars
from .ratfunc import RationalFunction, compose_poly, format_rf
from .reconstruct import NoConsistentBranch, reconstruct_rational_function
from .resultant import resultant, resultant_bareiss, resultant_modular, sylvester_matrix
from .roots import rational_roots_univar

__all__ = [
    "MultiPoly", "RationalFunction", "NoConsistentBranch",
    "canonical_vars", "cofactors", "compose_poly", "format_poly", "format_rf",
    "gcd_poly", "poly_vars", "rational_roots_univar", "reconstruct_rational_function",
    "resultant", "resultant_bareiss", "resultant_modular", "squarefree_decomposition",
    "squarefree_part", "sylvester_matrix",
]
