"""Exact computer algebra for powers of a factored polynomial.

Given f = f_1 ... f_r with a chosen factorization F, this package computes
logarithmic derivations, the derivation-generated annihilator of F^S, the
associated symbol ideals with their initial-ideal and Rees-kernel
certificates, multivariate Bernstein-Sato ideals by Weyl-algebra
elimination, shift-operator surjectivity tests, and Spencer complexes for
free divisors.  Everything is exact over Q.
"""

from .ring import Rat, VarContext, Poly, MonomialOrder, parse_poly, initial_form

__all__ = [
    "Rat",
    "VarContext",
    "Poly",
    "MonomialOrder",
    "parse_poly",
    "initial_form",
]

__version__ = "0.1.0"
