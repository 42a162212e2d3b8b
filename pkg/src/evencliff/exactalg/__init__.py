"""Exact scalars, homogeneous polynomials and polynomial matrices."""

from .fields import DEFAULT_PRIME, GF, QQ, Field, PrimeField, Rationals, parse_field
from .gcd import divides, gcd_many, poly_gcd, squarefree_check
from .matrix import PolyMatrix, det3, rank_at
from .poly import HomogeneousPoly, PolyError, monomials, parse_poly, random_poly

__all__ = [
    "DEFAULT_PRIME",
    "GF",
    "QQ",
    "Field",
    "HomogeneousPoly",
    "PolyError",
    "PolyMatrix",
    "PrimeField",
    "Rationals",
    "det3",
    "divides",
    "gcd_many",
    "monomials",
    "parse_field",
    "parse_poly",
    "poly_gcd",
    "random_poly",
    "rank_at",
    "squarefree_check",
]
