"""Exact workbench for hard polynomial instances and refutation measures.

Submodules:

  field      -- exact scalars over Q and F_p
  ring       -- sparse multivariate polynomials and monomial orders
  boolcube   -- multilinearization, cube interpolation, 1/f on the cube
  symmetric  -- elementary symmetric polynomials and decomposition
  instances  -- generators for the hard instances and plantings
  nullsatz   -- certificate verification and minimal-degree search
  dimension  -- coefficient/evaluation dimension and roABPs
  measures   -- monomial counts, residue, partial-derivative measures
  cli        -- the proofbench command-line driver
"""

from .field import QQ, PrimeField, Rationals, field_from_tag
from .ring import GRLEX, MonomialOrder, Polynomial, parse_polynomial, poly_to_text

__all__ = [
    "QQ",
    "PrimeField",
    "Rationals",
    "field_from_tag",
    "GRLEX",
    "MonomialOrder",
    "Polynomial",
    "parse_polynomial",
    "poly_to_text",
]

__version__ = "0.1.0"
