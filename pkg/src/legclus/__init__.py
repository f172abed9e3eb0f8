"""Exact combinatorics of two-bridge Legendrian fronts.

Continuant polynomials, the characteristic-2 crossing dg-algebra, its
augmentation variety with forced base-point units, the per-block cluster
structure with polygon models, pinching-sequence fillings, and the normal
ruling stratification with its point-count consequences.
"""

from .bridge import BridgeWord, Fraction, Move, apply_move, fraction_value, smooth_isotopic, word_from_fraction
from .continuant import BMatrix, braid_matrix_product, check_determinant_identity, continuant, continuant_int
from .ring import Coefficients, LaurentPolynomial, VariableTable, exact_divide

__all__ = [
    "BridgeWord",
    "Fraction",
    "Move",
    "apply_move",
    "fraction_value",
    "smooth_isotopic",
    "word_from_fraction",
    "BMatrix",
    "braid_matrix_product",
    "check_determinant_identity",
    "continuant",
    "continuant_int",
    "Coefficients",
    "LaurentPolynomial",
    "VariableTable",
    "exact_divide",
]

__version__ = "0.1.0"
