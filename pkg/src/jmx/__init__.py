"""Exact j-multiplicity computations for homogeneous ideals over prime fields."""

from .field_poly import GradedRing, MonomialOrder, Polynomial, PrimeField, parse_polynomial
from .groebner import GroebnerBasis, buchberger, leading_ideal, normal_form
from .ideal_ops import (
    Ideal,
    QuotientPresentation,
    colon,
    colon_ideal,
    eliminate,
    ideal_power,
    ideal_product,
    ideal_sum,
    intersect,
    minors2,
    saturate,
)
from .graded_invariants import analytic_spread, dimension, hilbert_numerator, length, local_length, multiplicity
from .jmult_engine import (
    AgreementPolicy,
    JReport,
    j_cor3a,
    j_cor3b_variant,
    j_definitional_oracle,
    j_length_formula,
    j_reduction,
    j_residual_multiplicity,
    monomial_curve_ideal,
    sample_general_elements,
)

__all__ = [
    "GradedRing",
    "MonomialOrder",
    "Polynomial",
    "PrimeField",
    "parse_polynomial",
    "GroebnerBasis",
    "buchberger",
    "leading_ideal",
    "normal_form",
    "Ideal",
    "QuotientPresentation",
    "colon",
    "colon_ideal",
    "eliminate",
    "ideal_power",
    "ideal_product",
    "ideal_sum",
    "intersect",
    "minors2",
    "saturate",
    "analytic_spread",
    "dimension",
    "hilbert_numerator",
    "length",
    "local_length",
    "multiplicity",
    "AgreementPolicy",
    "JReport",
    "j_cor3a",
    "j_cor3b_variant",
    "j_definitional_oracle",
    "j_length_formula",
    "j_reduction",
    "j_residual_multiplicity",
    "monomial_curve_ideal",
    "sample_general_elements",
]

__version__ = "0.1.0"
