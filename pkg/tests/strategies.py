"""Hypothesis strategies for small rings, polynomials and monomial ideals."""

from hypothesis import strategies as st

from jmx.field_poly import GradedRing, Polynomial, PrimeField

SMALL_PRIME = 101


def rings(max_vars: int = 3, weighted: bool = False, p: int = SMALL_PRIME):
    names = ("x", "y", "z", "w")[:max_vars]

    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_vars))
        weights = tuple(draw(st.lists(st.integers(1, 3), min_size=n, max_size=n))) if weighted else ()
        return GradedRing(names[:n], weights, PrimeField(p))

    return build()


def exponents(n: int, max_deg: int = 3):
    return st.tuples(*[st.integers(0, max_deg)] * n)


@st.composite
def polynomials(draw, ring, max_terms: int = 4, max_deg: int = 3):
    terms = draw(st.dictionaries(exponents(ring.nvars, max_deg), st.integers(1, ring.modulus - 1),
                                 max_size=max_terms))
    return Polynomial(ring, terms)


@st.composite
def homogeneous_polynomials(draw, ring, degree: int, max_terms: int = 4):
    mons = ring.monomials(degree)
    if not mons:
        return ring.zero()
    chosen = draw(st.lists(st.sampled_from(mons), min_size=1, max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(1, ring.modulus - 1), min_size=len(chosen), max_size=len(chosen)))
    return Polynomial(ring, dict(zip(chosen, coeffs)))


@st.composite
def monomial_gens(draw, n: int, max_deg: int = 4, max_gens: int = 4):
    """Nonconstant monomials in ``n`` variables with total degree at most ``max_deg``."""
    gens = draw(st.lists(exponents(n, max_deg).filter(lambda e: 0 < sum(e) <= max_deg),
                         min_size=1, max_size=max_gens))
    return gens
