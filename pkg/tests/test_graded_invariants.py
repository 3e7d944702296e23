import pytest
from hypothesis import given, strategies as st

from jmx.field_poly import GradedRing, MonomialOrder, PrimeField
from jmx.graded_invariants import (
    INFINITE,
    InhomogeneousIdeal,
    WeightedMultiplicity,
    analytic_spread,
    dimension,
    height,
    hilbert_numerator,
    length,
    local_length,
    monomial_dimension,
    multiplicity,
    standard_monomials,
)
from jmx.groebner import leading_ideal
from jmx.ideal_ops import Ideal, QuotientPresentation, minors2
from oracles import hilbert_function
from strategies import SMALL_PRIME, homogeneous_polynomials, monomial_gens, rings

R = GradedRing(("x", "y", "z"))
x, y, z = R.gens()
S2 = GradedRing(("x", "y"))
X, Y = S2.gens()
S5 = GradedRing(tuple(f"x{i}" for i in range(1, 6)))
V = S5.gens()
HANKEL = minors2([V[:4], V[1:]])


def test_dimension_examples():
    assert dimension(Ideal.zero(R)) == 3
    assert dimension(Ideal(S2, [X])) == 1
    assert dimension(HANKEL) == 2
    assert dimension(Ideal.unit(R)) == -1


def test_hilbert_numerator_examples():
    assert hilbert_numerator(Ideal.zero(R)).numerator == (1,)
    assert hilbert_numerator(Ideal(S2, [X ** 2])).numerator == (1, 0, -1)
    ci = hilbert_numerator(Ideal(R, [x ** 2, y ** 3, z ** 4])).numerator
    # (1 - t^2)(1 - t^3)(1 - t^4)
    assert ci == (1, 0, -1, -1, -1, 1, 1, 1, 0, -1)


def test_hilbert_numerator_rejects_inhomogeneous():
    with pytest.raises(InhomogeneousIdeal):
        hilbert_numerator(Ideal(R, [x ** 2 + y]))


def test_length_examples():
    assert length(Ideal(R, [x, y, z])) == 1
    assert length(Ideal(S2, [X ** 2, Y ** 3])) == 6
    check = Ideal.parse(S5, ["x2", "x4", "x5 - x1", "x1^2", "x1*x5", "x3^2"])
    assert length(check) == 4
    assert length(Ideal(R, [x])) == INFINITE


def test_multiplicity_examples():
    T = GradedRing(("x",))
    for a in (1, 2, 5):
        assert multiplicity(Ideal(T, [T.var(0) ** a])) == a
    assert multiplicity(Ideal.zero(S2)) == 1
    assert multiplicity(Ideal(R, [x * z - y ** 2])) == 2
    assert multiplicity(Ideal.unit(R)) == 0
    assert multiplicity(HANKEL) == 4


def test_multiplicity_rejects_weights():
    W = GradedRing(("a", "b"), (1, 2))
    with pytest.raises(WeightedMultiplicity):
        multiplicity(Ideal(W, [W.var("b")]))


def test_analytic_spread_examples():
    assert analytic_spread(S2, Ideal(S2, [X, Y])) == 2
    assert analytic_spread(S2, Ideal(S2, [X])) == 1
    assert analytic_spread(S5, HANKEL) == 5
    assert analytic_spread(S2, Ideal(S2, [X ** 2, Y ** 3])) == 2


def test_analytic_spread_in_quotient():
    Q = QuotientPresentation(R, [x ** 2 - y * z])
    assert analytic_spread(Q, Ideal(R, [x, y])) == 2
    # (x^2, xy, y^2) restricted to the cone: the fiber cone still has dimension 2
    assert analytic_spread(Q, Ideal(R, [x ** 2, x * y, y ** 2])) == 2


def test_height():
    assert height(HANKEL) == 3
    assert height(Ideal(R, [x])) == 1


def test_local_length_of_inhomogeneous_ideals():
    # (x^2 + y^3, y^2 + x^3) meets the origin with multiplicity 4
    assert local_length(Ideal(S2, [X ** 2 + Y ** 3, Y ** 2 + X ** 3])) == 4
    assert local_length(Ideal(S2, [X - 1, Y])) == 0
    # the point (1, 0) does not count at the origin
    assert local_length(Ideal(S2, [X * (X - 1), Y])) == 1
    assert local_length(Ideal(S2, [X * (Y - 1)])) == INFINITE


def homogeneous_ideals(weighted=False):
    def pick(S):
        poly = st.integers(1, 3).flatmap(lambda d: homogeneous_polynomials(S, d, 3))
        return st.tuples(st.just(S), st.lists(poly, min_size=1, max_size=3))
    return rings(3, weighted=weighted, p=SMALL_PRIME).flatmap(pick)


@given(homogeneous_ideals(weighted=True))
def test_series_matches_dense_hilbert_function(data):
    S, gens = data
    I = Ideal(S, gens)
    series = hilbert_numerator(I).series(7)
    dense = [dict(g.items()) for g in I.gens]
    assert series == [hilbert_function(dense, S.nvars, k, S.modulus, S.weights) for k in range(8)]


@given(homogeneous_ideals(weighted=True))
def test_length_is_sum_of_hilbert_function(data):
    S, gens = data
    # make the quotient Artinian by adding powers of the variables
    I = Ideal(S, list(gens) + [v ** 3 for v in S.gens()])
    total = sum(hilbert_numerator(I).series(3 * sum(S.weights) + 1))
    assert length(I) == total == len(standard_monomials(I))


@given(homogeneous_ideals())
def test_dimension_is_order_independent(data):
    S, gens = data
    I = Ideal(S, gens)
    lex = monomial_dimension(leading_ideal(I.groebner(MonomialOrder.lex())), S.nvars)
    assert dimension(I) == lex


@given(st.lists(st.integers(1, 4), min_size=1, max_size=3))
def test_complete_intersection_numerator(degrees):
    S = GradedRing(("x", "y", "z")[:len(degrees)], (), PrimeField(SMALL_PRIME))
    I = Ideal(S, [v ** d for v, d in zip(S.gens(), degrees)])
    expected = [1]
    for d in degrees:
        shifted = [0] * d + expected
        expected = [a - b for a, b in zip(expected + [0] * d, shifted)]
    while expected and expected[-1] == 0:
        expected.pop()
    assert list(hilbert_numerator(I).numerator) == expected


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(st.just(n), monomial_gens(n))))
def test_multiplicity_positive_and_matches_hilbert_function(data):
    n, gens = data
    S = GradedRing(("x", "y", "z")[:n], (), PrimeField(SMALL_PRIME))
    I = Ideal(S, [S.monomial(e) for e in gens])
    data = hilbert_numerator(I)
    e = multiplicity(I)
    assert e > 0
    if data.dimension == 1:
        assert data.series(20)[-1] == e
