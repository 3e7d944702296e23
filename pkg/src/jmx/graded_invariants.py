"""Dimension, Hilbert series, length, multiplicity and analytic spread of graded quotients.

Every ideal handled here is homogeneous for a positive grading, so every
graded prime sits inside the irrelevant ideal ``m`` and the local length of
an Artinian graded quotient at ``m`` is just its dimension as a vector
space over the residue field: the number of standard monomials.  All the
length computations in the engine rest on this identification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Sequence, Union

from .field_poly import GradedRing, Monomial, Polynomial, monomials_of_degree
from .groebner import leading_ideal
from .ideal_ops import Ideal, QuotientPresentation, eliminate, saturate

INFINITE = math.inf

Quotient = Union[Ideal, QuotientPresentation]


class InhomogeneousIdeal(ValueError):
    pass


class WeightedMultiplicity(ValueError):
    pass


def _defining(Q: Quotient) -> Ideal:
    return Q.defining if isinstance(Q, QuotientPresentation) else Q


# ---------------------------------------------------------------------------
# integer polynomials in one variable, as coefficient lists (index = exponent)


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def poly_add(a: Sequence[int], b: Sequence[int], sign: int = 1) -> list[int]:
    out = [0] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] += sign * c
    return _trim(out)


def poly_shift(a: Sequence[int], k: int) -> list[int]:
    return [0] * k + list(a) if a else []


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def divide_one_minus_power(a: Sequence[int], w: int) -> list[int] | None:
    """``a / (1 - t^w)`` if exact, else ``None``."""
    a = list(a)
    q = [0] * max(len(a) - w, 0)
    for i in range(len(a) - 1, w - 1, -1):
        c = a[i]
        if c:
            # a = q*(1 - t^w): leading coefficient of q at i-w is -c
            q[i - w] = -c
            a[i] = 0
            a[i - w] += c
    return _trim(q) if not any(a) else None


def poly_eval(a: Sequence[int], x: int) -> int:
    out = 0
    for c in reversed(a):
        out = out * x + c
    return out


# ---------------------------------------------------------------------------
# monomial ideals


def minimalize(gens: Sequence[Monomial]) -> list[Monomial]:
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out: list[Monomial] = []
    for g in gens:
        if not any(all(a <= b for a, b in zip(m, g)) for m in out):
            out.append(g)
    return out


def monomial_hilbert_numerator(gens: Sequence[Monomial], weights: Sequence[int]) -> list[int]:
    """Numerator ``N`` with ``HS(k[x]/(gens)) = N / prod(1 - t^w_i)``.

    Pivot recursion: for a variable power ``p``,
    ``N(I) = N(I + (p)) + t^deg(p) * N(I : p)``.
    """
    w = tuple(weights)
    memo: dict = {}

    def deg(e):
        return sum(a * b for a, b in zip(w, e))

    def rec(gens: tuple[Monomial, ...]) -> list[int]:
        if not gens:
            return [1]
        if any(not any(g) for g in gens):
            return []
        hit = memo.get(gens)
        if hit is not None:
            return hit
        # pairwise coprime generators form a regular sequence
        supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
        if all(supports[i].isdisjoint(supports[j])
               for i in range(len(gens)) for j in range(i + 1, len(gens))):
            out = [1]
            for g in gens:
                out = poly_mul(out, poly_add([1], poly_shift([1], deg(g)), -1))
            memo[gens] = out
            return out
        # pivot on the variable occurring in the most non-pure-power generators
        counts = [0] * len(w)
        for g, s in zip(gens, supports):
            if len(s) > 1:
                for i in s:
                    counts[i] += 1
        v = max(range(len(w)), key=lambda i: counts[i])
        exps = sorted(g[v] for g, s in zip(gens, supports) if len(s) > 1 and g[v])
        k = exps[len(exps) // 2]
        pivot = tuple(k if i == v else 0 for i in range(len(w)))
        plus = tuple(minimalize(list(gens) + [pivot]))
        colon = tuple(minimalize([tuple(max(a - b, 0) for a, b in zip(g, pivot)) for g in gens]))
        out = poly_add(rec(plus), poly_shift(rec(colon), deg(pivot)))
        memo[gens] = out
        return out

    return rec(tuple(minimalize(gens)))


def monomial_dimension(gens: Sequence[Monomial], n: int) -> int:
    """Krull dimension of ``k[x]/(gens)``: the largest independent variable set.

    Returns -1 for the unit ideal.
    """
    gens = minimalize(gens)
    if any(not any(g) for g in gens):
        return -1
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    for size in range(n, -1, -1):
        for subset in combinations(range(n), size):
            u = frozenset(subset)
            if not any(s <= u for s in supports):
                return size
    return 0


def _standard_monomials(gens: Sequence[Monomial], n: int) -> list[Monomial]:
    """Enumerate standard monomials of a zero-dimensional monomial ideal."""
    gens = minimalize(gens)
    if any(not any(g) for g in gens):
        return []
    bounds = [None] * n
    for g in gens:
        s = [i for i, a in enumerate(g) if a]
        if len(s) == 1:
            i = s[0]
            bounds[i] = g[i] if bounds[i] is None else min(bounds[i], g[i])
    if any(b is None for b in bounds):
        raise ValueError("monomial ideal is not zero-dimensional")
    return [m for m in product(*(range(b) for b in bounds))
            if not any(all(a <= b for a, b in zip(g, m)) for g in gens)]


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class HilbertData:
    """``HS(S/I) = numerator / prod(1 - t^w)`` over the ring weights."""

    numerator: tuple[int, ...]
    weights: tuple[int, ...]
    dimension: int
    multiplicity: int | None

    def series(self, upto: int) -> list[int]:
        """Hilbert function values in degrees ``0..upto``."""
        coeffs = list(self.numerator) + [0] * (upto + 1)
        coeffs = coeffs[: upto + 1]
        for w in self.weights:
            for i in range(w, upto + 1):
                coeffs[i] += coeffs[i - w]
        return coeffs

    def reduced_numerator(self) -> tuple[list[int], int]:
        """Standard grading only: cancel ``(1-t)`` factors; returns (numerator, dimension)."""
        num = list(self.numerator)
        k = len(self.weights)
        while num and k > 0:
            q = divide_one_minus_power(num, 1)
            if q is None:
                break
            num, k = q, k - 1
        return num, k


def hilbert_numerator(I: Quotient) -> HilbertData:
    """Hilbert series numerator of ``S/I`` from the grevlex initial ideal."""
    I = _defining(I)
    if not I.is_homogeneous():
        raise InhomogeneousIdeal("Hilbert series needs a w-homogeneous ideal")
    ring = I.ring
    lead = leading_ideal(I.groebner())
    num = monomial_hilbert_numerator(lead, ring.weights)
    dim = monomial_dimension(lead, ring.nvars)
    mult = None
    data = HilbertData(tuple(num), ring.weights, dim, None)
    if ring.is_standard:
        if not num:
            mult = 0
        else:
            red, _ = data.reduced_numerator()
            mult = poly_eval(red, 1)
    return HilbertData(tuple(num), ring.weights, dim, mult)


def dimension(Q: Quotient) -> int:
    """Krull dimension of ``S/I`` (-1 for the zero ring)."""
    I = _defining(Q)
    return monomial_dimension(leading_ideal(I.groebner()), I.ring.nvars)


def length(Q: Quotient) -> int | float:
    """Length of ``S/I``; ``INFINITE`` when the quotient is not Artinian."""
    I = _defining(Q)
    if not I.is_homogeneous():
        raise InhomogeneousIdeal("length at the irrelevant ideal needs a w-homogeneous ideal")
    lead = leading_ideal(I.groebner())
    if monomial_dimension(lead, I.ring.nvars) > 0:
        return INFINITE
    num = monomial_hilbert_numerator(lead, I.ring.weights)
    for w in I.ring.weights:
        num = divide_one_minus_power(num, w)
        if num is None:
            raise ArithmeticError("Hilbert numerator of an Artinian quotient did not divide")
    return poly_eval(num, 1)


def local_length(Q: Quotient) -> int | float:
    """Length of ``S_m / I S_m`` at the origin, for ideals that need not be homogeneous.

    ``INFINITE`` unless ``m`` is a minimal prime of ``I``, which holds
    exactly when ``I : m^inf`` is not inside ``m``.  In that case
    ``length(S / (I + m^N))`` climbs until ``m^N`` lies in ``I`` locally, and
    the first repeated value is the local length.
    """
    I = _defining(Q)
    ring = I.ring
    if I.is_homogeneous():
        return length(I)
    variables = ring.gens()
    if unit_at_origin(I):
        return 0
    if not unit_at_origin(saturate(I, Ideal(ring, variables))[0]):
        return INFINITE
    prev, N = None, 1
    while True:
        cut = Ideal(ring, list(I.gens) + [ring.monomial(e) for e in monomials_of_degree((1,) * ring.nvars, N)])
        value = len(_standard_monomials(leading_ideal(cut.groebner()), ring.nvars))
        if value == prev:
            return value
        prev, N = value, N + 1


def unit_at_origin(I: Ideal) -> bool:
    """Whether ``I`` is the unit ideal after localizing at the origin."""
    return Ideal(I.ring, list(I.gens) + I.ring.gens()).is_unit()


def standard_monomials(Q: Quotient) -> list[Monomial]:
    I = _defining(Q)
    return _standard_monomials(leading_ideal(I.groebner()), I.ring.nvars)


def multiplicity(Q: Quotient) -> int:
    """Multiplicity of ``S/I`` at the irrelevant ideal; 0 for the zero ring.

    For one-dimensional quotients the value is cross-checked against the
    eventually constant Hilbert function.
    """
    I = _defining(Q)
    if not I.ring.is_standard:
        raise WeightedMultiplicity("multiplicity is only supported for standard gradings")
    data = hilbert_numerator(I)
    if data.dimension < 0:
        return 0
    if data.dimension == 1:
        red, _ = data.reduced_numerator()
        hf = data.series(len(data.numerator) + 2)
        if hf[-1] != data.multiplicity or hf[-2] != data.multiplicity:
            raise ArithmeticError("Hilbert function did not stabilize at the multiplicity")
    return data.multiplicity


def analytic_spread(Q: Quotient, I: Ideal) -> int:
    """Krull dimension of the fiber cone of ``I`` in ``S/J``.

    Equigenerated ``I``: the fiber cone is ``k[g_1, ..., g_m]`` inside
    ``S/J``, the kernel of ``T_i -> g_i`` computed by elimination.  Otherwise
    the Rees ideal (``t`` eliminated from ``J + (T_i - t*g_i)``) is
    specialized at ``x = 0``.
    """
    J = _defining(Q) if isinstance(Q, QuotientPresentation) else Ideal(I.ring)
    ring = I.ring
    if not I.is_homogeneous():
        raise InhomogeneousIdeal("analytic spread needs a w-homogeneous ideal")
    full = Ideal(ring, I.gens + J.gens)
    if full.is_unit():
        raise ValueError("analytic spread of the unit ideal")
    gens = [g for g in I.gens if not J.contains(g)]
    if not gens:
        return 0
    degs = [g.degree() for g in gens]
    m = len(gens)
    tnames = [f"T{i + 1}" for i in range(m)]
    if len(set(degs)) == 1:
        ext = _prepend(ring, tnames, degs)
        shift = list(range(m, m + ring.nvars))
        rel = [ext.var(i) - g.embed(ext, shift) for i, g in enumerate(gens)]
        rel += [f.embed(ext, shift) for f in J.gens]
        K = eliminate(Ideal(ext, rel), ring.names)
        return dimension(K)
    ext = _prepend(ring, ["t"] + tnames, [1] + [d + 1 for d in degs])
    shift = list(range(m + 1, m + 1 + ring.nvars))
    t = ext.var(0)
    rel = [ext.var(i + 1) - t * g.embed(ext, shift) for i, g in enumerate(gens)]
    rel += [f.embed(ext, shift) for f in J.gens]
    rees = eliminate(Ideal(ext, rel), [ext.names[0]])
    # rees lives in k[T, x]; setting x = 0 leaves the fiber cone relations
    tring = GradedRing(rees.ring.names[:m], rees.ring.weights[:m], ring.field)
    fiber = []
    for g in rees.gens:
        terms = {e[:m]: c for e, c in g.items() if not any(e[m:])}
        if terms:
            fiber.append(Polynomial(tring, terms))
    return dimension(Ideal(tring, fiber))


def _prepend(ring: GradedRing, names: Sequence[str], weights: Sequence[int]) -> GradedRing:
    taken = set(ring.names)
    fresh = []
    for name in names:
        while name in taken:
            name += "_"
        taken.add(name)
        fresh.append(name)
    return GradedRing(tuple(fresh) + ring.names, tuple(weights) + ring.weights, ring.field)


def height(I: Ideal) -> int:
    return I.ring.nvars - dimension(I) if not I.is_unit() else I.ring.nvars + 1
