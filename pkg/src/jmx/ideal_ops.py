"""Ideal arithmetic: sums, products, intersections, colons, saturation, elimination."""

from __future__ import annotations

import threading
from typing import Iterable, Sequence

from .field_poly import GradedRing, MonomialOrder, Polynomial, RingMismatch, divide_exact, power_products
from .groebner import GroebnerBasis, buchberger, normal_form

GREVLEX = MonomialOrder.grevlex()


class SaturationDidNotStabilize(RuntimeError):
    pass


class Ideal:
    """An ideal given by generators, with a per-order cache of reduced Groebner bases."""

    def __init__(self, ring: GradedRing, gens: Iterable[Polynomial] = ()):
        self.ring = ring
        gens = tuple(gens)
        for g in gens:
            if g.ring != ring:
                raise RingMismatch(f"{g.ring} vs {ring}")
        # drop zeros and repeats, keep first-seen order
        seen = set()
        kept = []
        for g in gens:
            if g and g not in seen:
                seen.add(g)
                kept.append(g)
        self.gens: tuple[Polynomial, ...] = tuple(kept)
        self._cache: dict[MonomialOrder, GroebnerBasis] = {}
        self._lock = threading.Lock()

    @classmethod
    def unit(cls, ring: GradedRing) -> "Ideal":
        out = cls(ring, [ring.one()])
        out._cache[GREVLEX] = GroebnerBasis(ring, GREVLEX, (ring.one(),))
        return out

    @classmethod
    def zero(cls, ring: GradedRing) -> "Ideal":
        return cls(ring, [])

    @classmethod
    def from_basis(cls, G: GroebnerBasis) -> "Ideal":
        out = cls(G.ring, G.elements)
        out._cache[G.order] = G
        return out

    @classmethod
    def parse(cls, ring: GradedRing, texts: Iterable[str]) -> "Ideal":
        return cls(ring, [ring.parse(t) for t in texts])

    def groebner(self, order: MonomialOrder | None = None, degree_cap: int | None = None) -> GroebnerBasis:
        order = order or GREVLEX
        G = self._cache.get(order)
        if G is None:
            G = buchberger(self.gens, order, ring=self.ring, degree_cap=degree_cap)
            with self._lock:
                self._cache.setdefault(order, G)
        return G

    @property
    def basis(self) -> tuple[Polynomial, ...]:
        return self.groebner().elements

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.gens):
            return True
        return self.groebner().is_unit()

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self.groebner()).is_zero()

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self.groebner())

    def contains_ideal(self, other: "Ideal") -> bool:
        G = self.groebner()
        return all(normal_form(g, G).is_zero() for g in other.gens)

    def generator_degrees(self) -> list[int]:
        return [g.degree() for g in self.gens]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring != other.ring:
            return False
        return set(self.groebner().elements) == set(other.groebner().elements)

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.groebner().elements)))

    def __add__(self, other: "Ideal") -> "Ideal":
        return ideal_sum(self, other)

    def __mul__(self, other: "Ideal") -> "Ideal":
        return ideal_product(self, other)

    def __pow__(self, n: int) -> "Ideal":
        return ideal_power(self, n)

    def __str__(self) -> str:
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    def __repr__(self) -> str:
        return f"Ideal{self}"


class QuotientPresentation:
    """The quotient ring ``S/J``; ``J`` must be proper."""

    def __init__(self, ring: GradedRing, defining: Ideal | Iterable[Polynomial] = ()):
        if not isinstance(defining, Ideal):
            defining = Ideal(ring, defining)
        if defining.ring != ring:
            raise RingMismatch(f"{defining.ring} vs {ring}")
        if defining.is_unit():
            raise ValueError("defining ideal is the unit ideal")
        self.ring = ring
        self.defining = defining

    def lift(self, I: Ideal) -> Ideal:
        """The preimage of ``I`` in the ambient ring, i.e. ``I + J``."""
        return ideal_sum(I, self.defining)

    def __str__(self) -> str:
        return f"{self.ring}/{self.defining}"


def _same_ring(*ideals: Ideal) -> GradedRing:
    ring = ideals[0].ring
    for I in ideals[1:]:
        if I.ring != ring:
            raise RingMismatch(f"{I.ring} vs {ring}")
    return ring


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, I.gens + J.gens)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    ring = _same_ring(I, J)
    return Ideal(ring, [f * g for f in I.gens for g in J.gens])


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise ValueError("negative power")
    if n == 0:
        return Ideal.unit(I.ring)
    return Ideal(I.ring, power_products(I.gens, n))


def _extended_ring(ring: GradedRing, names: Sequence[str], weights: Sequence[int]) -> GradedRing:
    taken = set(ring.names)
    fresh = []
    for name in names:
        while name in taken:
            name = name + "_"
        taken.add(name)
        fresh.append(name)
    return GradedRing(tuple(fresh) + ring.names, tuple(weights) + ring.weights, ring.field)


def _restrict(G: GroebnerBasis, front: int, ring: GradedRing) -> Ideal:
    """Basis elements free of the first ``front`` variables, moved into ``ring``."""
    kept = []
    for g in G.elements:
        if all(not any(e[:front]) for e in g.terms):
            kept.append(Polynomial(ring, {e[front:]: c for e, c in g.items()}, _trusted=True))
    out = Ideal(ring, kept)
    # the surviving elements are the reduced basis of the elimination ideal
    # for the second block order
    out._cache[G.order.inner[1]] = GroebnerBasis(ring, G.order.inner[1], tuple(kept))
    return out


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """``I`` meet ``J`` by eliminating ``t`` from ``t*I + (1-t)*J``."""
    ring = _same_ring(I, J)
    if I.is_zero() or J.is_zero():
        return Ideal.zero(ring)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    ext = _extended_ring(ring, ["t"], [1])
    shift = list(range(1, ext.nvars))
    t = ext.var(0)
    gens = [t * f.embed(ext, shift) for f in I.gens]
    gens += [(1 - t) * g.embed(ext, shift) for g in J.gens]
    G = buchberger(gens, MonomialOrder.block(1), ring=ext)
    return _restrict(G, 1, ring)


def _variable_index(f: Polynomial) -> int | None:
    if f.is_monomial():
        (e, c), = f.items()
        if sum(e) == 1:
            return e.index(1)
    return None


def _colon_by_variable(I: Ideal, v: int, infinite: bool = False) -> Ideal:
    """``I : x_v`` (or ``I : x_v^inf``) for w-homogeneous ``I`` with ``x_v`` last in grevlex.

    In weighted grevlex with ``x_v`` the smallest variable, ``x_v`` divides a
    homogeneous polynomial exactly when it divides its leading monomial, so
    dividing the basis elements by ``x_v`` gives a basis of the colon.
    """
    ring = I.ring
    n = ring.nvars
    perm = [i for i in range(n) if i != v] + [v]  # new position j holds old variable perm[j]
    pring = GradedRing(tuple(ring.names[i] for i in perm), tuple(ring.weights[i] for i in perm), ring.field)
    to_new = [0] * n
    for j, i in enumerate(perm):
        to_new[i] = j
    G = buchberger([g.embed(pring, to_new) for g in I.gens], GREVLEX, ring=pring)
    out = []
    for g in G.elements:
        k = min(e[-1] for e in g.terms)
        if not infinite:
            k = min(k, 1)
        if k:
            g = Polynomial(pring, {e[:-1] + (e[-1] - k,): c for e, c in g.items()}, _trusted=True)
        out.append(g.embed(ring, perm))
    return Ideal(ring, out)


def colon(I: Ideal, f: Polynomial) -> Ideal:
    """The ideal quotient ``I : f``."""
    if f.ring != I.ring:
        raise RingMismatch(f"{f.ring} vs {I.ring}")
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    ring = I.ring
    if f.is_constant() or I.is_zero():
        return I
    if I.contains(f):
        return Ideal.unit(ring)
    v = _variable_index(f)
    if v is not None and I.is_homogeneous():
        return _colon_by_variable(I, v)
    K = intersect(I, Ideal(ring, [f]))
    return Ideal(ring, [divide_exact(g, f) for g in K.gens])


def colon_ideal(I: Ideal, J: Ideal) -> Ideal:
    """``I : J`` as the intersection of ``I : g`` over the generators of ``J``."""
    ring = _same_ring(I, J)
    result: Ideal | None = None
    for g in J.gens:
        part = colon(I, g)
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    return result if result is not None else Ideal.unit(ring)


def saturate(I: Ideal, J: Ideal, max_steps: int = 64) -> tuple[Ideal, int]:
    """``I : J^inf`` by iterated colons; also returns the number of colon steps needed."""
    _same_ring(I, J)
    if J.is_zero():
        raise ValueError("saturation by the zero ideal")
    current = I
    for step in range(max_steps + 1):
        nxt = colon_ideal(current, J)
        if nxt == current:
            return current, step
        current = nxt
    raise SaturationDidNotStabilize(f"no fixed point after {max_steps} colon steps")


def eliminate(I: Ideal, front_vars: Iterable[str | int]) -> Ideal:
    """``I`` meet the subring in the variables not listed; returned in that subring."""
    ring = I.ring
    front = [v if isinstance(v, int) else ring.index(v) for v in front_vars]
    front = sorted(set(front))
    back = [i for i in range(ring.nvars) if i not in front]
    sub = GradedRing(tuple(ring.names[i] for i in back), tuple(ring.weights[i] for i in back), ring.field)
    if not front:
        return Ideal(sub, I.gens)
    perm = front + back
    pring = GradedRing(tuple(ring.names[i] for i in perm), tuple(ring.weights[i] for i in perm), ring.field)
    to_new = [0] * ring.nvars
    for j, i in enumerate(perm):
        to_new[i] = j
    G = buchberger([g.embed(pring, to_new) for g in I.gens], MonomialOrder.block(len(front)), ring=pring)
    return _restrict(G, len(front), sub)


def minors2(rows: Sequence[Sequence[Polynomial]]) -> Ideal:
    """Ideal of the 2x2 minors of a 2 x n matrix."""
    if len(rows) != 2 or len(rows[0]) != len(rows[1]):
        raise ValueError("need a 2 x n matrix")
    entries = [f for row in rows for f in row]
    ring = entries[0].ring
    for f in entries:
        if f.ring != ring:
            raise RingMismatch(f"{f.ring} vs {ring}")
    a, b = rows
    n = len(a)
    return Ideal(ring, [a[i] * b[j] - a[j] * b[i] for i in range(n) for j in range(i + 1, n)])


def map_ideal(I: Ideal, ring: GradedRing, positions: Sequence[int]) -> Ideal:
    return Ideal(ring, [g.embed(ring, positions) for g in I.gens])


def saturate_by_variables(I: Ideal, variables: Iterable[str | int]) -> Ideal:
    """``I : (x_i ...)^inf`` for w-homogeneous ``I`` as the meet of the ``I : x_i^inf``.

    Each ``I : x_i^inf`` comes from one basis with ``x_i`` last, so no colon
    iteration is needed.
    """
    ring = I.ring
    idx = sorted({v if isinstance(v, int) else ring.index(v) for v in variables})
    if not idx:
        raise ValueError("saturation by the zero ideal")
    if not I.is_homogeneous():
        ideal = Ideal(ring, [ring.var(i) for i in idx])
        return saturate(I, ideal)[0]
    result: Ideal | None = None
    for i in idx:
        part = _colon_by_variable(I, i, infinite=True)
        if part.is_unit():
            continue
        result = part if result is None else intersect(result, part)
    return result if result is not None else Ideal.unit(ring)
