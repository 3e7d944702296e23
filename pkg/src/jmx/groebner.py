"""Buchberger's algorithm with the Gebauer-Moeller criteria.

Inside the engine a polynomial is a ``dict`` from order key to coefficient
(see :class:`jmx.field_poly.OrderEncoder`); multiplying by a monomial adds its
key to every key.  Leading monomials are additionally kept in packed form so
divisibility is a couple of integer operations.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .field_poly import (
    GradedRing,
    Monomial,
    MonomialOrder,
    OrderEncoder,
    Polynomial,
    RingMismatch,
    guard_mask,
    pack,
    packed_divides,
)

log = logging.getLogger(__name__)


class DegreeCapExceeded(RuntimeError):
    """Raised when a critical pair exceeds the configured degree cap."""

    def __init__(self, degree: int, cap: int, basis_size: int, pending: int):
        super().__init__(
            f"critical pair of degree {degree} exceeds degree cap {cap} "
            f"(basis size {basis_size}, {pending} pairs pending)"
        )
        self.degree = degree
        self.cap = cap


class _Kernel:
    """Shared arithmetic for one ring and order."""

    def __init__(self, ring: GradedRing, order: MonomialOrder):
        self.ring = ring
        self.order = order
        self.enc: OrderEncoder = order.encoder(ring.weights)
        self.p = ring.modulus
        self.guard = guard_mask(ring.nvars)
        self.weights = ring.weights
        self._packed: dict[int, int] = {}

    def packed(self, key: int) -> int:
        v = self._packed.get(key)
        if v is None:
            v = self._packed[key] = pack(self.enc.decode(key))
        return v

    def to_internal(self, f: Polynomial) -> dict[int, int]:
        key = self.enc.key
        return {key(e): c for e, c in f.items()}

    def to_poly(self, d: dict[int, int]) -> Polynomial:
        dec = self.enc.decode
        return Polynomial(self.ring, {dec(k): c for k, c in d.items()}, _trusted=True)

    def degree(self, key: int) -> int:
        w = self.weights
        return sum(a * b for a, b in zip(w, self.enc.decode(key)))

    def lcm_key(self, k1: int, k2: int) -> int:
        e1, e2 = self.enc.decode(k1), self.enc.decode(k2)
        return self.enc.key(tuple(max(a, b) for a, b in zip(e1, e2)))

    def coprime(self, k1: int, k2: int) -> bool:
        return not any(a and b for a, b in zip(self.enc.decode(k1), self.enc.decode(k2)))

    def divides(self, k1: int, k2: int) -> bool:
        return packed_divides(self.packed(k1), self.packed(k2), self.guard)


class _Elem:
    __slots__ = ("lead", "lead_packed", "tail", "sugar", "poly")

    def __init__(self, lead: int, lead_packed: int, tail: list, sugar: int, poly: dict):
        self.lead = lead
        self.lead_packed = lead_packed
        self.tail = tail  # [(key, coeff)] without the leading term, monic element
        self.sugar = sugar
        self.poly = poly


def _make_elem(kern: _Kernel, d: dict[int, int], sugar: int) -> _Elem:
    """Normalize ``d`` to a monic element."""
    lead = max(d)
    p = kern.p
    inv = pow(d[lead], -1, p)
    if inv != 1:
        d = {k: c * inv % p for k, c in d.items()}
    tail = sorted(((k, c) for k, c in d.items() if k != lead), reverse=True)
    return _Elem(lead, kern.packed(lead), tail, sugar, d)


def _reduce(kern: _Kernel, d: dict[int, int], basis: Sequence[_Elem], full: bool = True) -> dict[int, int]:
    """Remainder of ``d`` modulo ``basis``; consumes ``d``.

    With ``full=False`` only the leading term is reduced.
    """
    p = kern.p
    guard = kern.guard
    packed = kern.packed
    heap = [-k for k in d]
    heapq.heapify(heap)
    pop, push = heapq.heappop, heapq.heappush
    out: dict[int, int] = {}
    leads = [(g.lead_packed, g) for g in basis]
    while heap:
        k = -pop(heap)
        c = d.pop(k, None)
        if c is None:
            continue
        mg = packed(k) | guard
        for lp, g in leads:
            if (mg - lp) & guard == guard:
                break
        else:
            out[k] = c
            if not full:
                out.update(d)
                return out
            continue
        shift = k - g.lead
        get = d.get
        for gk, gc in g.tail:
            nk = gk + shift
            old = get(nk)
            if old is None:
                d[nk] = (-c * gc) % p
                push(heap, -nk)
            else:
                v = (old - c * gc) % p
                if v:
                    d[nk] = v
                else:
                    del d[nk]
    return out


@dataclass
class GroebnerBasis:
    """A reduced Groebner basis (monic, auto-reduced), sorted by increasing leading monomial."""

    ring: GradedRing
    order: MonomialOrder
    elements: tuple[Polynomial, ...]
    fingerprint: int = 0
    _kernel: _Kernel | None = field(default=None, repr=False, compare=False)
    _elems: list | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self._kernel is None:
            self._kernel = _Kernel(self.ring, self.order)
        if self._elems is None:
            kern = self._kernel
            self._elems = [_make_elem(kern, kern.to_internal(g), g.degree()) for g in self.elements]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def is_zero(self) -> bool:
        return not self.elements

    def leading_monomials(self) -> list[Monomial]:
        dec = self._kernel.enc.decode
        return [dec(e.lead) for e in self._elems]

    def reduce(self, f: Polynomial) -> Polynomial:
        return normal_form(f, self)

    def contains(self, f: Polynomial) -> bool:
        return normal_form(f, self).is_zero()

    def same_ideal(self, other: "GroebnerBasis") -> bool:
        return self.order == other.order and set(self.elements) == set(other.elements)


def normal_form(f: Polynomial, G: GroebnerBasis) -> Polynomial:
    """Fully reduced remainder of ``f`` modulo ``G``."""
    if f.ring != G.ring:
        raise RingMismatch(f"{f.ring} vs {G.ring}")
    kern = G._kernel
    return kern.to_poly(_reduce(kern, kern.to_internal(f), G._elems))


class _Pair:
    __slots__ = ("i", "j", "lcm", "deg", "sugar")

    def __init__(self, i, j, lcm, deg, sugar):
        self.i, self.j, self.lcm, self.deg, self.sugar = i, j, lcm, deg, sugar

    def sort_key(self, strategy: str):
        if strategy == "degree":
            return (self.deg, self.sugar, self.lcm, self.i, self.j)
        if strategy == "sugar":
            return (self.sugar, self.deg, self.lcm, self.i, self.j)
        return (self.lcm, self.i, self.j)


def buchberger(gens: Iterable[Polynomial], order: MonomialOrder | None = None,
               ring: GradedRing | None = None, degree_cap: int | None = None) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``.

    Homogeneous input is processed degree by degree (smallest weighted lcm
    degree, then lcm in the order).  Inhomogeneous input uses the sugar
    strategy, except under pure lex, where sugar degrees explode and the
    pair with the smallest lcm in the order is taken instead.  Useless pairs are dropped with the Gebauer-Moeller
    update.  Raises :class:`DegreeCapExceeded` when ``degree_cap`` is set
    and a pair beyond it comes up.
    """
    order = order or MonomialOrder.grevlex()
    gens = list(gens)
    if ring is None:
        if not gens:
            raise ValueError("ring must be given for an empty generator list")
        ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise RingMismatch(f"{g.ring} vs {ring}")
    gens = [g for g in gens if g]
    fingerprint = hash((order, frozenset(gens)))
    kern = _Kernel(ring, order)
    if not gens:
        return GroebnerBasis(ring, order, (), fingerprint, kern, [])
    if all(g.is_homogeneous() for g in gens):
        strategy = "degree"
    else:
        strategy = "normal" if order.kind == "lex" else "sugar"

    internal = []
    for g in gens:
        d = kern.to_internal(g)
        internal.append((max(d), d, g.degree()))
    internal.sort(key=lambda t: t[0])

    elems: list[_Elem] = []
    active: list[int] = []
    live: set[_Pair] = set()
    heap: list = []
    guard = kern.guard

    def update(h: int):
        nonlocal active
        eh = elems[h]
        lh = eh.lead
        cands = []
        for g in active:
            eg = elems[g]
            lcm = kern.lcm_key(lh, eg.lead)
            sug = max(eh.sugar + kern.degree(lcm - lh), eg.sugar + kern.degree(lcm - eg.lead))
            cands.append((g, lcm, kern.coprime(lh, eg.lead), sug))
        kept = []
        while cands:
            c = cands.pop(0)
            if c[2] or not any(kern.divides(x[1], c[1]) for x in cands + kept):
                kept.append(c)
        lhp = eh.lead_packed
        for pr in list(live):
            if packed_divides(lhp, kern.packed(pr.lcm), guard):
                if (kern.lcm_key(elems[pr.i].lead, lh) != pr.lcm
                        and kern.lcm_key(elems[pr.j].lead, lh) != pr.lcm):
                    live.discard(pr)
        for g, lcm, cop, sug in kept:
            if not cop:
                pr = _Pair(g, h, lcm, kern.degree(lcm), sug)
                live.add(pr)
                heapq.heappush(heap, (pr.sort_key(strategy), pr))
        active = [g for g in active if not packed_divides(lhp, elems[g].lead_packed, guard)] + [h]

    for _, d, sug in internal:
        r = _reduce(kern, d, [elems[i] for i in active])
        if r:
            elems.append(_make_elem(kern, r, sug))
            update(len(elems) - 1)

    p = kern.p
    count = 0
    while heap:
        _, pr = heapq.heappop(heap)
        if pr not in live:
            continue
        live.discard(pr)
        if degree_cap is not None and pr.deg > degree_cap:
            raise DegreeCapExceeded(pr.deg, degree_cap, len(active), len(live) + 1)
        ei, ej = elems[pr.i], elems[pr.j]
        si, sj = pr.lcm - ei.lead, pr.lcm - ej.lead
        s: dict[int, int] = {}
        for k, c in ei.tail:
            s[k + si] = c
        for k, c in ej.tail:
            nk = k + sj
            v = (s.get(nk, 0) - c) % p
            if v:
                s[nk] = v
            else:
                s.pop(nk, None)
        count += 1
        if not s:
            continue
        r = _reduce(kern, s, [elems[i] for i in active])
        if r:
            elems.append(_make_elem(kern, r, pr.sugar))
            update(len(elems) - 1)
    log.debug("buchberger: %d S-polynomials, %d elements", count, len(active))
    return _reduced_basis(kern, [elems[i] for i in active], fingerprint)


def _reduced_basis(kern: _Kernel, basis: list[_Elem], fingerprint: int) -> GroebnerBasis:
    basis = sorted(basis, key=lambda e: e.lead)
    minimal: list[_Elem] = []
    for e in basis:
        if not any(packed_divides(m.lead_packed, e.lead_packed, kern.guard) for m in minimal):
            minimal.append(e)
    reduced = []
    for idx, e in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        tail = _reduce(kern, dict(e.tail), others)
        tail[e.lead] = 1
        reduced.append(_make_elem(kern, tail, e.sugar))
    polys = tuple(kern.to_poly(e.poly) for e in reduced)
    return GroebnerBasis(kern.ring, kern.order, polys, fingerprint, kern, reduced)


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder | None = None) -> Polynomial:
    order = order or MonomialOrder.grevlex()
    (ef, cf), (eg, cg) = f.leading_term(order), g.leading_term(order)
    lcm = tuple(max(a, b) for a, b in zip(ef, eg))
    inv = f.ring.field.inv
    a = f.shift(tuple(x - y for x, y in zip(lcm, ef)), inv(cf))
    b = g.shift(tuple(x - y for x, y in zip(lcm, eg)), inv(cg))
    return a - b


def leading_ideal(G: GroebnerBasis) -> list[Monomial]:
    """Minimal monomial generators of the initial ideal."""
    return G.leading_monomials()


def is_groebner(G: GroebnerBasis) -> bool:
    """Buchberger's criterion: every S-polynomial reduces to zero."""
    els = list(G.elements)
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if not normal_form(s_polynomial(els[i], els[j], G.order), G).is_zero():
                return False
    return True


def is_reduced(G: GroebnerBasis) -> bool:
    """Monic, and no term of any element is divisible by another element's lead."""
    leads = G.leading_monomials()
    for idx, g in enumerate(G.elements):
        if g.leading_term(G.order)[1] != 1:
            return False
        for e, _ in g.items():
            for jdx, lm in enumerate(leads):
                if jdx == idx and e == lm:
                    continue
                if all(a <= b for a, b in zip(lm, e)):
                    return False
    return True
