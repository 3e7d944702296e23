"""Prime fields, weighted graded rings, monomial orders and sparse polynomials.

Monomials are plain exponent tuples.  Every monomial order used here is
encoded by an integer coefficient vector ``c`` so that ``key(e) = sum(c_i * e_i)``
is strictly increasing along the order.  Because the key is linear, the key of
a product is the sum of the keys, which is what the Groebner engine relies on.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Iterable, Iterator, Mapping, Sequence

DEFAULT_MODULUS = 32003

# bits per packed exponent field; the top bit of each field is a guard bit
FIELD_BITS = 16
MAX_EXPONENT = (1 << (FIELD_BITS - 1)) - 1
# room reserved for the weighted degree of a trailing block in block orders
_BLOCK_DEGREE_BITS = 56

Monomial = tuple  # tuple[int, ...] of exponents, one per ring variable


class RingMismatch(ValueError):
    pass


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        super().__init__(message if position is None else f"{message} (at offset {position})")
        self.message = message
        self.position = position


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class PrimeField:
    """The field of integers modulo a prime."""

    modulus: int = DEFAULT_MODULUS

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus {self.modulus} is not prime")

    def __call__(self, value: int) -> int:
        return value % self.modulus

    def inv(self, a: int) -> int:
        a %= self.modulus
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return pow(a, -1, self.modulus)

    def __str__(self) -> str:
        return f"GF({self.modulus})"


def monomial_degree(exps: Sequence[int], weights: Sequence[int]) -> int:
    return sum(w * e for w, e in zip(weights, exps))


def monomials_of_degree(weights: Sequence[int], degree: int) -> list[Monomial]:
    """All exponent vectors of the given weighted degree, in no particular order."""
    n = len(weights)
    out: list[Monomial] = []

    def rec(i: int, remaining: int, prefix: list[int]):
        if i == n - 1:
            if remaining % weights[i] == 0:
                out.append(tuple(prefix + [remaining // weights[i]]))
            return
        for e in range(remaining // weights[i] + 1):
            rec(i + 1, remaining - e * weights[i], prefix + [e])

    if degree < 0 or n == 0:
        return [()] if degree == 0 and n == 0 else []
    rec(0, degree, [])
    return out


# ---------------------------------------------------------------------------
# monomial orders


@dataclass(frozen=True)
class MonomialOrder:
    """A monomial order: ``grevlex`` (weighted), ``lex`` or an elimination ``block``.

    A block order compares the first ``front`` variables with ``inner[0]`` and
    breaks ties on the remaining variables with ``inner[1]``.
    """

    kind: str = "grevlex"
    front: int = 0
    inner: tuple["MonomialOrder", "MonomialOrder"] | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex", "block"):
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "block":
            if self.inner is None or self.front < 0:
                raise ValueError("block order needs a front size and two inner orders")
            if any(o.kind == "block" for o in self.inner):
                raise ValueError("nested block orders are not supported")

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls("grevlex")

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls("lex")

    @classmethod
    def block(cls, front: int, first: "MonomialOrder | None" = None,
              second: "MonomialOrder | None" = None) -> "MonomialOrder":
        return cls("block", front, (first or cls.grevlex(), second or cls.grevlex()))

    def encoder(self, weights: Sequence[int]) -> "OrderEncoder":
        return _encoder(self, tuple(weights))

    def __str__(self) -> str:
        if self.kind == "block":
            return f"block({self.front}; {self.inner[0]}, {self.inner[1]})"
        return self.kind


_ENCODERS: dict = {}


def _encoder(order: MonomialOrder, weights: tuple[int, ...]) -> "OrderEncoder":
    enc = _ENCODERS.get((order, weights))
    if enc is None:
        enc = _ENCODERS[(order, weights)] = OrderEncoder(order, weights)
    return enc


class OrderEncoder:
    """Linear integer keys for one order on one set of weights."""

    def __init__(self, order: MonomialOrder, weights: tuple[int, ...]):
        self.order = order
        self.weights = weights
        self.n = n = len(weights)
        if order.kind == "block":
            f = order.front
            self._front = _encoder(order.inner[0], weights[:f])
            self._back = _encoder(order.inner[1], weights[f:])
            nb = n - f
            self._shift = FIELD_BITS * nb + _BLOCK_DEGREE_BITS
            self._bias = 1 << (FIELD_BITS * nb)
            s = 1 << self._shift
            self.coeffs = tuple(c * s for c in self._front.coeffs) + self._back.coeffs
        elif order.kind == "grevlex":
            top = 1 << (FIELD_BITS * n)
            self.coeffs = tuple(w * top - (1 << (FIELD_BITS * i)) for i, w in enumerate(weights))
        else:
            self.coeffs = tuple(1 << (FIELD_BITS * (n - 1 - i)) for i in range(n))
        self._decoded: dict[int, Monomial] = {}

    def key(self, exps: Sequence[int]) -> int:
        return sum(c * e for c, e in zip(self.coeffs, exps))

    def decode(self, key: int) -> Monomial:
        e = self._decoded.get(key)
        if e is None:
            e = self._decoded[key] = self._decode(key)
        return e

    def _decode(self, key: int) -> Monomial:
        n, b, mask = self.n, FIELD_BITS, (1 << FIELD_BITS) - 1
        kind = self.order.kind
        if kind == "grevlex":
            if n == 0:
                return ()
            deg = -((-key) >> (b * n))
            rev = (deg << (b * n)) - key
            return tuple((rev >> (b * i)) & mask for i in range(n))
        if kind == "lex":
            return tuple((key >> (b * (n - 1 - i))) & mask for i in range(n))
        fk = (key + self._bias) >> self._shift
        bk = key - (fk << self._shift)
        return self._front.decode(fk) + self._back.decode(bk)


def pack(exps: Sequence[int]) -> int:
    """Pack exponents into one integer (for divisibility tests)."""
    out = 0
    for i, e in enumerate(exps):
        if e > MAX_EXPONENT:
            raise OverflowError(f"exponent {e} exceeds {MAX_EXPONENT}")
        out |= e << (FIELD_BITS * i)
    return out


def guard_mask(n: int) -> int:
    g = 1 << (FIELD_BITS - 1)
    out = 0
    for i in range(n):
        out |= g << (FIELD_BITS * i)
    return out


def packed_divides(a: int, b: int, guard: int) -> bool:
    """True iff the packed monomial ``a`` divides ``b``."""
    return ((b | guard) - a) & guard == guard


# ---------------------------------------------------------------------------
# rings and polynomials

_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class GradedRing:
    """A polynomial ring over a prime field with positive variable weights."""

    names: tuple[str, ...]
    weights: tuple[int, ...] = ()
    field: PrimeField = field(default_factory=PrimeField)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        if not self.weights:
            object.__setattr__(self, "weights", (1,) * len(self.names))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.weights) != len(self.names):
            raise ValueError("one weight per variable is required")
        if any(w < 1 for w in self.weights):
            raise ValueError("weights must be positive integers")
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate variable names")
        for name in self.names:
            if not _IDENT.match(name):
                raise ValueError(f"bad variable name {name!r}")

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def modulus(self) -> int:
        return self.field.modulus

    @property
    def is_standard(self) -> bool:
        return all(w == 1 for w in self.weights)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise KeyError(f"unknown variable {name!r}") from None

    def degree(self, exps: Sequence[int]) -> int:
        return monomial_degree(exps, self.weights)

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        c %= self.modulus
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name: str | int) -> "Polynomial":
        i = name if isinstance(name, int) else self.index(name)
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        coeff %= self.modulus
        return Polynomial(self, {tuple(exps): coeff} if coeff else {})

    def monomials(self, degree: int) -> list[Monomial]:
        return monomials_of_degree(self.weights, degree)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def subring(self, names: Iterable[str]) -> "GradedRing":
        names = tuple(names)
        return GradedRing(names, tuple(self.weights[self.index(v)] for v in names), self.field)

    def __str__(self) -> str:
        ws = "" if self.is_standard else " weights " + ",".join(map(str, self.weights))
        return f"{self.field}[{', '.join(self.names)}]{ws}"


class Polynomial:
    """Immutable sparse polynomial; terms map exponent tuples to nonzero residues."""

    __slots__ = ("ring", "_terms", "_hash", "_sorted")

    def __init__(self, ring: GradedRing, terms: Mapping[Monomial, int], *, _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = dict(terms)
        else:
            p = ring.modulus
            n = ring.nvars
            clean: dict[Monomial, int] = {}
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n or any(x < 0 for x in e):
                    raise ValueError(f"bad exponent vector {e} for {n} variables")
                c = (clean.get(e, 0) + c) % p
                if c:
                    clean[e] = c
                else:
                    clean.pop(e, None)
            self._terms = clean
        self._hash = None
        self._sorted: dict = {}

    # -- basic accessors
    @property
    def terms(self) -> dict[Monomial, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, int]]:
        """Terms in strictly decreasing ``order`` (grevlex by default)."""
        order = order or MonomialOrder.grevlex()
        out = self._sorted.get(order)
        if out is None:
            enc = order.encoder(self.ring.weights)
            out = sorted(self._terms.items(), key=lambda t: enc.key(t[0]), reverse=True)
            self._sorted[order] = out
        return out

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Monomial, int]:
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.sorted_terms(order)[0]

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def degrees(self) -> set[int]:
        w = self.ring.weights
        return {monomial_degree(e, w) for e in self._terms}

    def degree(self) -> int:
        """Maximal weighted degree (-1 for zero)."""
        return max(self.degrees(), default=-1)

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def support(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    def constant_coefficient(self) -> int:
        return self._terms.get((0,) * self.ring.nvars, 0)

    # -- arithmetic
    def _check(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, other)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.modulus
        return Polynomial(self.ring, {e: p - c for e, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(self, -other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return add(other, -self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.modulus
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {e: v * c % p for e, v in self._terms.items()}, _trusted=True)

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.leading_term(order)[1]))

    def shift(self, exps: Sequence[int], coeff: int = 1) -> "Polynomial":
        """Multiply by the monomial ``coeff * x^exps``."""
        p = self.ring.modulus
        coeff %= p
        if not coeff:
            return self.ring.zero()
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c * coeff % p
                                      for e, c in self._terms.items()}, _trusted=True)

    def homogeneous_components(self) -> dict[int, "Polynomial"]:
        w = self.ring.weights
        parts: dict[int, dict] = {}
        for e, c in self._terms.items():
            parts.setdefault(monomial_degree(e, w), {})[e] = c
        return {d: Polynomial(self.ring, t, _trusted=True) for d, t in parts.items()}

    def substitute(self, images: Sequence["Polynomial"], ring: GradedRing | None = None) -> "Polynomial":
        """Ring map sending variable i to ``images[i]`` (all in ``ring``)."""
        ring = ring or (images[0].ring if images else self.ring)
        result = ring.zero()
        powers: dict[tuple[int, int], Polynomial] = {}
        for e, c in self._terms.items():
            term = ring.constant(c)
            for i, k in enumerate(e):
                if k:
                    pw = powers.get((i, k))
                    if pw is None:
                        pw = powers[(i, k)] = images[i] ** k
                    term = term * pw
            result = result + term
        return result

    def embed(self, ring: GradedRing, positions: Sequence[int]) -> "Polynomial":
        """Rename into ``ring``: variable i goes to ring variable ``positions[i]``."""
        n = ring.nvars
        out = {}
        for e, c in self._terms.items():
            new = [0] * n
            for i, k in enumerate(e):
                if k:
                    new[positions[i]] += k
            out[tuple(new)] = c
        return Polynomial(ring, out)

    # -- comparison / printing
    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    def to_string(self, order: MonomialOrder | None = None) -> str:
        if not self._terms:
            return "0"
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms(order):
            factors = [n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k]
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(factors))
            else:
                parts.append(f"{c}*" + "*".join(factors))
        return " + ".join(parts)

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"Polynomial({self.to_string()!r})"


def add(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    if len(g) > len(f):
        f, g = g, f
    p = f.ring.modulus
    out = dict(f._terms)
    for e, c in g._terms.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return Polynomial(f.ring, out, _trusted=True)


def mul(f: Polynomial, g: Polynomial) -> Polynomial:
    f._check(g)
    p = f.ring.modulus
    out: dict[Monomial, int] = {}
    gt = list(g._terms.items())
    for e1, c1 in f._terms.items():
        for e2, c2 in gt:
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return Polynomial(f.ring, {e: c for e, c in out.items() if c}, _trusted=True)


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """Quotient ``f / g``; raises ``ValueError`` when ``g`` does not divide ``f``."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    ring = f.ring
    order = MonomialOrder.grevlex()
    lm, lc = g.leading_term(order)
    inv = ring.field.inv(lc)
    quotient: dict[Monomial, int] = {}
    rem = f
    while rem:
        e, c = rem.leading_term(order)
        diff = tuple(a - b for a, b in zip(e, lm))
        if any(x < 0 for x in diff):
            raise ValueError("polynomial division is not exact")
        q = c * inv % ring.modulus
        quotient[diff] = q
        rem = rem - g.shift(diff, q)
    return Polynomial(ring, quotient, _trusted=True)


def power_products(gens: Sequence[Polynomial], n: int) -> Iterator[Polynomial]:
    """All products of ``n`` generators (with repetition)."""
    for combo in combinations_with_replacement(range(len(gens)), n):
        out = None
        for i in combo:
            out = gens[i] if out is None else out * gens[i]
        yield out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", num, start))
        elif ident is not None:
            tokens.append(("ident", ident, start))
        else:
            if sym not in "+-*^()/":
                raise PolynomialSyntaxError(f"unexpected character {sym!r}", start)
            tokens.append(("sym", sym, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: GradedRing):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym: str):
        tok = self.take()
        if tok[1] != sym or tok[0] != "sym":
            raise PolynomialSyntaxError(f"expected {sym!r}, found {tok[1] or 'end of input'!r}", tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty polynomial", 0)
        out = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {tok[1]!r}", tok[2])
        return out

    def expr(self) -> Polynomial:
        out = self.term()
        while self.peek()[:2] in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> Polynomial:
        out = self.unary()
        while self.peek()[:2] in (("sym", "*"), ("sym", "/")):
            op = self.take()
            rhs = self.unary()
            if op[1] == "*":
                out = out * rhs
            else:
                if not rhs.is_constant():
                    raise PolynomialSyntaxError("only division by integer constants is allowed", op[2])
                c = rhs.constant_coefficient()
                if c == 0:
                    raise PolynomialSyntaxError(
                        f"coefficient is not invertible modulo {self.ring.modulus}", op[2])
                out = out.scale(self.ring.field.inv(c))
        return out

    def unary(self) -> Polynomial:
        tok = self.peek()
        if tok[:2] == ("sym", "-"):
            self.take()
            return -self.unary()
        if tok[:2] == ("sym", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("sym", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", tok[2])
            base = base ** int(tok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, value, pos = tok
        if kind == "num":
            return self.ring.constant(int(value))
        if kind == "ident":
            if value not in self.ring.names:
                raise PolynomialSyntaxError(f"unknown variable {value!r}", pos)
            return self.ring.var(value)
        if tok[:2] == ("sym", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolynomialSyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse_polynomial(text: str, ring: GradedRing) -> Polynomial:
    """Parse ``text`` (integers, variables, ``+ - * ^ ( )``) into a polynomial of ``ring``."""
    return _Parser(text, ring).parse()
