"""j-multiplicity of homogeneous ideals.

The main route is the length formula: for general elements ``a_1, ..., a_d``
of ``I`` in a ``d``-dimensional graded quotient ``S/J``,

    jm(I) = length( S / (((J + (a_1..a_{d-1})) : I^inf) + (a_d)) ).

"General" is emulated by seeded random coefficients over a large prime
field, so every route runs over several seeds and reports a value only when
the finite sample values agree.  The definitional oracle computes the
lengths of ``H^0_m(I^n M / I^{n+1} M)`` from the associated graded ring and
reads off the normalized leading coefficient by finite differences.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations_with_replacement
from typing import Any, Sequence, Union

from .field_poly import GradedRing, MonomialOrder, Polynomial
from .graded_invariants import (
    INFINITE,
    InhomogeneousIdeal,
    WeightedMultiplicity,
    analytic_spread,
    dimension,
    divide_one_minus_power,
    length,
    unit_at_origin,
    local_length,
    monomial_hilbert_numerator,
    multiplicity,
    poly_add,
    poly_eval,
)
from .ideal_ops import (
    Ideal,
    QuotientPresentation,
    colon_ideal,
    eliminate,
    saturate,
    saturate_by_variables,
)

log = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1

Quotient = Union[QuotientPresentation, GradedRing]


class SplitMix64:
    """The splitmix64 generator; coefficients are outputs mod p with 0 rejected."""

    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def coefficient(self, p: int) -> int:
        while True:
            v = self.next() % p
            if v:
                return v


class NoAdmissibleDegree(ValueError):
    pass


class HypothesisViolated(ValueError):
    pass


def as_quotient(Q: Quotient) -> QuotientPresentation:
    if isinstance(Q, QuotientPresentation):
        return Q
    return QuotientPresentation(Q, [])


# ---------------------------------------------------------------------------
# general elements


STRATEGIES = ("equigenerated-scalar", "weighted-degree-D", "local-scalar")


@dataclass
class GeneralElementSample:
    seed: int
    elements: list[Polynomial]
    strategy: str  # one of STRATEGIES
    target_degree: int | None


def semigroup_contains(value: int, weights: Sequence[int]) -> bool:
    """Whether ``value`` is a non-negative integer combination of ``weights``."""
    if value < 0:
        return False
    reachable = [False] * (value + 1)
    reachable[0] = True
    for v in range(1, value + 1):
        reachable[v] = any(v >= w and reachable[v - w] for w in weights)
    return reachable[value]


def admissible_degree(degrees: Sequence[int], weights: Sequence[int], cap: int = 1000) -> int:
    """Smallest ``D >= max(degrees)`` with every ``D - deg`` in the weight semigroup."""
    top = max(degrees)
    for D in range(top, top + cap + 1):
        if all(semigroup_contains(D - d, weights) for d in degrees):
            return D
    raise NoAdmissibleDegree(f"no admissible common degree up to {top + cap}")


def _generators(Q: QuotientPresentation, I: Ideal) -> list[Polynomial]:
    if I.ring != Q.ring:
        raise ValueError("ideal and quotient live in different rings")
    if not I.is_homogeneous():
        raise InhomogeneousIdeal("general elements need a w-homogeneous ideal")
    J = Q.defining
    gens = [g for g in I.gens if J.is_zero() or not J.contains(g)]
    if Ideal(Q.ring, list(gens) + list(J.gens)).is_unit():
        raise ValueError("the ideal is not proper in the quotient")
    return gens


def sample_general_elements(Q: Quotient, I: Ideal, count: int, seed: int,
                            degree_cap: int = 1000, strategy: str = "auto") -> GeneralElementSample:
    """Draw ``count`` random elements of ``I``.

    ``auto`` takes scalar combinations of the generators when they share a
    degree and degree-``D`` combinations otherwise.  ``local-scalar`` takes
    scalar combinations regardless of degrees; the result is then not
    homogeneous and only makes sense with lengths taken at the origin.

    Coefficients are consumed from one splitmix64 stream: element by element,
    generator by generator, and for each generator the multiplier monomials
    in decreasing grevlex order.
    """
    Q = as_quotient(Q)
    ring = Q.ring
    gens = _generators(Q, I)
    degs = [g.degree() for g in gens]
    rng = SplitMix64(seed)
    p = ring.modulus
    if strategy not in ("auto",) + STRATEGIES:
        raise ValueError(f"unknown sampling strategy {strategy!r}")
    if not gens:
        return GeneralElementSample(seed, [ring.zero()] * count, "equigenerated-scalar", 0)
    if len(set(degs)) == 1 and strategy != "local-scalar":
        strategy, D = "equigenerated-scalar", degs[0]
    elif strategy == "local-scalar":
        D = None
    elif strategy in ("auto", "weighted-degree-D"):
        strategy, D = "weighted-degree-D", admissible_degree(degs, ring.weights, degree_cap)
    else:
        raise ValueError("scalar combinations of generators of different degrees are not homogeneous")
    if D is None:
        multipliers = [[(0,) * ring.nvars] for _ in degs]
    else:
        enc = MonomialOrder.grevlex().encoder(ring.weights)
        multipliers = [sorted(ring.monomials(D - d), key=enc.key, reverse=True) for d in degs]
    elements = []
    for _ in range(count):
        terms: dict = {}
        for g, mons in zip(gens, multipliers):
            for mon in mons:
                c = rng.coefficient(p)
                for e, v in g.items():
                    key = tuple(a + b for a, b in zip(e, mon))
                    terms[key] = (terms.get(key, 0) + c * v) % p
        elements.append(Polynomial(ring, terms))
    return GeneralElementSample(seed, elements, strategy, D)


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class AgreementPolicy:
    """How sample values are combined: ``min_agree`` unanimous finite values, or the minimum."""

    min_agree: int = 3
    use_min: bool = False


@dataclass
class SampleRecord:
    seed: int
    outcome: str  # "finite" | "zero" | "non-general"
    value: int | None
    saturation_steps: int | None = None
    basis_sizes: dict[str, int] = field(default_factory=dict)
    strategy: str = ""
    target_degree: int | None = None


@dataclass
class JReport:
    value: int | None  # None means undetermined
    method: str
    d: int
    samples: list[SampleRecord] = field(default_factory=list)
    agreement: bool = False
    analytic_spread: int | None = None
    spread_consistent: bool | None = None
    experimental: bool = False
    hypotheses_assumed: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    oracle_value: int | None = None

    @property
    def determined(self) -> bool:
        return self.value is not None

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["value"] = self.value if self.value is not None else "undetermined"
        return out


def _aggregate(samples: list[SampleRecord], policy: AgreementPolicy) -> tuple[int | None, bool, list[str]]:
    finite = [s.value for s in samples if s.value is not None]
    warnings = []
    unanimous = len(set(finite)) == 1
    if len(finite) < len(samples):
        warnings.append(f"{len(samples) - len(finite)} of {len(samples)} samples were non-general")
    if not finite:
        return None, False, warnings + ["no sample gave a finite value"]
    if policy.use_min:
        if not unanimous:
            warnings.append("finite sample values disagree; reporting the minimum")
        return min(finite), unanimous, warnings
    if unanimous and len(finite) >= policy.min_agree:
        return finite[0], True, warnings
    if not unanimous:
        warnings.append(f"finite sample values disagree: {sorted(set(finite))}")
    else:
        warnings.append(f"only {len(finite)} finite samples, {policy.min_agree} required")
    return None, False, warnings


def _finish(report: JReport, Q: QuotientPresentation, I: Ideal, check_spread: bool) -> JReport:
    """Attach the analytic spread and the nonvanishing consistency flag."""
    if check_spread:
        try:
            spread = analytic_spread(Q, I)
        except ValueError as exc:
            report.warnings.append(f"analytic spread not computed: {exc}")
        else:
            report.analytic_spread = spread
            if report.value is not None:
                report.spread_consistent = (report.value > 0) == (spread == report.d)
                if not report.spread_consistent:
                    report.warnings.append(
                        f"value {report.value} inconsistent with analytic spread {spread} (d = {report.d})")
    return report


def _seeds(seeds: Sequence[int] | int | None) -> list[int]:
    if seeds is None:
        return [0, 1, 2]
    if isinstance(seeds, int):
        return [seeds]
    return list(seeds)


# ---------------------------------------------------------------------------
# length formula and its variants


def _length_sample(Q: QuotientPresentation, I: Ideal, d: int, seed: int, residual: str,
                   strategy: str) -> SampleRecord:
    ring = Q.ring
    sample = sample_general_elements(Q, I, d, seed, strategy=strategy)
    local = sample.strategy == "local-scalar"
    a = sample.elements
    base = Ideal(ring, list(Q.defining.gens) + a[: d - 1])
    lifted = Ideal(ring, list(I.gens))
    rec = SampleRecord(seed, "finite", None, strategy=sample.strategy, target_degree=sample.target_degree)
    if residual == "saturation":
        A, steps = saturate(base, lifted)
        rec.saturation_steps = steps
    else:
        A = colon_ideal(base, lifted)
        rec.saturation_steps = 1
    rec.basis_sizes["residual"] = len(A.groebner())
    if A.is_unit() or (local and unit_at_origin(A)):
        rec.outcome, rec.value = "zero", 0
        return rec
    final = Ideal(ring, list(A.gens) + [a[d - 1]])
    rec.basis_sizes["final"] = len(final.groebner())
    value = local_length(final) if local else length(final)
    if value == INFINITE:
        rec.outcome = "non-general"
    else:
        rec.value = int(value)
    return rec


def _run_length(Q: Quotient, I: Ideal, seeds, policy: AgreementPolicy, method: str, residual: str,
                check_spread: bool, oracle_nmax: int, strategy: str) -> JReport:
    Q = as_quotient(Q)
    d = dimension(Q.defining)
    if d < 1:
        raise ValueError("the quotient ring must have positive dimension")
    gens = _generators(Q, I)
    mixed = len({g.degree() for g in gens}) > 1
    if strategy == "auto":
        strategy = "local-scalar" if mixed else "equigenerated-scalar"
    samples = [_length_sample(Q, I, d, s, residual, strategy) for s in _seeds(seeds)]
    value, agree, warnings = _aggregate(samples, policy)
    report = JReport(value, method, d, samples, agree, warnings=warnings)
    if residual == "colon":
        report.hypotheses_assumed.append("G_d")
        report.hypotheses_assumed.append("weakly (d-2)-residually S_2")
    if mixed and strategy == "weighted-degree-D":
        # degree-D elements are not known to be general for mixed degrees;
        # accept the value only when the definitional oracle agrees
        report.experimental = True
        trace = j_definitional_oracle(Q, I, oracle_nmax)
        report.oracle_value = trace.value
        if value is not None and trace.value != value:
            report.warnings.append(
                f"experimental weighted-degree value {value} rejected: oracle gives {trace.value}")
            report.value = None
            report.agreement = False
    report = _finish(report, Q, I, check_spread)
    return report


def j_length_formula(Q: Quotient, I: Ideal, seeds=None, policy: AgreementPolicy = AgreementPolicy(),
                     check_spread: bool = True, oracle_nmax: int = 6, strategy: str = "auto") -> JReport:
    """j-multiplicity by the length formula with saturation.

    Generators of one degree give homogeneous samples and graded lengths.
    Mixed degrees default to ``local-scalar`` samples with lengths at the
    origin; ``strategy="weighted-degree-D"`` keeps everything graded but is
    experimental and only accepted when the definitional oracle agrees.
    """
    return _run_length(Q, I, seeds, policy, "length-formula", "saturation", check_spread, oracle_nmax, strategy)


def j_cor3b_variant(Q: Quotient, I: Ideal, seeds=None, policy: AgreementPolicy = AgreementPolicy(),
                    check_spread: bool = True, oracle_nmax: int = 6, strategy: str = "auto") -> JReport:
    """Length formula with a single colon in place of the saturation.

    Valid when ``I`` satisfies ``G_d`` and is weakly ``(d-2)``-residually
    ``S_2``; those hypotheses are recorded, not checked.
    """
    return _run_length(Q, I, seeds, policy, "cor3b-variant", "colon", check_spread, oracle_nmax, strategy)


def _equigenerated_degree(J: Ideal, r: int | None) -> int:
    degs = {g.degree() for g in J.gens}
    if len(degs) != 1:
        raise ValueError(f"generators must share one degree, found {sorted(degs)}")
    (deg,) = degs
    if r is not None and r != deg:
        raise ValueError(f"generators have degree {deg}, not {r}")
    return deg


def j_cor3a(S: Quotient, J: Ideal, r: int | None = None, seeds=None,
            policy: AgreementPolicy = AgreementPolicy(), check_spread: bool = True) -> JReport:
    """``r * e(S / ((f_1..f_{d-1}) : J))`` for general degree-``r`` elements ``f_i`` of ``J``.

    Needs a standard grading and ``J`` generated in the single degree ``r``.
    ``l(J) = d`` and ``G_d`` are assumed.
    """
    Q = as_quotient(S)
    ring = Q.ring
    if not ring.is_standard:
        raise WeightedMultiplicity("this formula needs a standard grading")
    gens = _generators(Q, J)
    r = _equigenerated_degree(Ideal(ring, gens), r)
    d = dimension(Q.defining)
    samples = []
    for seed in _seeds(seeds):
        f = sample_general_elements(Q, J, d - 1, seed).elements
        col = colon_ideal(Ideal(ring, list(Q.defining.gens) + f), Ideal(ring, gens))
        e = multiplicity(col)
        rec = SampleRecord(seed, "finite" if e else "zero", r * e, saturation_steps=1,
                           strategy="equigenerated-scalar", target_degree=r)
        rec.basis_sizes["residual"] = len(col.groebner())
        samples.append(rec)
    value, agree, warnings = _aggregate(samples, policy)
    report = JReport(value, "cor3a", d, samples, agree, warnings=warnings,
                     hypotheses_assumed=["analytic spread equals d", "G_d"])
    report = _finish(report, Q, J, check_spread)
    return report


def j_reduction(S: Quotient, J: Ideal | None, b: Sequence[Polynomial], b_d: Polynomial | None = None,
                check_spread: bool = False) -> JReport:
    """``length(S / ((b : J) + J))`` for an explicit ``b`` (deterministic)."""
    Q = as_quotient(S)
    ring = Q.ring
    gens = list(J.gens) if J is not None else []
    for extra in list(b) + ([b_d] if b_d is not None else []):
        if extra not in gens:
            gens.append(extra)
    J = Ideal(ring, gens)
    d = dimension(Q.defining)
    col = colon_ideal(Ideal(ring, list(Q.defining.gens) + list(b)), J)
    check = Ideal(ring, list(col.gens) + list(J.gens))
    value = length(check)
    report = JReport(None, "reduction", d, [], True,
                     hypotheses_assumed=["J is a reduction of I", "(b : J) + J primary to the irrelevant ideal",
                                         "S Gorenstein, S/I two-dimensional Cohen-Macaulay"])
    if value == INFINITE:
        raise HypothesisViolated("hypotheses violated: (b : J) + J is not primary to the irrelevant ideal")
    report.value = int(value)
    report.samples.append(SampleRecord(0, "finite" if value else "zero", int(value), saturation_steps=1,
                                       basis_sizes={"residual": len(col.groebner()),
                                                    "final": len(check.groebner())}))
    report = _finish(report, Q, J, check_spread)
    return report


def j_residual_multiplicity(S: Quotient, J: Ideal, b: Sequence[Polynomial],
                            check_spread: bool = False) -> JReport:
    """``r * e(S / (b : J))`` for explicit degree-``r`` elements ``b`` with ``ht(b : J) >= d - 1``."""
    Q = as_quotient(S)
    ring = Q.ring
    if not ring.is_standard:
        raise WeightedMultiplicity("this formula needs a standard grading")
    r = _equigenerated_degree(Ideal(ring, b), None)
    d = dimension(Q.defining)
    col = colon_ideal(Ideal(ring, list(Q.defining.gens) + list(b)), J)
    dim_col = dimension(col)
    height = d - dim_col if dim_col >= 0 else math.inf
    if height < d - 1:
        raise HypothesisViolated(f"height of (b : J) is {height}, need at least {d - 1}")
    e = multiplicity(col)
    report = JReport(r * e, "residual-multiplicity", d, [], True,
                     hypotheses_assumed=["Proj(S) Cohen-Macaulay", "weakly (d-3)-residually S_2 off the vertex"])
    report.samples.append(SampleRecord(0, "finite" if e else "zero", r * e, saturation_steps=1,
                                       basis_sizes={"residual": len(col.groebner())}))
    report = _finish(report, Q, J, check_spread)
    return report


# ---------------------------------------------------------------------------
# definitional oracle


@dataclass
class DefinitionalTrace:
    d: int
    lengths: list[int]
    differences: list[list[int]]
    value: int | None  # None: not stabilized

    def to_dict(self) -> dict[str, Any]:
        out = asdict(self)
        out["value"] = self.value if self.value is not None else "not stabilized"
        return out


def finite_differences(values: Sequence[int], order: int) -> list[list[int]]:
    table = [list(values)]
    for _ in range(order):
        prev = table[-1]
        table.append([b - a for a, b in zip(prev, prev[1:])])
    return table


def associated_graded(Q: Quotient, I: Ideal) -> tuple[Ideal, int]:
    """Presentation ``k[T_1..T_m, x]/L`` of the associated graded ring of ``I`` on ``S/J``.

    Returns ``L`` and ``m``; the ``T`` variables come first.  ``T_i`` has
    weight ``deg g_i + 1`` so ``L`` is homogeneous; it is also homogeneous in
    the ``T``-degree alone, which is the power ``n`` in ``I^n/I^{n+1}``.
    """
    Q = as_quotient(Q)
    ring = Q.ring
    gens = _generators(Q, I)
    m = len(gens)
    names = ["t"] + [f"T{i + 1}" for i in range(m)]
    taken = set(ring.names)
    fresh = []
    for name in names:
        while name in taken:
            name += "_"
        taken.add(name)
        fresh.append(name)
    ext = GradedRing(tuple(fresh) + ring.names, (1,) + tuple(g.degree() + 1 for g in gens) + ring.weights,
                     ring.field)
    shift = list(range(m + 1, m + 1 + ring.nvars))
    t = ext.var(0)
    rel = [ext.var(i + 1) - t * g.embed(ext, shift) for i, g in enumerate(gens)]
    rel += [f.embed(ext, shift) for f in Q.defining.gens]
    rees = eliminate(Ideal(ext, rel), [ext.names[0]])
    F = rees.ring
    xs = list(range(m, m + ring.nvars))
    L = Ideal(F, list(rees.gens) + [g.embed(F, xs) for g in gens])
    return L, m


def _component_lengths(L: Ideal, sat: Ideal, m: int, n_max: int) -> list[int]:
    """``sum over x-degrees of dim (sat/L)`` in each ``T``-degree ``0..n_max``."""
    weights = L.ring.weights[m:]
    lead_l = L.groebner().leading_monomials()
    lead_s = sat.groebner().leading_monomials()
    out = []
    for n in range(n_max + 1):
        total = 0
        for combo in combinations_with_replacement(range(m), n):
            beta = [0] * m
            for c in combo:
                beta[c] += 1
            a = {e[m:] for e in lead_l if all(x <= y for x, y in zip(e[:m], beta))}
            b = {e[m:] for e in lead_s if all(x <= y for x, y in zip(e[:m], beta))}
            if a == b:
                continue
            diff = poly_add(monomial_hilbert_numerator(sorted(a), weights),
                            monomial_hilbert_numerator(sorted(b), weights), -1)
            for w in weights:
                diff = divide_one_minus_power(diff, w)
                if diff is None:
                    raise ArithmeticError("local cohomology component is not of finite length")
            total += poly_eval(diff, 1)
        out.append(total)
    return out


def j_definitional_oracle(Q: Quotient, I: Ideal, n_max: int = 6) -> DefinitionalTrace:
    """Lengths of ``W_n = H^0_m(I^n M / I^{n+1} M)`` for ``n <= n_max`` and their differences.

    ``W`` is the ``m``-torsion of the associated graded ring ``G = k[T, x]/L``:
    ``W = (L : m^inf) / L`` with ``m`` generated by the ring variables, and
    ``W_n`` is its ``T``-degree ``n`` part.  By homogeneity its length is the
    count of standard monomials of ``L`` minus those of ``L : m^inf`` in that
    ``T``-degree.  The value is the ``(d-1)``-th difference once its last two
    entries agree.
    """
    Q = as_quotient(Q)
    d = dimension(Q.defining)
    if n_max < d:
        raise ValueError(f"n_max must be at least d = {d}")
    if not Q.defining.is_homogeneous():
        raise InhomogeneousIdeal("the quotient must be graded")
    L, m = associated_graded(Q, I)
    sat = saturate_by_variables(L, range(m, L.ring.nvars))
    lengths = _component_lengths(L, sat, m, n_max)
    table = finite_differences(lengths, max(d - 1, 0))
    last = table[-1]
    value = last[-1] if len(last) >= 2 and last[-1] == last[-2] else None
    return DefinitionalTrace(d, lengths, table, value)


# ---------------------------------------------------------------------------
# monomial curves


def monomial_curve_ideal(k: int, l: int, m: int, field=None,
                         names: Sequence[str] = ("X", "Y", "Z")) -> tuple[GradedRing, Ideal]:
    """Kernel of ``X -> t^k, Y -> t^l, Z -> t^m`` as a weighted homogeneous ideal."""
    if min(k, l, m) < 1:
        raise ValueError("exponents must be positive")
    if math.gcd(k, l, m) != 1:
        raise ValueError(f"gcd({k}, {l}, {m}) must be 1")
    kw = {} if field is None else {"field": field}
    ext = GradedRing(("t",) + tuple(names), (1, k, l, m), **kw)
    t, X, Y, Z = ext.gens()
    P = eliminate(Ideal(ext, [X - t ** k, Y - t ** l, Z - t ** m]), ["t"])
    return P.ring, P
