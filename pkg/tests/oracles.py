"""Brute-force reference computations that share no code with the Groebner machinery.

Everything here is dense linear algebra over GF(p) on explicit monomial
bases, so it is slow but easy to trust.
"""

from __future__ import annotations

from itertools import product


def monomials(nvars: int, degree: int, weights=None) -> list[tuple[int, ...]]:
    weights = weights or (1,) * nvars
    out = []
    bound = [degree // w for w in weights]
    for e in product(*(range(b + 1) for b in bound)):
        if sum(a * w for a, w in zip(e, weights)) == degree:
            out.append(e)
    return out


def rank_mod_p(rows: list[dict], p: int) -> int:
    """Rank of sparse row vectors (dicts column -> value) over GF(p)."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = {k: v % p for k, v in row.items() if v % p}
        while row:
            col = max(row)
            if col not in pivots:
                inv = pow(row[col], -1, p)
                pivots[col] = {k: v * inv % p for k, v in row.items()}
                rank += 1
                break
            c = row[col]
            for k, v in pivots[col].items():
                nv = (row.get(k, 0) - c * v) % p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    return rank


def ideal_degree_dimension(gens: list[dict], nvars: int, degree: int, p: int, weights=None) -> int:
    """``dim_k I_degree`` for homogeneous ``gens`` given as dicts exponent -> coefficient."""
    weights = weights or (1,) * nvars
    rows = []
    for g in gens:
        if not g:
            continue
        e0 = next(iter(g))
        dg = sum(a * w for a, w in zip(e0, weights))
        if dg > degree:
            continue
        for m in monomials(nvars, degree - dg, weights):
            rows.append({tuple(a + b for a, b in zip(e, m)): c for e, c in g.items()})
    return rank_mod_p(rows, p)


def hilbert_function(gens: list[dict], nvars: int, degree: int, p: int, weights=None) -> int:
    return len(monomials(nvars, degree, weights)) - ideal_degree_dimension(gens, nvars, degree, p, weights)


def poly_mul(f: dict, g: dict, p: int) -> dict:
    out: dict = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            out[e] = (out.get(e, 0) + c1 * c2) % p
    return {e: c for e, c in out.items() if c}


def power_generators(gens: list[dict], n: int, p: int) -> list[dict]:
    """All products of ``n`` generators (with repetition), the obvious generating set of ``I^n``."""
    from itertools import combinations_with_replacement

    nv = len(next(iter(gens[0])))
    out = []
    for combo in combinations_with_replacement(range(len(gens)), n):
        f = {(0,) * nv: 1}
        for i in combo:
            f = poly_mul(f, gens[i], p)
        out.append(f)
    return out


def primary_length(gens: list[dict], nvars: int, p: int, max_degree: int = 200) -> int:
    """``length(S/I)`` for an ideal primary to the irrelevant ideal, summed degree by degree."""
    total = 0
    for k in range(max_degree + 1):
        h = hilbert_function(gens, nvars, k, p)
        if h == 0:
            return total
        total += h
    raise ValueError("quotient did not vanish below max_degree")


def hilbert_samuel_multiplicity(gens: list[dict], nvars: int, p: int, n_max: int = 6) -> int:
    """Leading coefficient times ``d!`` of ``n -> length(S/I^n)``, read off from finite differences."""
    lengths = [primary_length(power_generators(gens, n, p), nvars, p) for n in range(1, n_max + 1)]
    table = lengths
    for _ in range(nvars):
        table = [b - a for a, b in zip(table, table[1:])]
    if len(set(table[-2:])) != 1:
        raise ValueError(f"differences did not stabilize: {table}")
    return table[-1]


def monomial_ideal_contains(gens: list[tuple[int, ...]], m: tuple[int, ...]) -> bool:
    return any(all(a <= b for a, b in zip(g, m)) for g in gens)


def smallest_admissible_degree(degrees, weights, limit: int = 500) -> int:
    """Search ``D = max(degrees), ...`` for every ``D - deg`` a sum of weights."""

    def representable(v):
        if v == 0:
            return True
        return any(v >= w and representable(v - w) for w in weights)

    for D in range(max(degrees), max(degrees) + limit):
        if all(representable(D - d) for d in degrees):
            return D
    raise ValueError("no admissible degree")


def splitmix64_reference(seed: int, count: int) -> list[int]:
    """The splitmix64 generator written out directly on 64-bit integers."""
    out = []
    x = seed
    for _ in range(count):
        x = (x + 0x9E3779B97F4A7C15) % 2 ** 64
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) % 2 ** 64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) % 2 ** 64
        out.append(z ^ (z >> 31))
    return out
