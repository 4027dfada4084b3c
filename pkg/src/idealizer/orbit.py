"""Orbit windows and the critical-density certificate.

The orbit of a point c under pullback along phi is indexed so that
c_{n+1} = pullback(phi, c_n) and c_{-1} = point_image(phi, c).  For the
diagonal family the criterion for critical density is that the
multipliers generate a free abelian group of rank d; the certificate
factors the multipliers over the primes by trial division and decides
independence by the kernel of the exponent matrix.  Dependent inputs
come with an explicit verified relation prod p_i^{a_i} = 1.

Window distinctness and evaluation ranks at orbit samples are finite
evidence, reported as observed facts, never as proofs of density.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product

from .automorphism import AutoMap, ProjPoint, point_image, pullback_point
from .linalg import rank_rows
from .poly import monomials

__all__ = [
    "FactorBoundError",
    "IndependenceCertificate",
    "OrbitWindow",
    "brute_force_relation",
    "distinct_window",
    "general_position_rank",
    "multiplicative_independence",
    "orbit_points",
]

TRIAL_DIVISION_BOUND = 10**6


class FactorBoundError(ValueError):
    """A multiplier has a prime factor beyond the trial-division bound."""


@dataclass(frozen=True)
class OrbitWindow:
    lo: int
    hi: int
    points: dict[int, ProjPoint]

    def point(self, n: int) -> ProjPoint:
        return self.points[n]


def orbit_points(auto: AutoMap, start: ProjPoint, window: int) -> OrbitWindow:
    """Points c_n for -window <= n <= window, c_0 = start."""
    pts = {0: start}
    fwd = start
    back = start
    for n in range(1, window + 1):
        fwd = pullback_point(auto, fwd)
        back = point_image(auto, back)
        pts[n] = fwd
        pts[-n] = back
    return OrbitWindow(-window, window, pts)


def distinct_window(window: OrbitWindow) -> tuple[bool, tuple[int, int] | None]:
    """Pairwise distinctness of the canonical forms; returns a witness pair."""
    seen: dict[tuple, int] = {}
    for n in range(window.lo, window.hi + 1):
        key = window.points[n].coords
        if key in seen:
            return False, (seen[key], n)
        seen[key] = n
    return True, None


def _trial_factor(n: int, bound: int) -> dict[int, int]:
    """Factor n > 0 by trial division; exact or FactorBoundError."""
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n and f <= bound:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        # a remainder is prime if trial division reached sqrt(n), or if it
        # has no factor up to bound and is at most bound^2
        if f * f > n or n <= bound * bound:
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorBoundError(
                "factor %d exceeds the trial-division bound %d" % (n, bound)
            )
    return out


@dataclass(frozen=True)
class IndependenceCertificate:
    multipliers: tuple[Fraction, ...]
    verdict: str  # "independent" | "dependent"
    primes: tuple[int, ...]
    exponent_matrix: tuple[tuple[int, ...], ...]  # rows = multipliers, cols = primes
    relation: tuple[int, ...] | None
    relation_verified: bool

    def payload(self) -> dict:
        return {
            "multipliers": [str(p) for p in self.multipliers],
            "verdict": self.verdict,
            "primes": list(self.primes),
            "exponent_matrix": [list(r) for r in self.exponent_matrix],
            "relation": list(self.relation) if self.relation is not None else None,
            "relation_verified": self.relation_verified,
        }


def _primitive_int_vector(vec) -> list[int]:
    from math import gcd

    denom = 1
    for x in vec:
        denom = denom * x.denominator // gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    return [v // g for v in ints] if g else ints


def multiplicative_independence(
    multipliers, bound: int = TRIAL_DIVISION_BOUND
) -> IndependenceCertificate:
    """Decide whether nonzero rationals are multiplicatively independent.

    Independence means prod p_i^{a_i} = 1 forces a = 0.  The sign of a
    dependent combination can always be repaired by doubling, so the
    verdict depends only on the kernel of the exponent matrix of the
    absolute values.
    """
    ps = tuple(Fraction(p) for p in multipliers)
    if any(p == 0 for p in ps):
        raise ValueError("multipliers must be nonzero")
    factored = []
    for p in ps:
        num = _trial_factor(abs(p.numerator), bound)
        den = _trial_factor(p.denominator, bound)
        expts = dict(num)
        for q, e in den.items():
            expts[q] = expts.get(q, 0) - e
        factored.append({q: e for q, e in expts.items() if e})
    primes = tuple(sorted({q for f in factored for q in f}))
    matrix = tuple(tuple(f.get(q, 0) for q in primes) for f in factored)

    from .fields import QQ
    from .linalg import kernel

    # unknowns a_i; one equation per prime q: sum_i a_i e_i(q) = 0
    rows = [
        [Fraction(matrix[i][col]) for i in range(len(ps))]
        for col in range(len(primes))
    ]
    combos = kernel(rows, len(ps), QQ)
    if not combos:
        return IndependenceCertificate(ps, "independent", primes, matrix, None, False)
    rel = _primitive_int_vector(combos[0])
    lead = next((a for a in rel if a), 0)
    if lead < 0:
        # negation inverts the product, so it stays 1; fixes a sign convention
        rel = [-a for a in rel]
    sign = 1
    for p, a in zip(ps, rel):
        if p < 0 and a % 2:
            sign = -sign
    if sign < 0:
        rel = [2 * a for a in rel]
    value = Fraction(1)
    for p, a in zip(ps, rel):
        value *= p**a
    return IndependenceCertificate(
        ps, "dependent", primes, matrix, tuple(rel), value == 1
    )


def brute_force_relation(multipliers, max_exp: int = 5):
    """Smallest-support exhaustive search for a relation; test oracle."""
    ps = tuple(Fraction(p) for p in multipliers)
    best = None
    for combo in iter_product(range(-max_exp, max_exp + 1), repeat=len(ps)):
        if not any(combo):
            continue
        value = Fraction(1)
        for p, a in zip(ps, combo):
            value *= p**a
        if value == 1:
            weight = sum(abs(a) for a in combo)
            if best is None or weight < best[0]:
                best = (weight, combo)
    if best is None:
        return None
    combo = best[1]
    lead = next((a for a in combo if a), 0)
    return tuple(-a for a in combo) if lead < 0 else tuple(combo)


def general_position_rank(
    auto: AutoMap, start: ProjPoint, degree: int, indices, field
) -> dict:
    """Rank of the evaluation matrix of degree-m monomials at orbit points."""
    window = max(abs(i) for i in indices) if indices else 0
    orbit = orbit_points(auto, start, window)
    basis = monomials(start.nvars, degree)
    rows = []
    for k in indices:
        coords = orbit.points[k].coords
        row = []
        for m in basis:
            v = field.one
            for x, e in zip(coords, m):
                if e:
                    v = v * x**e
            row.append(v)
        rows.append(row)
    rank = rank_rows(rows, len(basis), field)
    return {
        "degree": degree,
        "indices": list(indices),
        "rank": rank,
        "points": len(rows),
        "space_dim": len(basis),
        "full": rank == min(len(rows), len(basis)),
    }
