"""The twisted polynomial ring S and its graded one-sided ideals.

S shares its graded vector space with the commutative ring U in d + 1
variables.  For f of degree m and g of degree n the product is

    f . g  =  phi^n(f) * g

(the left factor is twisted by the degree of the right factor; * is the
commutative product).  The normalization is pinned by the example
x1 . x0 = p_1 (x0 x1) for the diagonal family.

Graded left ideals of S coincide with graded ideals of U because
S_1 . J_n = phi^n(U_1) * J_n = U_1 * J_n, so left-ideal pieces follow
the commutative recursion J_{n+1} = U_1 * J_n + (new generators).
Right ideals do twist: (f S)_m = phi^{m-n}(f) * U_{m-n}.

Automorphism powers are cached per ring.  Each cache value is built
completely before the single dict store that publishes it, so warmed
rings can be read from several threads.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .automorphism import AutoMap
from .linalg import GradedSubspace, poly_ambient, span, span_polys
from .poly import HomogPoly, monomials, poly_to_vector

__all__ = ["GradedIdeal", "TwistRing", "TwistedElement"]

# A twisted element is an ordinary homogeneous polynomial; only the
# multiplication differs, and that lives on the ring.
TwistedElement = HomogPoly


class TwistRing:
    """k<x_0..x_d> with multiplication twisted by a graded automorphism."""

    def __init__(self, d: int, phi: AutoMap, field):
        if d < 2:
            raise ValueError("need projective dimension d >= 2, got %d" % d)
        if phi.nvars != d + 1:
            raise ValueError("automorphism arity %d, expected %d" % (phi.nvars, d + 1))
        self.d = d
        self.nvars = d + 1
        self.phi = phi
        self.field = field
        self._powers: dict[int, AutoMap] = {0: AutoMap.identity(self.nvars, field)}

    def ambient(self, n: int):
        return poly_ambient(self.nvars, n)

    def basis(self, n: int):
        return monomials(self.nvars, n)

    def power(self, n: int) -> AutoMap:
        """phi^n for any integer n, cached."""
        got = self._powers.get(n)
        if got is not None:
            return got
        if n > 0:
            value = self.power(n - 1).compose(self.phi)
        else:
            value = self.power(n + 1).compose(self.phi.inv())
        self._powers[n] = value
        return value

    def twisted(self, n: int, f: HomogPoly) -> HomogPoly:
        return self.power(n).apply(f)

    def mul(self, f: HomogPoly, g: HomogPoly) -> HomogPoly:
        """The twisted product f . g = phi^(deg g)(f) * g."""
        return self.twisted(g.degree, f) * g

    def variable(self, i: int) -> HomogPoly:
        return HomogPoly.variable(self.nvars, i, self.field)

    def full_piece(self, n: int) -> GradedSubspace:
        return span_polys(
            [HomogPoly.monomial(m, self.field.one) for m in self.basis(n)],
            self.ambient(n),
            self.field,
        )

    def product_piece(self, v: GradedSubspace, w: GradedSubspace) -> GradedSubspace:
        """Span of the twisted products of two graded pieces v . w."""
        if v.ambient.kind != "poly" or w.ambient.kind != "poly":
            raise ValueError("twisted products need polynomial ambients")
        b = w.ambient.degree
        target = self.ambient(v.ambient.degree + b)
        twisted_left = [self.twisted(b, f) for f in v.basis_polys()]
        vectors = (
            poly_to_vector(tf * g, self.field)
            for g in w.basis_polys()
            for tf in twisted_left
        )
        return span(vectors, target, self.field)

    def left_ideal(self, gens: list[HomogPoly]) -> "GradedIdeal":
        return GradedIdeal(self, gens)

    def left_ideal_pieces(self, gens: list[HomogPoly], max_degree: int) -> dict[int, GradedSubspace]:
        ideal = self.left_ideal(gens)
        return {n: ideal.piece(n) for n in range(max_degree + 1)}

    def right_ideal_pieces(self, f: HomogPoly, max_degree: int) -> dict[int, GradedSubspace]:
        """Pieces of the principal right ideal f S."""
        return {m: self.principal_right_piece(f, m) for m in range(max_degree + 1)}

    def principal_right_piece(self, f: HomogPoly, m: int) -> GradedSubspace:
        n = f.degree
        target = self.ambient(m)
        if m < n or f.is_zero():
            return span_polys([], target, self.field)
        tw = self.twisted(m - n, f)
        polys = [tw * HomogPoly.monomial(u, self.field.one) for u in self.basis(m - n)]
        return span_polys(polys, target, self.field)

    def opposite_iso_check(self, max_total_degree: int):
        """Verify degreewise that psi_n = phi^{-n} maps the opposite ring
        onto the twist by phi^{-1}: psi(f .op g) = psi(f) .' psi(g) for
        every pair of basis monomials with deg f + deg g bounded by the
        given total degree.

        Returns (ok, pairs_checked, first_failure).
        """
        opposite = TwistRing(self.d, self.phi.inv(), self.field)
        checked = 0
        for a in range(max_total_degree + 1):
            for b in range(max_total_degree + 1 - a):
                for fm in self.basis(a):
                    f = HomogPoly.monomial(fm, self.field.one)
                    for gm in self.basis(b):
                        g = HomogPoly.monomial(gm, self.field.one)
                        # f .op g is g . f computed in this ring
                        lhs = self.power(-(a + b)).apply(self.mul(g, f))
                        rhs = opposite.mul(
                            self.power(-a).apply(f), self.power(-b).apply(g)
                        )
                        checked += 1
                        if lhs != rhs:
                            return False, checked, (fm, gm)
        return True, checked, None


class GradedIdeal:
    """A graded ideal of U presented by homogeneous generators.

    Equals the graded left ideal of S generated by the same elements.
    Pieces are computed by the degree recursion and memoized.
    """

    def __init__(self, ring: TwistRing, gens: list[HomogPoly]):
        for g in gens:
            if g.nvars != ring.nvars:
                raise ValueError("generator arity mismatch")
        self.ring = ring
        self.gens = [g for g in gens if not g.is_zero()]
        self._pieces: dict[int, GradedSubspace] = {}
        self._twisted: dict[tuple[int, int], GradedSubspace] = {}

    def piece(self, n: int) -> GradedSubspace:
        got = self._pieces.get(n)
        if got is not None:
            return got
        ring = self.ring
        if n < 0:
            value = span_polys([], poly_ambient(ring.nvars, 0), ring.field)
        else:
            polys = [g for g in self.gens if g.degree == n]
            if n > 0:
                prev = self.piece(n - 1)
                one = ring.field.one
                for v in range(ring.nvars):
                    xv = HomogPoly.variable(ring.nvars, v, ring.field)
                    polys.extend(xv * f for f in prev.basis_polys())
            value = span_polys(polys, ring.ambient(n), ring.field)
        self._pieces[n] = value
        return value

    def dim(self, n: int) -> int:
        return self.piece(n).dim

    def twisted_piece(self, power: int, n: int) -> GradedSubspace:
        """The piece of phi^power applied to the ideal, in degree n."""
        auto = self.ring.power(power)
        if auto.is_identity():
            return self.piece(n)
        got = self._twisted.get((power, n))
        if got is not None:
            return got
        value = span_polys(
            [auto.apply(f) for f in self.piece(n).basis_polys()],
            self.ring.ambient(n),
            self.ring.field,
        )
        self._twisted[(power, n)] = value
        return value


def associativity_sample(ring: TwistRing, trials: int, seed: int, max_degree: int = 3) -> bool:
    """Seeded random check that (f.g).h = f.(g.h) in the twisted ring."""
    rng = random.Random(seed)

    def rand_poly(deg: int) -> HomogPoly:
        coeffs = {}
        for m in monomials(ring.nvars, deg):
            if rng.random() < 0.6:
                coeffs[m] = ring.field.from_int(rng.randint(-4, 4))
        return HomogPoly.from_dict(ring.nvars, deg, coeffs)

    for _ in range(trials):
        a, b, c = (rng.randint(1, max_degree) for _ in range(3))
        f, g, h = rand_poly(a), rand_poly(b), rand_poly(c)
        if ring.mul(ring.mul(f, g), h) != ring.mul(f, ring.mul(g, h)):
            return False
    return True
