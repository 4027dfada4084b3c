"""The idealizer of a point ideal inside a twisted polynomial ring.

Fix the left ideal I = S.I_1 generated by the linear forms vanishing at a
point c.  The idealizer is the largest graded subring of S in which I
becomes a two-sided ideal,

    T_n = { x in U_n : phi^n(I_1) . x  is contained in  I_{n+1} },

computed degree by degree as the kernel of an explicit constraint matrix.
Reducing to the degree-1 generators is legitimate because I is generated
in degree 1; idealizer_piece_full keeps every constraint up to a cap and
exists to let tests confirm the reduction on the nose.

Everything downstream is a finite-dimensional witness: Hilbert functions
of S/IS and S/T, minimal generator counts of T, and the comparison of
Veronese subrings of T with idealizers inside Veronese subrings of S.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .automorphism import ProjPoint
from .linalg import GradedSubspace, kernel, span, span_polys
from .orbit import distinct_window, orbit_points
from .poly import HomogPoly, basis_dim, basis_index, monomial_basis, poly_to_vector
from .twist import GradedIdeal, TwistRing

__all__ = ["IdealizerRing", "point_ideal_forms"]


def point_ideal_forms(ring: TwistRing, point: ProjPoint) -> list[HomogPoly]:
    """Canonical basis of the linear forms vanishing at the point."""
    if point.nvars != ring.nvars:
        raise ValueError("point arity does not match the ring")
    vecs = kernel([list(point.coords)], ring.nvars, ring.field)
    return [
        HomogPoly.from_dict(
            ring.nvars,
            1,
            {m: c for m, c in zip(monomial_basis(ring.d, 1), v)},
        )
        for v in vecs
    ]


class IdealizerRing:
    """T = idealizer of the point ideal of c inside the twist of U."""

    def __init__(self, ring: TwistRing, point: ProjPoint):
        if point.nvars != ring.nvars:
            raise ValueError("point arity does not match the ring")
        self.ring = ring
        self.field = ring.field
        self.point = point
        self.forms = point_ideal_forms(ring, point)
        self.I = GradedIdeal(ring, self.forms)
        self._pieces: dict[int, GradedSubspace] = {}
        self._is_pieces: dict[int, GradedSubspace] = {}

    # -- degreewise pieces ------------------------------------------------

    def _quotient_row(self, shifted: HomogPoly, source_degree: int) -> list:
        """Constraint row: coordinate of (shifted . e_k) in U/I, one per k."""
        target = self.I.piece(source_degree + shifted.degree)
        row = []
        for mono in monomial_basis(self.ring.d, source_degree):
            prod = shifted * HomogPoly.monomial(mono, self.field.one)
            coords = target.quotient_coords(poly_to_vector(prod, self.field))
            if len(coords) != 1:
                raise ArithmeticError("point ideal piece is not of codimension one")
            row.append(coords[0])
        return row

    def idealizer_piece(self, n: int) -> GradedSubspace:
        """T_n as a subspace of U_n."""
        if n < 0:
            raise ValueError("degree must be nonnegative")
        cached = self._pieces.get(n)
        if cached is not None:
            return cached
        rows = [self._quotient_row(self.ring.twisted(n, f), n) for f in self.forms]
        vecs = kernel(rows, basis_dim(self.ring.nvars, n), self.field)
        piece = span(vecs, self.ring.ambient(n), self.field)
        self._pieces[n] = piece
        return piece

    def idealizer_piece_full(self, n: int, j_cap: int) -> GradedSubspace:
        """Same subspace from the constraints phi^n(I_j) . x <= I_{j+n}, j <= cap."""
        rows = []
        for j in range(1, j_cap + 1):
            for f in self.I.piece(j).basis_polys():
                rows.append(self._quotient_row(self.ring.twisted(n, f), n))
        vecs = kernel(rows, basis_dim(self.ring.nvars, n), self.field)
        return span(vecs, self.ring.ambient(n), self.field)

    def t_dim(self, n: int) -> int:
        return self.idealizer_piece(n).dim

    # -- structure of T ----------------------------------------------------

    def check_T_equals_k_plus_I(self, max_degree: int) -> dict:
        """Compare T_n with I_n for 1 <= n <= N after an orbit distinctness check."""
        window = orbit_points(self.ring.phi, self.point, max_degree)
        distinct, collision = distinct_window(window)
        dims = [self.t_dim(n) for n in range(max_degree + 1)]
        ideal_dims = [self.I.dim(n) for n in range(max_degree + 1)]
        first_failure = None
        agree = dims[0] == 1
        if dims[0] != 1:
            first_failure = 0
        for n in range(1, max_degree + 1):
            if self.idealizer_piece(n) != self.I.piece(n):
                agree = False
                if first_failure is None:
                    first_failure = n
                break
        return {
            "orbit_distinct": distinct,
            "collision": collision,
            "dims": dims,
            "ideal_dims": ideal_dims,
            "agrees": agree,
            "first_failure": first_failure,
        }

    def s_mod_t_dims(self, max_degree: int) -> list[int]:
        return [
            basis_dim(self.ring.nvars, n) - self.t_dim(n)
            for n in range(max_degree + 1)
        ]

    # -- the two-sided ideal IS --------------------------------------------

    def is_piece(self, m: int) -> GradedSubspace:
        """(IS)_m = sum over i of phi^i(I_{m-i}) . U_i."""
        cached = self._is_pieces.get(m)
        if cached is not None:
            return cached

        def gens():
            for i in range(m):
                for f in self.I.twisted_piece(i, m - i).basis_polys():
                    for mono in monomial_basis(self.ring.d, i):
                        yield f * HomogPoly.monomial(mono, self.field.one)

        piece = span_polys(gens(), self.ring.ambient(m), self.field)
        self._is_pieces[m] = piece
        return piece

    def s_mod_is_dims(self, max_degree: int) -> list[int]:
        return [
            basis_dim(self.ring.nvars, m) - self.is_piece(m).dim
            for m in range(max_degree + 1)
        ]

    # -- generators of T as an algebra ---------------------------------------

    def t_product(self, a: int, b: int) -> GradedSubspace:
        """Span of T_a . T_b inside U_{a+b}."""
        return self.ring.product_piece(self.idealizer_piece(a), self.idealizer_piece(b))

    def decomposable_piece(self, n: int) -> GradedSubspace:
        """Degree-n span of products of positive-degree elements of T."""
        def gens():
            for a in range(1, n):
                left = self.idealizer_piece(a)
                right = self.idealizer_piece(n - a)
                for f in left.basis_polys():
                    tf = self.ring.twisted(n - a, f)
                    for g in right.basis_polys():
                        yield tf * g

        return span_polys(gens(), self.ring.ambient(n), self.field)

    def algebra_generator_degrees(self, max_degree: int) -> list[tuple[int, int]]:
        """Minimal generator counts (n, dim T_n / (T_+^2)_n) for 1 <= n <= N."""
        out = []
        for n in range(1, max_degree + 1):
            if n == 1:
                out.append((1, self.t_dim(1)))
                continue
            out.append((n, self.t_dim(n) - self.decomposable_piece(n).dim))
        return out

    # -- Veronese subrings ----------------------------------------------------

    def veronese_gen_in_degree_one(self, n: int) -> dict:
        """Does T_n . T_n fill T_{2n}?  The n-th Veronese fails this for twists."""
        product = self.t_product(n, n)
        target = self.idealizer_piece(2 * n)
        return {
            "n": n,
            "product_dim": product.dim,
            "target_dim": target.dim,
            "generated": product == target,
        }

    def _eval_vector(self, degree: int):
        return _eval_vector_cached(self.point.coords, self.field, self.ring.d, degree)

    def _veronese_constraint_rows(self, n: int, m: int, j_cap: int, route: str):
        """Rows of the system cutting out R'_m inside U_{nm}.

        One row per basis element b of I_{nj}, j <= cap: the coordinate of
        phi^{nm}(b) . x in the one-dimensional quotient U_{nj+nm}/I_{nj+nm}.
        """
        source = monomial_basis(self.ring.d, n * m)
        rows = []
        for j in range(1, j_cap + 1):
            for b in self.I.piece(n * j).basis_polys():
                g = self.ring.twisted(n * m, b)
                if route == "residual":
                    rows.append(self._quotient_row(g, n * m))
                    continue
                # the quotient functional of a point ideal piece is
                # evaluation at the point, so multiply-then-evaluate
                # computes the same coordinate without a reduction
                values = self._eval_vector(n * j + n * m)
                index = basis_index(self.ring.nvars, n * j + n * m)
                row = []
                for mono in source:
                    acc = self.field.zero
                    for gm, gc in g.terms:
                        acc = acc + gc * values[
                            index[tuple(x + y for x, y in zip(gm, mono))]
                        ]
                    row.append(acc)
                rows.append(row)
        return rows

    def veronese_idealizer_piece(
        self, n: int, m: int, j_cap: int, route: str = "eval"
    ) -> GradedSubspace:
        """R'_m: the m-th piece of the idealizer of I^(n) inside S^(n)."""
        if m == 0:
            return span(
                [[self.field.one]], self.ring.ambient(0), self.field
            )
        rows = self._veronese_constraint_rows(n, m, j_cap, route)
        vecs = kernel(rows, basis_dim(self.ring.nvars, n * m), self.field)
        return span(vecs, self.ring.ambient(n * m), self.field)

    def veronese_idealizer_compare(
        self, n: int, max_piece: int, j_cap: int | None = None
    ) -> dict:
        """Compare (T^(n))_m with R'_m for 0 <= m <= N.

        Agreement from some degree on is the finite witness that the two
        rings differ in at most finitely many degrees; D is the least
        such degree inside the window, or None if the top degree differs.
        """
        if j_cap is None:
            j_cap = -(-max_piece // 2) + 1
        agree = []
        dims = []
        for m in range(max_piece + 1):
            t_piece = self.idealizer_piece(n * m)
            r_piece = self.veronese_idealizer_piece(n, m, j_cap)
            agree.append(t_piece == r_piece)
            dims.append((t_piece.dim, r_piece.dim))
        last_false = None
        for m in range(max_piece + 1):
            if not agree[m]:
                last_false = m
        least = 0 if last_false is None else last_false + 1
        if least > max_piece:
            least = None
        return {
            "n": n,
            "max_piece": max_piece,
            "j_cap": j_cap,
            "agree": agree,
            "dims": dims,
            "least_agreement_degree": least,
        }


@lru_cache(maxsize=None)
def _eval_vector_cached(coords, field, d: int, degree: int):
    values = []
    for mono in monomial_basis(d, degree):
        v = field.one
        for x, e in zip(coords, mono):
            if e:
                v = v * x**e
        values.append(v)
    return tuple(values)
