"""Graded automorphisms of the polynomial ring, and projective points.

An automorphism is an invertible (d+1) x (d+1) matrix A acting on the
ring by the linear substitution x_i -> sum_j A[j][i] x_j.  With that
convention apply(A, apply(B, f)) = apply(A B, f), and evaluation
satisfies

    apply(A, f)(P) = f(point_image(A, P)),   point_image(A, P) = A^T P.

The diagonal family diag(1, p_1, ..., p_d) (top-left entry normalized
to 1) is the case of interest; it gets a fast path in apply().
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .fields import Scalar
from .linalg import invert_matrix, mat_mul, mat_vec
from .poly import HomogPoly, Mono

__all__ = ["AutoMap", "ProjPoint", "point_image", "pullback_point"]


@dataclass(frozen=True)
class AutoMap:
    """An invertible linear substitution, with its inverse precomputed."""

    matrix: tuple[tuple[Scalar, ...], ...]
    inverse: tuple[tuple[Scalar, ...], ...]
    field: object
    diagonal: tuple[Scalar, ...] | None = None

    @staticmethod
    def from_matrix(rows: Sequence[Sequence[Scalar]], field) -> "AutoMap":
        mat = tuple(tuple(r) for r in rows)
        n = len(mat)
        if any(len(r) != n for r in mat):
            raise ValueError("automorphism matrix must be square")
        inv = invert_matrix(mat, field)
        if inv is None:
            raise ValueError("automorphism matrix is singular")
        diag = None
        if all(not mat[i][j] for i in range(n) for j in range(n) if i != j):
            diag = tuple(mat[i][i] for i in range(n))
        return AutoMap(mat, tuple(tuple(r) for r in inv), field, diag)

    @staticmethod
    def diagonal_family(multipliers: Sequence[Scalar], field) -> "AutoMap":
        """diag(1, p_1, ..., p_d): the normalized multiplier family."""
        diag = (field.one,) + tuple(multipliers)
        if any(not x for x in diag):
            raise ValueError("multipliers must be nonzero")
        n = len(diag)
        zero = field.zero
        mat = tuple(
            tuple(diag[i] if i == j else zero for j in range(n)) for i in range(n)
        )
        inv = tuple(
            tuple(field.one / diag[i] if i == j else zero for j in range(n))
            for i in range(n)
        )
        return AutoMap(mat, inv, field, diag)

    @staticmethod
    def identity(nvars: int, field) -> "AutoMap":
        return AutoMap.diagonal_family([field.one] * (nvars - 1), field)

    @property
    def nvars(self) -> int:
        return len(self.matrix)

    def inv(self) -> "AutoMap":
        diag = None
        if self.diagonal is not None:
            diag = tuple(self.field.one / x for x in self.diagonal)
        return AutoMap(self.inverse, self.matrix, self.field, diag)

    def compose(self, other: "AutoMap") -> "AutoMap":
        """The map f -> self(other(f)), whose matrix is self.matrix @ other.matrix."""
        mat = mat_mul(self.matrix, other.matrix, self.field)
        inv = mat_mul(other.inverse, self.inverse, self.field)
        diag = None
        if self.diagonal is not None and other.diagonal is not None:
            diag = tuple(a * b for a, b in zip(self.diagonal, other.diagonal))
        return AutoMap(
            tuple(tuple(r) for r in mat), tuple(tuple(r) for r in inv), self.field, diag
        )

    def is_identity(self) -> bool:
        one, zero = self.field.one, self.field.zero
        n = self.nvars
        return all(
            self.matrix[i][j] == (one if i == j else zero)
            for i in range(n)
            for j in range(n)
        )

    def apply(self, f: HomogPoly) -> HomogPoly:
        """The substitution x_i -> sum_j matrix[j][i] x_j applied to f."""
        if f.nvars != self.nvars:
            raise ValueError("arity mismatch")
        if f.is_zero():
            return f
        if self.diagonal is not None:
            out: dict[Mono, Scalar] = {}
            for m, c in f.terms:
                v = c
                for x, e in zip(self.diagonal, m):
                    if e:
                        v = v * x**e
                out[m] = v
            return HomogPoly.from_dict(f.nvars, f.degree, out)
        images = [
            HomogPoly(
                f.nvars,
                1,
                tuple(
                    (tuple(1 if k == j else 0 for k in range(f.nvars)), self.matrix[j][i])
                    for j in range(f.nvars)
                    if self.matrix[j][i]
                ),
            )
            for i in range(f.nvars)
        ]
        power_cache: dict[tuple[int, int], HomogPoly] = {}

        def var_power(i: int, e: int) -> HomogPoly:
            key = (i, e)
            got = power_cache.get(key)
            if got is None:
                got = images[i] if e == 1 else var_power(i, e - 1) * images[i]
                power_cache[key] = got
            return got

        total = HomogPoly.zero(f.nvars, f.degree)
        for m, c in f.terms:
            term = None
            for i, e in enumerate(m):
                if e:
                    p = var_power(i, e)
                    term = p if term is None else term * p
            assert term is not None
            total = total + term.scale(c)
        return total


@dataclass(frozen=True)
class ProjPoint:
    """A projective point stored by its canonical coordinate vector.

    Over the rationals the canonical vector is integer, primitive, with
    positive first nonzero entry; over a prime field the first nonzero
    entry is scaled to 1.
    """

    coords: tuple[Scalar, ...]

    @staticmethod
    def make(coords: Sequence[Scalar], field) -> "ProjPoint":
        if not any(coords):
            raise ValueError("projective point needs a nonzero coordinate")
        if field.char == 0:
            denom = 1
            for x in coords:
                denom = denom * x.denominator // gcd(denom, x.denominator)
            ints = [int(x * denom) for x in coords]
            g = 0
            for v in ints:
                g = gcd(g, v)
            ints = [v // g for v in ints]
            lead = next(v for v in ints if v)
            if lead < 0:
                ints = [-v for v in ints]
            return ProjPoint(tuple(field.from_int(v) for v in ints))
        lead = next(x for x in coords if x)
        inv = field.one / lead
        return ProjPoint(tuple(x * inv for x in coords))

    @property
    def nvars(self) -> int:
        return len(self.coords)

    def render(self, field) -> str:
        return "(" + " : ".join(field.render(x) for x in self.coords) + ")"


def point_image(auto: AutoMap, pt: ProjPoint) -> ProjPoint:
    """The point Q with apply(A, f)(P) = f(Q): coordinates A^T P."""
    n = auto.nvars
    cols = [[auto.matrix[j][i] for j in range(n)] for i in range(n)]
    return ProjPoint.make(mat_vec(cols, pt.coords, auto.field), auto.field)


def pullback_point(auto: AutoMap, pt: ProjPoint) -> ProjPoint:
    """The point P' with f(pt) = apply(A, f)(P'); coordinates (A^-1)^T pt."""
    return point_image(auto.inv(), pt)


def evaluate_at(f: HomogPoly, pt: ProjPoint, field) -> Scalar:
    """Value of f at the canonical representative of pt.

    The value depends on the representative; its vanishing does not.
    """
    return f.evaluate(pt.coords, field)
