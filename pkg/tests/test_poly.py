"""Sparse homogeneous polynomials over an exact field."""

from fractions import Fraction

import pytest

from idealizer.automorphism import AutoMap, ProjPoint, evaluate_at, point_image, pullback_point
from idealizer.fields import QQ, PrimeField
from idealizer.poly import (
    HomogPoly,
    basis_dim,
    basis_index,
    format_poly,
    mono_degree,
    mono_div,
    mono_divides,
    mono_mul,
    monomials,
    parse_poly,
    poly_to_vector,
    vector_to_poly,
)


def test_monomial_helpers():
    assert mono_degree((2, 0, 1)) == 3
    assert mono_mul((1, 0), (0, 2)) == (1, 2)
    assert mono_divides((1, 0), (1, 2))
    assert not mono_divides((2, 0), (1, 2))
    assert mono_div((1, 2), (1, 0)) == (0, 2)


def test_monomials_order_and_count():
    ms = monomials(3, 2)
    # reverse-lex listing, x0^2 first
    assert ms[0] == (2, 0, 0)
    assert len(ms) == basis_dim(3, 2) == 6
    idx = basis_index(3, 2)
    assert sorted(idx.values()) == list(range(6))
    assert all(mono_degree(m) == 2 for m in ms)


def test_basis_dim_binomial():
    # dim k[x0..x2]_n = C(n+2, 2)
    assert [basis_dim(3, n) for n in range(6)] == [1, 3, 6, 10, 15, 21]


def test_poly_arithmetic():
    x0 = HomogPoly.variable(3, 0, QQ)
    x1 = HomogPoly.variable(3, 1, QQ)
    f = x0 + x1.scale(QQ.from_int(2))
    g = x0 - x1
    assert (f * g).coeff((1, 1, 0), QQ) == Fraction(1)
    assert (f + g).coeff((1, 0, 0), QQ) == Fraction(2)
    assert (f - f).is_zero()
    assert (-f).coeff((0, 1, 0), QQ) == Fraction(-2)


def test_poly_degree_mismatch_rejected():
    x0 = HomogPoly.variable(3, 0, QQ)
    sq = x0 * x0
    with pytest.raises(ValueError):
        x0 + sq


def test_poly_vector_round_trip():
    f = parse_poly("x0^2 - 3*x1*x2", 3, QQ)
    vec = poly_to_vector(f, QQ)
    assert vector_to_poly(vec, 3, 2) == f
    assert len(vec) == basis_dim(3, 2)


def test_parse_format_round_trip():
    for text in ["x0", "x0 + x1", "2*x0^2 - x1*x2", "-x0 + 1/2*x2", "x0^3 - 2/3*x0*x1^2 + x2^3"]:
        f = parse_poly(text, 3, QQ)
        assert parse_poly(format_poly(f, QQ), 3, QQ) == f


def test_parse_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_poly("x0 + x1^2", 3, QQ)  # inhomogeneous
    with pytest.raises(ValueError):
        parse_poly("x5", 3, QQ)  # unknown variable
    with pytest.raises(ValueError):
        parse_poly("x0 + ", 3, QQ)


def test_evaluate():
    f = parse_poly("x0^2 - x1*x2", 3, QQ)
    assert f.evaluate([QQ.from_int(2), QQ.from_int(1), QQ.from_int(4)], QQ) == Fraction(0)
    assert f.evaluate([QQ.from_int(1), QQ.from_int(1), QQ.from_int(2)], QQ) == Fraction(-1)


def test_apply_auto_column_convention():
    """x_i maps to the ith column of the matrix read as coefficients."""
    phi = AutoMap.diagonal_family([QQ.from_int(2), QQ.from_int(3)], QQ)
    x1 = HomogPoly.variable(3, 1, QQ)
    assert phi.apply(x1) == x1.scale(QQ.from_int(2))
    f = parse_poly("x1*x2", 3, QQ)
    assert phi.apply(f) == f.scale(QQ.from_int(6))


def test_apply_respects_evaluation_transpose():
    """evaluate(apply(A, f), P) == f(A^T P) for a non-diagonal map."""
    rows = [
        [QQ.from_int(1), QQ.from_int(1), QQ.from_int(0)],
        [QQ.from_int(0), QQ.from_int(1), QQ.from_int(0)],
        [QQ.from_int(0), QQ.from_int(2), QQ.from_int(1)],
    ]
    A = AutoMap.from_matrix(rows, QQ)
    f = parse_poly("x0^2 - x1*x2 + x2^2", 3, QQ)
    P = ProjPoint.make([QQ.from_int(1), QQ.from_int(2), QQ.from_int(3)], QQ)
    lhs = evaluate_at(A.apply(f), P, QQ)
    rhs = evaluate_at(f, point_image(A, P), QQ)
    assert lhs == rhs


def test_pullback_inverts_image():
    phi = AutoMap.diagonal_family([QQ.from_int(2), QQ.from_int(3)], QQ)
    P = ProjPoint.make([QQ.one, QQ.one, QQ.one], QQ)
    assert pullback_point(phi, point_image(phi, P)).coords == P.coords


def test_proj_point_canonical_coords():
    P = ProjPoint.make([Fraction(-1, 2), Fraction(-1), Fraction(-3, 2)], QQ)
    assert P.coords == (Fraction(1), Fraction(2), Fraction(3))
    assert P.render(QQ) == "(1 : 2 : 3)"
    F = PrimeField(7)
    Q = ProjPoint.make([F.from_int(3), F.from_int(5)], F)
    assert Q.coords[0] == F.one


def test_auto_inverse_and_compose():
    phi = AutoMap.diagonal_family([QQ.from_int(2), QQ.from_int(3)], QQ)
    assert phi.compose(phi.inv()).is_identity()
    assert not phi.is_identity()
    assert AutoMap.identity(3, QQ).is_identity()
