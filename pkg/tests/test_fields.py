"""Exact field arithmetic: rationals and prime fields."""

from fractions import Fraction

import pytest

from idealizer.fields import QQ, PrimeField, Residue, field_from_name, is_prime


def test_is_prime_small_values():
    primes = [n for n in range(2, 60) if is_prime(n)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
    assert not is_prime(0)
    assert not is_prime(1)
    assert not is_prime(-7)


def test_rational_field_basics():
    assert QQ.char == 0
    assert QQ.zero == Fraction(0)
    assert QQ.one == Fraction(1)
    assert QQ.from_int(-3) == Fraction(-3)
    assert QQ.parse("2/3") == Fraction(2, 3)
    assert QQ.render(Fraction(-5, 2)) == "-5/2"
    assert QQ.render(Fraction(4)) == "4"


def test_prime_field_arithmetic():
    F = PrimeField(7)
    a = F.from_int(3)
    b = F.from_int(5)
    assert (a + b) == F.from_int(1)
    assert (a * b) == F.from_int(1)
    assert (a - b) == F.from_int(5)
    assert (b / a) == F.from_int(4)  # 5 * 3^-1 = 5 * 5 = 25 = 4
    assert (-a) == F.from_int(4)
    assert a**6 == F.one
    assert bool(F.zero) is False
    assert bool(a) is True


def test_prime_field_rejects_composite_modulus():
    with pytest.raises(ValueError):
        PrimeField(6)


def test_prime_field_from_fraction():
    F = PrimeField(11)
    assert F.from_fraction(Fraction(1, 2)) == F.from_int(6)
    with pytest.raises(ZeroDivisionError):
        F.from_fraction(Fraction(1, 11))


def test_residue_modulus_mismatch():
    a = Residue(1, 7)
    b = Residue(1, 11)
    with pytest.raises(ValueError):
        a + b


def test_field_from_name():
    assert field_from_name("rational") is QQ
    F = field_from_name("prime:10007")
    assert F.char == 10007
    with pytest.raises(ValueError):
        field_from_name("prime:10")
    with pytest.raises(ValueError):
        field_from_name("complex")
