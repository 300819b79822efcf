from __future__ import annotations

import cmath
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from symrigid.cyclotomic import (
    CycloRat,
    conjugate,
    cyclotomic_polynomial,
    embed_point,
    exact_rank,
    point_of,
    to_complex_float,
)
from symrigid.errors import InputError

ORDERS = [1, 2, 3, 4, 6, 8, 12]
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def cyclo(draw, order=None):
    M = order or draw(st.sampled_from(ORDERS))
    k = len(cyclotomic_polynomial(M)) - 1
    return CycloRat(M, draw(st.lists(fractions, min_size=k, max_size=k)))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_zeta4_arithmetic():
    i = CycloRat.zeta(4)
    assert i * i == CycloRat.rational(-1, 4)
    assert (1 + i) + (1 - i) == 2
    assert 1 / i == -i
    assert conjugate(i) == -i
    assert conjugate(CycloRat.rational(Fraction(3, 2), 4)) == Fraction(3, 2)


def test_embed_and_floats():
    assert embed_point(1, 1, 4) == 1 + CycloRat.zeta(4)
    assert embed_point(0, 0, 4).is_zero()
    assert embed_point(1, -1, 4) == 1 - CycloRat.zeta(4)
    assert point_of(embed_point(Fraction(1, 3), -2, 12)) == (Fraction(1, 3), Fraction(-2))
    assert to_complex_float(CycloRat.zeta(4)) == pytest.approx(1j)
    assert to_complex_float(1 - CycloRat.zeta(4)) == pytest.approx(1 - 1j)
    assert to_complex_float(CycloRat.zeta(3)) == pytest.approx(complex(-0.5, 0.8660254037844386))
    with pytest.raises(InputError):
        embed_point(1, 1, 3)


def test_order_cap():
    with pytest.raises(InputError):
        CycloRat.zeta(25)


def test_mixed_orders_lift_and_hash():
    a = CycloRat.zeta(4)
    b = CycloRat.zeta(3)
    c = a * b
    assert c.order == 12
    assert c == CycloRat.zeta(12, 7)
    assert hash(CycloRat.zeta(2)) == hash(CycloRat.rational(-1, 12))
    assert CycloRat.zeta(6, 3) == -1


def test_exact_rank_small():
    i = CycloRat.zeta(4)
    assert exact_rank([[1, i], [i, -1]]) == 1
    assert exact_rank([[1, i], [i, 1]]) == 2
    assert exact_rank([]) == 0


@given(cyclo(), cyclo(), cyclo())
def test_field_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == 0
    if not a.is_zero():
        assert a * a.inverse() == 1
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), abs_tol=1e-9)


@given(cyclo(), cyclo())
def test_conjugate_multiplicative(a, b):
    assert conjugate(a * b) == conjugate(a) * conjugate(b)
    assert cmath.isclose(complex(conjugate(a)), complex(a).conjugate(), abs_tol=1e-9)


@given(cyclo(order=4), st.sampled_from([4, 8, 12, 24]))
def test_lift_preserves_value_and_hash(a, M):
    b = a.lift(M)
    assert b == a
    assert hash(b) == hash(a)
