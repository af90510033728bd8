from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shuffle_duality.exactalg import (ONE, V, V_MINUS_VINV, VINV, LaurentV, RatV, divides_power,
                                      is_laurent_polynomial, parse_rational, qfact, qint)

from .conftest import laurents, nonzero_laurents, ratvs


def test_qint_small_values():
    assert qint(0) == LaurentV()
    assert qint(1) == ONE
    assert qint(2) == V + VINV


def test_qfact_small_values():
    assert qfact(0) == ONE
    assert qfact(2) == V + VINV
    assert qfact(3) == (V + VINV) * LaurentV({2: 1, 0: 1, -2: 1})


def test_negative_arguments_rejected():
    with pytest.raises(ValueError):
        qint(-1)
    with pytest.raises(ValueError):
        qfact(-2)


@pytest.mark.parametrize("k", range(21))
def test_qint_times_v_minus_vinv(k):
    assert qint(k) * V_MINUS_VINV == LaurentV({k: 1}) - LaurentV({-k: 1})


@pytest.mark.parametrize("k", range(12))
def test_qint_bar_invariant(k):
    assert qint(k).bar() == qint(k)


@pytest.mark.parametrize("k", range(7))
@pytest.mark.parametrize("m", range(7))
def test_divides_power_of_qfact_multiples(k, m):
    assert divides_power(qfact(k) * V_MINUS_VINV ** m, m)


def test_divides_power_cases():
    assert divides_power(ONE - LaurentV({2: 1}), 1)
    assert divides_power(LaurentV({3: 7, -1: 2}), 0)
    assert not divides_power(V, 1)
    assert not divides_power(V_MINUS_VINV, 2)


def test_laurent_polynomial_detection():
    assert is_laurent_polynomial(RatV(LaurentV({2: 1, 0: -1}), LaurentV({1: 1, 0: -1})))
    assert not is_laurent_polynomial(RatV(ONE, V_MINUS_VINV))
    assert is_laurent_polynomial(RatV.const(0))
    assert is_laurent_polynomial(RatV(ONE, LaurentV({3: 2})))


def test_ratv_canonical_form():
    x = RatV(LaurentV({2: 1, 0: -1}), LaurentV({1: 2, 0: -2}))
    assert x == RatV(LaurentV({1: Fraction(1, 2), 0: Fraction(1, 2)}))
    assert x.den == ONE
    y = RatV(ONE, V_MINUS_VINV)
    assert y.den == LaurentV({2: 1, 0: -1})
    assert y.num == V


def test_laurent_exact_div_and_divmod():
    a = (V + 1) * (V - 1)
    assert a.exact_div(V - 1) == V + 1
    assert (V + 2).exact_div(V - 1) is None


def test_json_round_trip():
    x = RatV(LaurentV({3: Fraction(-2, 3), -1: 5}), LaurentV({2: 1, 0: 3}))
    assert RatV.from_json(x.to_json()) == x
    assert parse_rational("-7/4") == Fraction(-7, 4)


@given(laurents(), laurents(), laurents())
def test_laurent_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == LaurentV()


@given(ratvs(), ratvs(), ratvs())
def test_ratv_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * a.inverse() == RatV.const(1)


@given(ratvs())
def test_canon_idempotent(x):
    assert x.canon() == x
    assert x.canon().canon().num == x.num
    assert hash(x.canon()) == hash(x)


@given(nonzero_laurents(), st.integers(0, 3))
def test_divides_power_detects_multiplication(x, k):
    assert divides_power(x * V_MINUS_VINV ** k, k)
