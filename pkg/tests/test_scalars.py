from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crossbial.scalars import (
    Cyclo,
    ConductorMixError,
    PrimitivityError,
    ScalarParseError,
    cyclotomic_polynomial,
    euler_phi,
    parse_rational,
    q_binomial,
    q_integer,
    root_of_unity,
    scalar_from_json,
    scalar_to_json,
)

F = Fraction


# -- cyclotomic polynomials -------------------------------------------------

def test_cyclotomic_polynomials_small():
    assert cyclotomic_polynomial(1) == (F(-1), F(1))
    assert cyclotomic_polynomial(2) == (F(1), F(1))
    assert cyclotomic_polynomial(3) == (F(1), F(1), F(1))
    assert cyclotomic_polynomial(4) == (F(1), F(0), F(1))
    assert cyclotomic_polynomial(6) == (F(1), F(-1), F(1))
    assert cyclotomic_polynomial(12) == (F(1), F(0), F(-1), F(0), F(1))


def test_euler_phi():
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


# -- roots of unity ---------------------------------------------------------

def test_root_of_unity_collapses_to_rational():
    assert root_of_unity(1, 0) == F(1)
    assert root_of_unity(2, 1) == F(-1)
    assert isinstance(root_of_unity(2, 1), Fraction)


def test_root_of_unity_defining_relations():
    i = root_of_unity(4, 1)
    assert i * i == F(-1)
    w = root_of_unity(3, 1)
    assert w * w + w + 1 == 0


def test_root_of_unity_exact_order():
    for n in [3, 4, 5, 6, 8, 12]:
        for k in range(1, n):
            if euler_phi(n) and __import__("math").gcd(k, n) == 1:
                z = root_of_unity(n, k)
                acc = z
                for m in range(1, n):
                    if m < n:
                        assert not (acc == 1 and m < n) or m == n
                    acc = acc * z
                # z^n = 1 and no smaller power is 1
                power = 1
                for m in range(1, n + 1):
                    power = power * z
                    if m < n:
                        assert power != 1
                assert power == 1


def test_root_of_unity_primitivity_error():
    with pytest.raises(PrimitivityError):
        root_of_unity(4, 2)
    with pytest.raises(PrimitivityError):
        root_of_unity(6, 3)


def test_high_power_reduces():
    z = root_of_unity(12, 11)
    assert z ** 12 == 1
    assert z * root_of_unity(12, 1) == 1


# -- field arithmetic -------------------------------------------------------

def test_conductor_mixing_is_an_error():
    a = root_of_unity(3, 1)
    b = root_of_unity(4, 1)
    with pytest.raises(ConductorMixError):
        a + b
    with pytest.raises(ConductorMixError):
        a * b


def test_rationals_embed_freely():
    z = root_of_unity(3, 1)
    assert (z + F(1, 2)) - F(1, 2) == z
    assert 2 * z / 2 == z
    assert (1 - z) + z == 1


def test_inverse():
    z = root_of_unity(5, 2)
    assert z * z.inverse() == 1
    x = 1 + z + z * z
    assert x * x.inverse() == 1
    assert (1 / x) * x == 1


def test_cyclo_sum_collapsing():
    z = root_of_unity(3, 1)
    # 1 + z + z^2 = 0, so z + z^2 = -1 must come out as a Fraction
    s = z + z * z
    assert isinstance(s, Fraction)
    assert s == F(-1)


_rat = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def _cyclos(n):
    d = euler_phi(n)
    return st.lists(_rat, min_size=d, max_size=d).map(lambda cs: Cyclo.make(n, cs))


@settings(max_examples=60, deadline=None)
@given(_cyclos(5), _cyclos(5), _cyclos(5))
def test_field_axioms_sampled(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    if a != 0 and not (isinstance(a, Fraction) and a == 0):
        if isinstance(a, Cyclo):
            assert a * a.inverse() == 1
        else:
            assert a * (1 / a) == 1


# -- q-combinatorics --------------------------------------------------------

def test_q_binomial_edges():
    q = root_of_unity(5, 1)
    assert q_binomial(7, 0, q) == 1
    assert q_binomial(7, 7, q) == 1
    with pytest.raises(ValueError):
        q_binomial(2, 3, q)


def test_q_binomial_at_minus_one():
    # (2 1)_{-1} = (2)_{-1} = 1 + (-1) = 0
    assert q_binomial(2, 1, F(-1)) == 0


def test_q_binomial_matches_q_integer():
    q = root_of_unity(7, 1)
    assert q_binomial(3, 1, q) == q_integer(3, q)
    assert q_binomial(3, 1, q) == 1 + q + q * q


def test_q_binomial_at_one_is_binomial():
    from math import comb
    for m in range(7):
        for l in range(m + 1):
            assert q_binomial(m, l, F(1)) == comb(m, l)


def test_q_binomial_symmetric():
    q = root_of_unity(5, 1)
    for m in range(6):
        for l in range(m + 1):
            assert q_binomial(m, l, q) == q_binomial(m, m - l, q)


@settings(max_examples=40, deadline=None)
@given(st.integers(min_value=0, max_value=8), st.integers(min_value=0, max_value=8))
def test_q_pascal_recurrence(m, l):
    q = root_of_unity(4, 1)
    if 1 <= l < m:
        lhs = q_binomial(m, l, q)
        rhs = q_binomial(m - 1, l - 1, q) + (q ** l) * q_binomial(m - 1, l, q)
        assert lhs == rhs


def test_truncation_vanishing_at_root_of_unity():
    # (m l)_q = 0 whenever the binomial straddles the order of q
    q = root_of_unity(3, 1)
    assert q_binomial(3, 1, q) == 0
    assert q_binomial(3, 2, q) == 0
    q4 = root_of_unity(4, 1)
    assert q_binomial(4, 2, q4) == 0


# -- JSON -------------------------------------------------------------------

def test_rational_json_roundtrip():
    for s in [F(0), F(3), F(-7, 2), F(22, 7)]:
        assert scalar_from_json(scalar_to_json(s)) == s


def test_rational_parse_accepts_plain_integers():
    assert parse_rational("5") == F(5)
    assert parse_rational("-5/10") == F(-1, 2)


def test_rational_parse_rejects_bad_input():
    with pytest.raises(ScalarParseError):
        parse_rational("1/0")
    with pytest.raises(ScalarParseError):
        parse_rational("a/b")
    with pytest.raises(ScalarParseError):
        parse_rational("1/2/3")


def test_cyclo_json_roundtrip():
    z = root_of_unity(12, 7)
    enc = scalar_to_json(z)
    assert enc["n"] == 12
    assert len(enc["coeffs"]) == euler_phi(12)
    assert scalar_from_json(enc) == z


def test_cyclo_json_normalizes_rational_values():
    # a dict encoding a rational value parses to a Fraction
    v = scalar_from_json({"n": 3, "coeffs": ["2/1", "0/1"]})
    assert v == F(2)
    assert isinstance(v, Fraction)
