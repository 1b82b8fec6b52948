import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import monic_series, series
from qschwarz.errors import DivisionByZeroSeries, LogTimesLog, NonPositiveLead, NotMonic, ZeroSeries
from qschwarz.series import (
    LogSeries,
    PuiseuxSeries,
    _int_convolve,
    compose_rational,
    d_op,
    div,
    format_series,
    monicize,
    parse_rat,
    parse_series_text,
    pow_rat,
    q,
    series_from_dict,
    series_to_dict,
)

P = PuiseuxSeries


def mono(e, prec=10, c=1):
    return P.monomial(e, prec, c)


# -- examples -----------------------------------------------------------------

def test_add_cancels():
    x = q(10)
    assert (1 - x) + x == 1


def test_add_common_ramification():
    s = mono(F(1, 2)) + mono(F(1, 3))
    assert s.ram == 6
    assert [e for e, _ in s.terms()] == [F(2, 6), F(3, 6)]


def test_add_zero_identity():
    s = P(3, -1, [2, 0, F(1, 2), 5])
    assert s + P.zero(s.known_to) == s
    assert (s + 0).coeffs == s.coeffs


def test_mul_examples():
    x = q(10)
    assert (1 + x) * (1 - x) == 1 - x * x
    assert list(((1 + x) * (1 - x)).terms()) == [(0, 1), (2, -1)]
    assert mono(F(1, 5)) * mono(F(1, 5)) == mono(F(2, 5))


def test_log_times_log_rejected():
    L = LogSeries(P.constant(1, 5), P.zero(5))
    with pytest.raises(LogTimesLog):
        L * L


def test_div_examples():
    x = q(8)
    assert list((1 / (1 - x)).terms()) == [(F(n), 1) for n in range(8)]
    assert mono(F(3, 5)) / mono(F(1, 5)) == mono(F(2, 5))
    quotient = (1 - x ** 2) / (1 - x)
    assert list(quotient.terms()) == [(0, 1), (1, 1)]


def test_div_by_zero():
    with pytest.raises(DivisionByZeroSeries):
        div(q(5), P.zero(5))


def test_d_op_examples():
    assert d_op(mono(F(1, 5))) == mono(F(1, 5), c=F(1, 5))
    assert d_op(P.constant(7, 5)).is_zero
    y = mono(F(1, 2), 5)
    dy = d_op(LogSeries(y, P.zero(5)))
    assert dy.log_part == y * F(1, 2)
    assert dy.pure_part == y


def test_monicize_examples():
    c, e, m = monicize(P.from_terms({F(1, 5): F(1, 5), F(6, 5): F(2, 5)}, 4))
    assert (c, e) == (F(1, 5), F(1, 5))
    assert list(m.terms()) == [(0, 1), (1, 2)]
    c, e, m = monicize(P.constant(7, 3))
    assert (c, e) == (7, 0) and list(m.terms()) == [(0, 1)]
    c, e, m = monicize(P.from_terms({2: -1, 3: 1}, 10))
    assert (c, e) == (-1, 2) and list(m.terms()) == [(0, 1), (1, -1)]
    with pytest.raises(ZeroSeries):
        monicize(P.zero(3))


def test_pow_rat_examples():
    x = q(10)
    assert pow_rat(1 - x, 2) == 1 - 2 * x + x * x
    root = pow_rat(1 - x, F(1, 2))
    assert root * root == 1 - x
    assert pow_rat(1 - x, 0) == 1
    with pytest.raises(NotMonic):
        pow_rat(2 - x, F(1, 2))


def test_compose_rational_examples():
    assert compose_rational([0, 0, 1], [1], mono(F(1, 5))) == mono(F(2, 5))
    x = q(10)
    assert list(compose_rational([0, 1], [1, -1], x).terms()) == [(F(n), 1) for n in range(1, 10)]
    with pytest.raises(NonPositiveLead):
        compose_rational([0, 1], [1], P.constant(1, 5))


def test_truncation_bookkeeping():
    s = P(1, 1, [1, 2, 3])      # known to q^4
    t = P(1, 0, [1, 1, 1, 1, 1])  # known to q^5
    assert (s * t).known_to == min(4 + 0, 5 + 1)
    assert (s + t).known_to == 4
    assert (s / t).known_to == 4


def test_parse_rat_rejects_decimals():
    assert parse_rat("-3/6") == F(-1, 2)
    with pytest.raises(ValueError):
        parse_rat("0.5")


# -- kernels against naive oracles ---------------------------------------------

def naive_convolve(a, b, n):
    out = [0] * n
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            if i + j < n:
                out[i + j] += x * y
    return out


@pytest.mark.parametrize("size", [1, 5, 13, 40, 200])
def test_int_convolve_matches_naive(size):
    rng = random.Random(size)
    for _ in range(5):
        bits = rng.choice([3, 60, 300])
        a = [rng.randint(-2 ** bits, 2 ** bits) for _ in range(size)]
        b = [rng.randint(-2 ** bits, 2 ** bits) for _ in range(rng.randint(1, size))]
        n = rng.randint(1, 2 * size)
        assert _int_convolve(a, b, n) == naive_convolve(a, b, n)


def test_mul_matches_dictionary_product():
    rng = random.Random(7)
    for _ in range(20):
        s = P(rng.choice([1, 5, 24]), rng.randint(-3, 3),
              [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 60))])
        t = P(rng.choice([1, 2, 5]), rng.randint(-3, 3),
              [F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(rng.randint(1, 60))])
        if s.is_zero or t.is_zero:
            continue
        prod = s * t
        bound = prod.known_to
        expected = {}
        for e1, c1 in s.terms():
            for e2, c2 in t.terms():
                if e1 + e2 < bound:
                    expected[e1 + e2] = expected.get(e1 + e2, 0) + c1 * c2
        assert dict(prod.terms()) == {e: c for e, c in expected.items() if c}


# -- properties -----------------------------------------------------------------

@given(series(), series(), series())
def test_ring_axioms(s, t, u):
    assert (s + t) + u == s + (t + u)
    assert s + t == t + s
    assert (s * t) * u == s * (t * u)
    assert s * t == t * s
    assert s * (t + u) == s * t + s * u


@given(series(), series())
def test_leibniz(s, t):
    assert (s * t).d() == s.d() * t + s * t.d()


@given(series(), series(nonzero_lead=True))
def test_div_inverts_mul(s, t):
    assert (s / t) * t == s


@given(monic_series(), st.builds(F, st.integers(-5, 5), st.integers(1, 4)),
       st.builds(F, st.integers(-5, 5), st.integers(1, 4)))
def test_pow_rat_additive(m, a, b):
    assert pow_rat(m, a) * pow_rat(m, b) == pow_rat(m, a + b)


@given(monic_series(), st.integers(1, 6))
def test_pow_rat_integer_is_repeated_mul(m, n):
    prod = m
    for _ in range(n - 1):
        prod = prod * m
    assert pow_rat(m, n) == prod


@given(series(min_len=0))
def test_normalize_idempotent(s):
    once = s.normalize()
    twice = once.normalize()
    assert (once.ram, once.lead, once.coeffs) == (twice.ram, twice.lead, twice.coeffs)


@given(series(min_len=0))
def test_rescaled_equality(s):
    wide = P(s.ram * 4, s.lead * 4, s.rescaled(s.ram * 4))
    assert wide == s
    assert wide.known_to == s.known_to


@given(series(min_len=0))
def test_json_round_trip_bit_exact(s):
    d = series_to_dict(s)
    text = json.dumps(d)
    back = series_from_dict(json.loads(text))
    assert (back.ram, back.lead, back.coeffs) == (s.ram, s.lead, s.coeffs)
    assert json.dumps(series_to_dict(back)) == text


@given(series(min_len=0), series(min_len=0))
def test_log_series_json_round_trip(a, b):
    s = LogSeries(a, b)
    back = series_from_dict(json.loads(json.dumps(series_to_dict(s))))
    assert series_to_dict(back) == series_to_dict(s)


@given(series(min_len=0))
def test_text_round_trip(s):
    back = parse_series_text(format_series(s))
    assert (back.ram, back.lead, back.coeffs) == (s.ram, s.lead, s.coeffs)


@settings(max_examples=50)
@given(series(), series(), series())
def test_log_series_leibniz(a, b, c):
    s = LogSeries(a, b)
    assert (s * c).d() == s.d() * c + s * c.d()
