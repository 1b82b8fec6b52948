from fractions import Fraction as F

import pytest

from qschwarz.errors import UnknownSeries
from qschwarz.modforms import (
    e2,
    e4,
    eta,
    eta_pow,
    haupt_t,
    legendre5,
    named_series,
    sigma,
    verify_e2_eta,
    verify_ramanujan,
)
from qschwarz.series import PuiseuxSeries


def divisor_sum(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def pentagonal(order):
    """Euler's product from sum_k (-1)^k q^(k(3k-1)/2), k over all integers."""
    c = [0] * (order + 1)
    for k in range(-order, order + 1):
        p = k * (3 * k - 1) // 2
        if 0 <= p <= order:
            c[p] = (-1) ** abs(k)
    return c


def naive_poly_mul(a, b, n):
    out = [0] * n
    for i, x in enumerate(a[:n]):
        for j, y in enumerate(b[: n - i]):
            out[i + j] += x * y
    return out


def test_sigma_examples():
    assert sigma(1, 6) == 12 == 1 + 2 + 3 + 6
    assert sigma(3, 1) == 1
    assert sigma(3, 2) == 9


@pytest.mark.parametrize("k", [0, 1, 3, 5])
def test_sigma_matches_enumeration(k):
    assert all(sigma(k, n) == divisor_sum(k, n) for n in range(1, 300))


def test_e2_e4_leading_coefficients():
    assert list(e2(2).coeffs) == [1, -24, -72]
    assert list(e4(3).coeffs) == [1, 240, 2160, 6720]
    assert e2(5).ram == e4(5).ram == 1


def test_eta_matches_pentagonal_numbers():
    order = 400
    h = eta(order)
    assert h.valuation == F(1, 24)
    assert h.known_to == F(1, 24) + order + 1
    assert [h.coefficient(F(1, 24) + n) for n in range(order + 1)] == pentagonal(order)
    assert [h.coefficient(F(1, 24) + n) for n in range(8)] == [1, -1, -1, 0, 0, 1, 0, 1]


def test_eta_24_is_discriminant():
    order = 12
    base = [1] + [0] * order
    for n in range(1, order + 1):
        factor = [0] * (order + 1)
        factor[0], factor[n] = 1, -1
        base = naive_poly_mul(base, factor, order + 1)
    delta = [1] + [0] * order
    for _ in range(24):
        delta = naive_poly_mul(delta, base, order + 1)
    got = eta_pow(24, order)
    assert got.valuation == 1
    assert [got.coefficient(1 + n) for n in range(order + 1)] == delta
    assert delta[:4] == [1, -24, 252, -1472]


def test_eta_pow_trivial_cases():
    assert eta_pow(0, 10) == 1
    assert eta_pow(2, 30) * eta_pow(-2, 30) == 1
    assert eta_pow(F(12, 5), 30) * eta_pow(F(-2, 5), 30) == eta_pow(2, 30)


def test_legendre5():
    assert [legendre5(n) for n in range(1, 11)] == [1, -1, -1, 1, 0, 1, -1, -1, 1, 0]


def test_haupt_t_against_direct_product():
    order = 60
    num = [1] + [0] * order
    for n in range(1, order + 1):
        chi = legendre5(n)
        if chi == 0:
            continue
        factor = [0] * (order + 1)
        factor[0] = 1
        if chi == 1:
            factor[n] = -1
        else:
            for j in range(0, order + 1, n):
                factor[j] = 1
        num = naive_poly_mul(num, factor, order + 1)
    t = haupt_t(order)
    assert t.ram == 5
    assert t.valuation == F(1, 5)
    assert [t.coefficient(F(1, 5) + n) for n in range(order + 1)] == num
    assert num[:5] == [1, -1, 1, 0, -1]


def test_haupt_t_exponents_in_one_fifth_plus_integers():
    assert all((e - F(1, 5)).denominator == 1 for e, _ in haupt_t(200).terms())


def test_identities():
    assert verify_e2_eta(10)
    assert verify_e2_eta(200)
    assert verify_ramanujan(10)
    assert verify_ramanujan(500)


def test_identities_detect_perturbation():
    bad_e2 = e2(10) + PuiseuxSeries.from_terms({1: 1}, 11)
    assert not verify_e2_eta(10, e2_series=bad_e2)
    E2 = e2(10)
    assert not verify_ramanujan(10, e4_series=E2 * E2)


def test_ramanujan_q1_row():
    # 12 * (-24) = (-48) - 240
    assert 12 * e2(3).coefficient(1) == 2 * e2(3).coefficient(1) - e4(3).coefficient(1)


def test_named_series():
    assert named_series("E4", 3).series == e4(3)
    assert named_series("eta_pow:2/5", 5).series == eta_pow(F(2, 5), 5)
    with pytest.raises(UnknownSeries):
        named_series("X", 3)
