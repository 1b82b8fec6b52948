"""Exact q-expansions: divisor sums, E2, E4, the Dedekind eta function and its
rational powers, and the Gamma(5) Hauptmodul

    t = q^(1/5) * prod_{n>=1} (1 - q^n)^(n/5).

``order`` always counts integer-q rows past the (possibly fractional) lead, so
``e4(3)`` is ``1 + 240q + 2160q^2 + 6720q^3 + O(q^4)`` and ``eta(3)`` is
``q^(1/24) (1 - q - q^2 + 0 q^3) + O(q^(1/24 + 4))``.

The tau-derivative identities are stated with ``D = q d/dq``:
``E2 = 24 D(eta)/eta`` and ``12 D(E2) = E2^2 - E4``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from .series import PuiseuxSeries, pow_rat, Scalar


def sigma(k: int, n: int) -> int:
    """Sum of ``d**k`` over the positive divisors ``d`` of ``n``."""
    if n < 1:
        raise ValueError("sigma needs n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            e = n // d
            if e != d:
                total += e ** k
        d += 1
    return total


def sigma_table(k: int, upto: int) -> list[int]:
    """``[0, sigma_k(1), ..., sigma_k(upto)]`` by a divisor sieve."""
    table = [0] * (upto + 1)
    for d in range(1, upto + 1):
        p = d ** k
        for m in range(d, upto + 1, d):
            table[m] += p
    return table


def _check_order(order: int) -> int:
    order = int(order)
    if order < 0:
        raise ValueError("order must be non-negative")
    return order


@lru_cache(maxsize=None)
def e2(order: int) -> PuiseuxSeries:
    order = _check_order(order)
    s = sigma_table(1, order)
    return PuiseuxSeries(1, 0, [1] + [-24 * s[n] for n in range(1, order + 1)])


@lru_cache(maxsize=None)
def e4(order: int) -> PuiseuxSeries:
    order = _check_order(order)
    s = sigma_table(3, order)
    return PuiseuxSeries(1, 0, [1] + [240 * s[n] for n in range(1, order + 1)])


def _euler_product(order: int) -> list[int]:
    """Coefficients of prod_{n>=1} (1 - q^n) through q^order."""
    c = [0] * (order + 1)
    c[0] = 1
    for n in range(1, order + 1):
        for j in range(order, n - 1, -1):
            if c[j - n]:
                c[j] -= c[j - n]
    return c


def legendre5(n: int) -> int:
    """Legendre symbol (n/5)."""
    r = n % 5
    if r == 0:
        return 0
    return 1 if r in (1, 4) else -1


@lru_cache(maxsize=None)
def eta(order: int) -> PuiseuxSeries:
    order = _check_order(order)
    return PuiseuxSeries(1, 0, _euler_product(order)).shift(Fraction(1, 24))


@lru_cache(maxsize=None)
def eta_pow(w: Scalar, order: int) -> PuiseuxSeries:
    """``eta**w`` for rational ``w``: ``q**(w/24) * (prod (1-q^n))**w``."""
    w = Fraction(w)
    order = _check_order(order)
    product = PuiseuxSeries(1, 0, _euler_product(order))
    return pow_rat(product, w).shift(w / 24)


@lru_cache(maxsize=None)
def haupt_t(order: int) -> PuiseuxSeries:
    order = _check_order(order)
    c = [0] * (order + 1)
    c[0] = 1
    for n in range(1, order + 1):
        chi = legendre5(n)
        if chi == 1:
            for j in range(order, n - 1, -1):
                c[j] -= c[j - n]
        elif chi == -1:
            # multiply by 1/(1 - q^n) = 1 + q^n + q^2n + ...
            for j in range(n, order + 1):
                c[j] += c[j - n]
    return PuiseuxSeries(1, 0, c).shift(Fraction(1, 5))


def pentagonal_product(order: int) -> list[int]:
    """Euler's product through q^order from the pentagonal number theorem."""
    c = [0] * (order + 1)
    k = 0
    while True:
        hit = False
        for kk in ((k,) if k == 0 else (k, -k)):
            p = kk * (3 * kk - 1) // 2
            if p <= order:
                c[p] = -1 if kk % 2 else 1
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return c


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def e2_eta_residual(order: int, e2_series: PuiseuxSeries | None = None) -> PuiseuxSeries:
    """``E2 - 24 D(eta)/eta``; vanishes identically."""
    E2 = e2(order) if e2_series is None else e2_series
    h = eta(order)
    return E2 - 24 * (h.d() / h)


def ramanujan_residual(order: int, e4_series: PuiseuxSeries | None = None) -> PuiseuxSeries:
    """``12 D(E2) - (E2^2 - E4)``; vanishes identically."""
    E2 = e2(order)
    E4 = e4(order) if e4_series is None else e4_series
    return 12 * E2.d() - (E2 * E2 - E4)


def verify_e2_eta(order: int, e2_series: PuiseuxSeries | None = None) -> bool:
    if order < 2:
        raise ValueError("verify_e2_eta needs order >= 2")
    return e2_eta_residual(order, e2_series).vanishes_below(order)


def verify_ramanujan(order: int, e4_series: PuiseuxSeries | None = None) -> bool:
    if order < 2:
        raise ValueError("verify_ramanujan needs order >= 2")
    return ramanujan_residual(order, e4_series).vanishes_below(order)


# ---------------------------------------------------------------------------
# named series
# ---------------------------------------------------------------------------

class SeriesName(str, Enum):
    E2 = "E2"
    E4 = "E4"
    ETA = "eta"
    ETA_POW = "eta_pow"
    HAUPT_T = "t"


@dataclass(frozen=True)
class NamedSeries:
    name: SeriesName
    series: PuiseuxSeries
    order: int
    weight: Fraction | None = None

    @property
    def key(self) -> str:
        if self.name is SeriesName.ETA_POW:
            return f"eta_pow:{self.weight}"
        return self.name.value


def named_series(name: str, order: int) -> NamedSeries:
    """Look up ``E2``, ``E4``, ``eta``, ``eta_pow:w`` or ``t`` by name."""
    from .errors import UnknownSeries
    from .series import parse_rat

    if name.startswith("eta_pow:"):
        try:
            w = parse_rat(name.split(":", 1)[1])
        except ValueError as exc:
            raise UnknownSeries(str(exc)) from None
        return NamedSeries(SeriesName.ETA_POW, eta_pow(w, order), order, w)
    builders = {"E2": e2, "E4": e4, "eta": eta, "t": haupt_t}
    if name not in builders:
        raise UnknownSeries(f"unknown series {name!r}")
    return NamedSeries(SeriesName(name), builders[name](order), order)
