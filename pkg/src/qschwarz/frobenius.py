"""Frobenius solutions at the cusp of

    D^2 y = (r^2/4) E4 y                         (normal form, r = (k+1)/6)
    D^2 f - ((k+1)/6) E2 D f + (k(k+1)/12) D(E2) f = 0     (f = eta^(2(k+1)) y)

Both are the tau-equations divided by (2 pi i)^2.  The indicial roots are
+-r/2.  When r is an integer they differ by the integer r and the second
solution picks up ``c * L * y1`` with ``L = log q``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import InconsistentKR, NonPositiveR, PreconditionError, ZeroDerivative
from .modforms import e2, e4, eta_pow
from .schwarz import SchwarzInput
from .series import LogSeries, PuiseuxSeries, Scalar, monicize, pow_rat

AnySeries = Union[PuiseuxSeries, LogSeries]


def r_from_k(k: Scalar) -> Fraction:
    return (Fraction(k) + 1) / 6


def k_from_r(r: Scalar) -> Fraction:
    return 6 * Fraction(r) - 1


@dataclass(frozen=True)
class FrobeniusBasis:
    """``y1 = q^(r/2)(1 + ...)`` and ``y2 = c L y1 + q^(-r/2)(1 + ...)``."""

    r: Fraction
    y1: PuiseuxSeries
    y2: LogSeries
    c: Fraction
    order: int

    @property
    def resonant(self) -> bool:
        return self.r.denominator == 1

    @property
    def g(self) -> PuiseuxSeries:
        """Pure part of ``y2``."""
        return self.y2.pure_part

    def beta(self, n: int) -> Fraction:
        return self.g.coefficient(-self.r / 2 + n)

    def alpha_n(self, n: int) -> Fraction:
        return self.y1.coefficient(self.r / 2 + n)


def _rows(order: int) -> int:
    return int(order) + 1


def solve(r: Scalar, order: int) -> FrobeniusBasis:
    """Solve the normal form through ``order`` integer rows past each lead.

    Normalisation: ``alpha_0 = beta_0 = 1`` and, in the resonant case,
    ``beta_r = 0``.
    """
    r = Fraction(r)
    if r <= 0:
        raise NonPositiveR(f"r must be positive, got {r}")
    order = int(order)
    resonant = r.denominator == 1
    if resonant and order < r + 2:
        raise PreconditionError(f"order must be at least r + 2 = {r + 2} for integer r")
    n_rows = _rows(order)
    e = e4(order).coeffs
    rr4 = r * r / 4

    alpha = [Fraction(1)]
    for n in range(1, n_rows):
        acc = sum((e[m] * alpha[n - m] for m in range(1, n + 1)), Fraction(0))
        alpha.append(rr4 * acc / (n * (n + r)))

    beta = [Fraction(1)]
    c = Fraction(0)
    for n in range(1, n_rows):
        acc = sum((e[m] * beta[n - m] for m in range(1, n + 1)), Fraction(0))
        if not resonant:
            beta.append(rr4 * acc / (n * (n - r)))
        elif n < r:
            beta.append(rr4 * acc / (n * (n - r)))
        elif n == r:
            # consistency row of D^2 g - (r^2/4) E4 g = -2 c D(y1)
            c = rr4 * acc / (r * alpha[0])
            beta.append(Fraction(0))
        else:
            rhs = rr4 * acc - 2 * c * (n - r / 2) * alpha[n - int(r)]
            beta.append(rhs / (n * (n - r)))

    y1 = PuiseuxSeries(1, 0, alpha).shift(r / 2)
    g = PuiseuxSeries(1, 0, beta).shift(-r / 2)
    y2 = LogSeries(y1.scale(c), g)
    return FrobeniusBasis(r, y1, y2, c, order)


def ode_residual_series(y: AnySeries, r: Scalar) -> AnySeries:
    """``D^2 y - (r^2/4) E4 y`` with E4 expanded to match ``y``."""
    r = Fraction(r)
    top = y.known_to
    low = _valuation(y)
    E4 = e4(max(1, math.ceil(top - low)))
    return y.d().d() - (r * r / 4) * (E4 * y)


def ode_residual(y: AnySeries, r: Scalar, order: Scalar) -> bool:
    """True iff ``y`` solves the normal form through ``O(q^order)`` (certified)."""
    return ode_residual_series(y, r).vanishes_below(order)


def _valuation(y: AnySeries) -> Fraction:
    if isinstance(y, LogSeries):
        vals = [v for v in (y.log_part.valuation, y.pure_part.valuation) if v is not None]
        return min(vals) if vals else y.known_to
    v = y.valuation
    return y.known_to if v is None else v


def solutions_from_h(h: SchwarzInput, order: int | None = None) -> tuple[PuiseuxSeries, PuiseuxSeries]:
    """``(h / sqrt(Dh), 1 / sqrt(Dh))`` up to the common scalar ``lead(Dh)^(-1/2)``."""
    if isinstance(h, LogSeries):
        raise PreconditionError("solutions_from_h needs a pure series")
    dh = h.d()
    if dh.is_zero:
        raise ZeroDerivative("D h vanishes to its truncation order")
    _, ex, m = monicize(dh)
    y2 = pow_rat(m, Fraction(-1, 2)).shift(-ex / 2)
    y1 = h * y2
    if order is not None:
        y1, y2 = y1.truncate(order), y2.truncate(order)
    return y1, y2


def span_coefficients(y: AnySeries, basis: FrobeniusBasis) -> tuple[Fraction, Fraction] | None:
    """Rationals ``(a, b)`` with ``y = a y1 + b y2`` on every certified row, else None."""
    r = basis.r
    ylog = y if isinstance(y, LogSeries) else LogSeries.lift(y)
    b = ylog.pure_part.coefficient(-r / 2)
    a = (ylog - basis.y2 * b).pure_part.coefficient(r / 2)
    rest = ylog - basis.y2 * b - basis.y1 * a
    bound = min(ylog.known_to, basis.y1.known_to, basis.y2.known_to)
    return (a, b) if rest.vanishes_below(bound) else None


def to_f(y: AnySeries, k: Scalar, order: int, r: Scalar | None = None,
         eta_exponent: Scalar | None = None) -> AnySeries:
    """``f = eta^(2(k+1)) y``; ``eta_exponent`` overrides the power (used by the probe)."""
    k = Fraction(k)
    if r is not None and r_from_k(k) != Fraction(r):
        raise InconsistentKR(f"k = {k} gives r = {r_from_k(k)}, not {r}")
    w = 2 * (k + 1) if eta_exponent is None else Fraction(eta_exponent)
    return eta_pow(w, order) * y


def kk_residual_series(f: AnySeries, k: Scalar) -> AnySeries:
    """``D^2 f - ((k+1)/6) E2 Df + (k(k+1)/12) D(E2) f``."""
    k = Fraction(k)
    rows = max(1, math.ceil(f.known_to - _valuation(f)))
    E2 = e2(rows)
    df = f.d()
    return df.d() - ((k + 1) / 6) * (E2 * df) + (k * (k + 1) / 12) * (E2.d() * f)


def kk_residual(f: AnySeries, k: Scalar, order: Scalar) -> bool:
    return kk_residual_series(f, k).vanishes_below(order)


@dataclass(frozen=True)
class ProbeResult:
    k: Fraction
    exponents: dict  # eta exponent -> residual vanishes for both solutions

    @property
    def vanishing(self) -> list[Fraction]:
        return [w for w, ok in self.exponents.items() if ok]


def exponent_probe(k: Scalar, order: int) -> ProbeResult:
    """Try ``eta^(2(k+1))`` and ``eta^(2k+1)`` as the multiplier of the normal-form solutions."""
    k = Fraction(k)
    r = r_from_k(k)
    basis = solve(r, order + 2)
    out = {}
    for w in (2 * (k + 1), 2 * k + 1):
        ok = True
        for y in (basis.y1, basis.y2):
            f = to_f(y, k, order + 2, eta_exponent=w)
            ok = ok and kk_residual(f, k, order)
        out[w] = ok
    return ProbeResult(k, out)


def wronskian(basis: FrobeniusBasis) -> tuple[Fraction, bool]:
    """Constant term of ``y1 D(y2) - y2 D(y1)`` and whether it is the only term."""
    w = basis.y2.d() * basis.y1 - basis.y2 * basis.y1.d()
    if w.has_log:
        return w.pure_part.coefficient(0) if w.pure_part.known_to > 0 else Fraction(0), False
    p = w.pure_part
    const = p.coefficient(0)
    single = all(e == 0 for e, _ in p.terms())
    return const, single


def wronskian_series(basis: FrobeniusBasis) -> AnySeries:
    w = basis.y2.d() * basis.y1 - basis.y2 * basis.y1.d()
    return w.pure_part if not w.has_log else w
