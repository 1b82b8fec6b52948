"""Schwarz derivative in the q-domain.

With ``' = d/dtau = 2*pi*i*D`` the tau-Schwarzian becomes

    {h, tau} = -4 pi^2 S_q(h),   S_q(h) = D(u) - u^2/2,   u = D^2 h / D h,

so the equation ``{h, tau} = 2 pi^2 r^2 E4`` is exactly ``S_q(h) = -(r^2/2) E4``.
Only ``S_q`` is ever computed; the factor ``-4 pi^2`` is never materialised.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import DivisionByZeroSeries, LogInDenominator, PreconditionError, ZeroDerivative
from .modforms import e4, haupt_t
from .series import LogSeries, PuiseuxSeries, Scalar, compose_rational

SchwarzInput = Union[PuiseuxSeries, LogSeries]

# rational maps of the Gamma(5) Hauptmodul solving the equation for r = 2/5 and 3/5;
# coefficient lists run from the constant term upwards
LEVEL5_MAPS: dict[Fraction, tuple[tuple[int, ...], tuple[int, ...]]] = {
    Fraction(1, 5): ((0, 1), (1,)),
    # t^2 (t^5 - 7) / (7 t^5 + 1)
    Fraction(2, 5): ((0, 0, -7, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 7)),
    # t^3 (t^10 - 39 t^5 - 26) / (26 t^10 - 39 t^5 - 1)
    Fraction(3, 5): ((0, 0, 0, -26, 0, 0, 0, 0, -39, 0, 0, 0, 0, 1),
                     (-1, 0, 0, 0, 0, -39, 0, 0, 0, 0, 26)),
}


def _derivative(h: SchwarzInput) -> PuiseuxSeries:
    if isinstance(h, LogSeries):
        lp = h.log_part
        if not lp.is_zero and (lp.lead != 0 or len([c for c in lp.coeffs if c]) != 1):
            raise PreconditionError("only h = c*L + p with constant c is accepted")
        return h.d().to_pure()
    return h.d()


def q_schwarz(h: SchwarzInput) -> PuiseuxSeries:
    """``S_q(h) = D(u) - u^2/2`` with ``u = D^2 h / D h``."""
    dh = _derivative(h)
    if dh.is_zero:
        raise ZeroDerivative("D h vanishes to its truncation order")
    u = dh.d() / dh
    return u.d() - u * u / 2


def mobius_of_series(M: Sequence[Sequence[Scalar]], h: SchwarzInput) -> SchwarzInput:
    """``(a h + b)/(c h + d)`` for a rational matrix ``[[a, b], [c, d]]``."""
    (a, b), (c, d) = ((Fraction(x) for x in row) for row in M)
    if a * d - b * c == 0:
        raise PreconditionError("matrix is singular")
    if isinstance(h, LogSeries):
        if c != 0:
            raise LogInDenominator("c must vanish when h carries a log term")
        return (h * a + b) * (1 / d)
    den = h * c + d
    if den.is_zero:
        raise DivisionByZeroSeries("c h + d vanishes to its truncation order")
    return (h * a + b) / den


@dataclass(frozen=True)
class SchwarzCheck:
    passed: bool
    target: Fraction
    certified_to: Fraction
    first_nonzero: Fraction | None

    def __bool__(self):
        return self.passed


def schwarz_residual(h: SchwarzInput, r: Scalar, order: int) -> PuiseuxSeries:
    """``S_q(h) + (r^2/2) E4``."""
    r = Fraction(r)
    return q_schwarz(h) + (r * r / 2) * e4(order + 1)


def check_schwarz_eq(h: SchwarzInput, r: Scalar, order: int) -> SchwarzCheck:
    r = Fraction(r)
    if r == 0:
        raise PreconditionError("r must be nonzero")
    res = schwarz_residual(h, r, order)
    return SchwarzCheck(res.vanishes_below(order), Fraction(order), res.known_to, res.valuation)


def verify_schwarz_eq(h: SchwarzInput, r: Scalar, order: int) -> bool:
    """True iff ``S_q(h) = -(r^2/2) E4 + O(q^order)`` with ``h`` certified that far."""
    return check_schwarz_eq(h, r, order).passed


def level5_solution(r: Scalar, order: int) -> PuiseuxSeries:
    """The rational function of ``t`` solving the equation for ``r`` in {1/5, 2/5, 3/5}.

    ``t`` is expanded far enough that the Schwarzian is certified through ``q^order``.
    """
    r = Fraction(r)
    if r not in LEVEL5_MAPS:
        raise PreconditionError(f"no explicit level-5 map for r = {r}")
    P, Q = LEVEL5_MAPS[r]
    t = haupt_t(order + 1)
    if r == Fraction(1, 5):
        return t
    return compose_rational(P, Q, t)
