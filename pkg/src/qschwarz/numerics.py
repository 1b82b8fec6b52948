"""Multiprecision evaluation of truncated q-series on the upper half-plane.

``q^(1/N)`` is always ``exp(2 pi i tau / N)`` and ``L = log q = 2 pi i tau``;
each side of an invariance check is evaluated directly at its own ``tau``.
Every evaluation carries its own :class:`mpmath.MPContext`, so nothing here
touches the global ``mpmath.mp`` precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import mpmath

from .errors import (
    DegeneratePoints,
    NonUpperHalfPlane,
    NotInGamma5,
    PoleHit,
    PreconditionError,
    TailBoundViolated,
)
from .frobenius import FrobeniusBasis, solve
from .modforms import haupt_t
from .series import LogSeries, PuiseuxSeries, _stride


@dataclass(frozen=True)
class UniModularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise PreconditionError(f"determinant of {self.as_list()} is not 1")

    @classmethod
    def of(cls, m: Sequence[int] | Sequence[Sequence[int]] | "UniModularMatrix") -> "UniModularMatrix":
        if isinstance(m, UniModularMatrix):
            return m
        flat = [int(x) for row in m for x in (row if isinstance(row, (list, tuple)) else (row,))]
        return cls(*flat)

    def __matmul__(self, o: "UniModularMatrix") -> "UniModularMatrix":
        return UniModularMatrix(self.a * o.a + self.b * o.c, self.a * o.b + self.b * o.d,
                                self.c * o.a + self.d * o.c, self.c * o.b + self.d * o.d)

    def in_gamma(self, n: int) -> bool:
        return (self.a - 1) % n == 0 and (self.d - 1) % n == 0 and self.b % n == 0 and self.c % n == 0

    def as_list(self) -> list[int]:
        return [self.a, self.b, self.c, self.d]


S = UniModularMatrix(0, -1, 1, 0)
T = UniModularMatrix(1, 1, 0, 1)
IDENTITY = UniModularMatrix(1, 0, 0, 1)


@dataclass(frozen=True)
class EvalContext:
    """Working precision (decimal digits), truncation rows and absolute tolerance.

    With ``terms=None`` the number of rows is chosen per point so that the
    first omitted power of ``|q|`` is below ``10**(-precision/2)``.
    """

    precision: int = 60
    terms: int | None = None
    tol: float = 1e-8
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        ctx = mpmath.MPContext()
        ctx.dps = int(self.precision)
        object.__setattr__(self, "mp", ctx)

    def doubled(self) -> "EvalContext":
        return replace(self, precision=2 * self.precision,
                       terms=None if self.terms is None else 2 * self.terms)

    def mpc(self, z):
        if isinstance(z, str):
            return self.mp.mpmathify(z.replace(" ", "").replace("i", "j"))
        return self.mp.mpc(z)

    def q_abs(self, tau) -> float:
        return math.exp(-2 * math.pi * float(self.mpc(tau).imag))

    def terms_for(self, tau) -> int:
        if self.terms is not None:
            return self.terms
        im = float(self.mpc(tau).imag)
        if im <= 0:
            raise NonUpperHalfPlane(f"Im tau = {im} <= 0")
        return max(4, math.ceil(self.precision / 2 * math.log(10) / (2 * math.pi * im)))

    def tail_ok(self, tau, terms: int) -> bool:
        return self.q_abs(tau) ** terms < self.tol / 10


def _qpow(ctx: EvalContext, tau, e: Fraction):
    mp = ctx.mp
    return mp.exp(2 * mp.pi * 1j * tau * mp.mpf(e.numerator) / e.denominator)


def _eval_pure(s: PuiseuxSeries, tau, terms: int, ctx: EvalContext):
    mp = ctx.mp
    if s.is_zero:
        return mp.mpc(0)
    top = s.valuation + terms
    if s.known_to < top:
        raise PreconditionError(f"series known to O(q^{s.known_to}) cannot supply {terms} rows")
    n = int((top - s.valuation) * s.ram)
    coeffs = s.coeffs[:n]
    g = _stride(coeffs) or 1
    comp = coeffs[::g]
    step = _qpow(ctx, tau, Fraction(g, s.ram))
    acc = mp.mpc(0)
    for c in reversed(comp):
        acc = acc * step
        if c:
            acc += mp.mpf(c.numerator) / c.denominator
    return acc * _qpow(ctx, tau, Fraction(s.lead, s.ram))


def eval_series(s: PuiseuxSeries | LogSeries, tau, ctx: EvalContext, terms: int | None = None):
    """Sum of the first ``terms`` integer rows of ``s`` at ``tau``."""
    tau = ctx.mpc(tau)
    if tau.imag <= 0:
        raise NonUpperHalfPlane(f"Im tau = {tau.imag} <= 0")
    terms = ctx.terms_for(tau) if terms is None else terms
    if not ctx.tail_ok(tau, terms):
        raise TailBoundViolated(f"|q|^{terms} = {ctx.q_abs(tau) ** terms:.3g} is not below tol/10")
    if isinstance(s, LogSeries):
        L = 2 * ctx.mp.pi * 1j * tau
        out = _eval_pure(s.pure_part, tau, terms, ctx)
        if s.has_log:
            out += L * _eval_pure(s.log_part, tau, terms, ctx)
        return out
    return _eval_pure(s, tau, terms, ctx)


def mobius(gamma, z, ctx: EvalContext | None = None):
    g = gamma if isinstance(gamma, UniModularMatrix) else UniModularMatrix.of(gamma)
    mp = (ctx or EvalContext()).mp
    z = mp.mpc(z)
    den = g.c * z + g.d
    if den == 0:
        raise PoleHit("c z + d = 0")
    return (g.a * z + g.b) / den


def cross_ratio(z1, z2, z3, z4):
    den = (z1 - z4) * (z2 - z3)
    if den == 0:
        raise DegeneratePoints("coincident points in cross-ratio")
    return (z1 - z3) * (z2 - z4) / den


def test_points(gamma: UniModularMatrix, count: int = 4, ctx: EvalContext | None = None) -> list:
    """Points near the tau maximising ``min(Im tau, Im gamma tau)``.

    For ``c != 0`` that optimum is ``-d/c + i/|c|`` where both imaginary parts
    equal ``1/|c|``; for upper-triangular ``gamma`` the point ``i`` is used.
    """
    mp = (ctx or EvalContext()).mp
    if gamma.c == 0:
        centre, scale = mp.mpc(0, 1), mp.mpf(1)
    else:
        centre = mp.mpc(mp.mpf(-gamma.d) / gamma.c, mp.mpf(1) / abs(gamma.c))
        scale = mp.mpf(1) / abs(gamma.c)
    offsets = [0, mp.mpc("0.06", "0.02"), mp.mpc("-0.05", "0.04"), mp.mpc("0.03", "-0.03"),
               mp.mpc("-0.02", "-0.05")]
    return [centre + scale * o for o in offsets[:count]]


# ---------------------------------------------------------------------------
# checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumericCheck:
    check: str
    gamma: UniModularMatrix
    tau: object
    residual: object
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual < self.tol)

    def to_dict(self) -> dict:
        taus = self.tau if isinstance(self.tau, (list, tuple)) else [self.tau]
        return {
            "check": self.check,
            "gamma": self.gamma.as_list(),
            "tau": [mpmath.nstr(t, 8) for t in taus] if len(taus) > 1 else mpmath.nstr(taus[0], 8),
            "residual": mpmath.nstr(self.residual, 2, min_fixed=1, max_fixed=0),
            "pass": self.passed,
        }


def rows_needed(gamma: UniModularMatrix, taus: Sequence, ctx: EvalContext) -> int:
    pts = list(taus) + [mobius(gamma, t, ctx) for t in taus]
    return max(ctx.terms_for(p) for p in pts)


def check_gamma5_invariance(gamma, tau, ctx: EvalContext, t_series: PuiseuxSeries | None = None) -> NumericCheck:
    """``|t(gamma tau) - t(tau)|`` for ``gamma`` in Gamma(5)."""
    gamma = UniModularMatrix.of(gamma)
    if not gamma.in_gamma(5):
        raise NotInGamma5(f"{gamma.as_list()} is not congruent to the identity mod 5")
    tau = ctx.mpc(tau)
    gtau = mobius(gamma, tau, ctx)
    rows = max(ctx.terms_for(tau), ctx.terms_for(gtau))
    t = haupt_t(rows + 1) if t_series is None else t_series
    res = abs(eval_series(t, gtau, ctx, rows) - eval_series(t, tau, ctx, rows))
    return NumericCheck("gamma5-invariance", gamma, tau, res, ctx.tol)


HEval = Callable[[object, EvalContext], object]


def basis_h(basis: FrobeniusBasis) -> HEval:
    """``tau -> y2(tau)/y1(tau)``, including ``c * 2 pi i tau`` when resonant."""

    def h(tau, ctx: EvalContext):
        rows = ctx.terms_for(tau)
        return eval_series(basis.y2, tau, ctx, rows) / eval_series(basis.y1, tau, ctx, rows)

    return h


def series_h(s: PuiseuxSeries | LogSeries) -> HEval:
    def h(tau, ctx: EvalContext):
        return eval_series(s, tau, ctx)

    return h


def _distinct(values, ctx: EvalContext):
    for i in range(len(values)):
        for j in range(i):
            if abs(values[i] - values[j]) < ctx.tol:
                raise DegeneratePoints("h takes (nearly) equal values at two test points")


def cross_ratio_equivariance(h: HEval, gamma, taus: Sequence, ctx: EvalContext) -> NumericCheck:
    """Compare the cross-ratio of ``h(tau_i)`` with that of ``h(gamma tau_i)``."""
    gamma = UniModularMatrix.of(gamma)
    taus = [ctx.mpc(t) for t in taus]
    if len(taus) != 4:
        raise PreconditionError("need exactly four points")
    before = [h(t, ctx) for t in taus]
    after = [h(mobius(gamma, t, ctx), ctx) for t in taus]
    _distinct(before, ctx)
    _distinct(after, ctx)
    res = abs(cross_ratio(*after) - cross_ratio(*before))
    return NumericCheck("equivariance", gamma, taus, res, ctx.tol)


def _mobius_to_standard(z1, z2, z3, mp):
    """Matrix sending z1, z2, z3 to 0, 1, infinity."""
    return mp.matrix([[z2 - z3, -z1 * (z2 - z3)], [z2 - z1, -z3 * (z2 - z1)]])


def fit_rho(h: HEval, gamma, taus3: Sequence, tau4, ctx: EvalContext):
    """Moebius ``M`` with ``M(h(tau_i)) = h(gamma tau_i)`` for three points; residual at a fourth.

    ``M`` is returned scaled to determinant one.
    """
    gamma = UniModularMatrix.of(gamma)
    mp = ctx.mp
    taus3 = [ctx.mpc(t) for t in taus3]
    z = [h(t, ctx) for t in taus3]
    w = [h(mobius(gamma, t, ctx), ctx) for t in taus3]
    _distinct(z, ctx)
    _distinct(w, ctx)
    A = _mobius_to_standard(*z, mp)
    B = _mobius_to_standard(*w, mp)
    M = mp.inverse(B) * A
    det = mp.det(M)
    M = M / mp.sqrt(det)
    tau4 = ctx.mpc(tau4)
    z4 = h(tau4, ctx)
    w4 = h(mobius(gamma, tau4, ctx), ctx)
    image = (M[0, 0] * z4 + M[0, 1]) / (M[1, 0] * z4 + M[1, 1])
    return M, abs(image - w4)


# ---------------------------------------------------------------------------
# catalogues used by the acceptance checks and the CLI
# ---------------------------------------------------------------------------

GAMMA5_SAMPLES = [
    UniModularMatrix(1, 5, 0, 1),
    UniModularMatrix(1, 0, 5, 1),
    UniModularMatrix(1, 0, -5, 1),
    UniModularMatrix(6, 25, 5, 21),
    UniModularMatrix(-4, 5, -5, 6),
]

SQUARES = [UniModularMatrix(-1, -1, 1, 0), UniModularMatrix(1, 2, 0, 1)]  # (ST)^2, T^2
FULL = [S, UniModularMatrix(0, -1, 1, 1)]  # S, ST


def equivariance_elements(r: int) -> list[UniModularMatrix]:
    """Elements of the invariance group: SL2(Z) for even r, its squares subgroup for odd r."""
    return list(FULL) if int(r) % 2 == 0 else list(SQUARES)


def gamma5_report(ctx: EvalContext, points_per_matrix: int = 3) -> list[NumericCheck]:
    out = []
    for g in GAMMA5_SAMPLES:
        pts = test_points(g, points_per_matrix, ctx)
        rows = rows_needed(g, pts, ctx)
        t = haupt_t(rows + 1)
        out.extend(check_gamma5_invariance(g, p, ctx, t) for p in pts)
    return out


def equivariance_report(r: int, ctx: EvalContext) -> list[NumericCheck]:
    out = []
    for g in equivariance_elements(r):
        pts = test_points(g, 4, ctx)
        basis = solve(r, rows_needed(g, pts, ctx) + int(r) + 2)
        out.append(cross_ratio_equivariance(basis_h(basis), g, pts, ctx))
    return out
