"""Exact q-series toolkit for the Kaneko-Koike equation, its normal form
``D^2 y = (r^2/4) E4 y`` and the associated Schwarzian equation."""

from .classify import ModularityClass, Tag, classify, level5_ks
from .frobenius import (
    FrobeniusBasis,
    exponent_probe,
    kk_residual,
    ode_residual,
    solutions_from_h,
    solve,
    to_f,
    wronskian,
)
from .modforms import e2, e4, eta, eta_pow, haupt_t, legendre5, sigma, verify_e2_eta, verify_ramanujan
from .schwarz import mobius_of_series, q_schwarz, verify_schwarz_eq
from .series import (
    LogSeries,
    PuiseuxSeries,
    add,
    compose_rational,
    d_op,
    div,
    monicize,
    mul,
    pow_rat,
)

__version__ = "0.1.0"
