from fractions import Fraction as F

import pytest

from qschwarz.errors import NonUpperHalfPlane, NotInGamma5, PoleHit, PreconditionError, TailBoundViolated
from qschwarz.frobenius import solve
from qschwarz.modforms import e4, haupt_t
from qschwarz.numerics import (
    GAMMA5_SAMPLES,
    IDENTITY,
    S,
    T,
    EvalContext,
    UniModularMatrix,
    basis_h,
    check_gamma5_invariance,
    cross_ratio,
    cross_ratio_equivariance,
    eval_series,
    fit_rho,
    mobius,
    series_h,
    test_points as sample_points,
)
from qschwarz.series import PuiseuxSeries, q

CTX = EvalContext()


def close(a, b, tol=1e-40):
    return abs(a - b) < tol


def test_eval_polynomial():
    assert close(eval_series(1 - q(30), "1i", CTX), 1 - CTX.mp.exp(-2 * CTX.mp.pi))
    with pytest.raises(PreconditionError):
        eval_series(q(5), "1i", CTX)  # too few rows for the adaptive count


def test_eval_e4_at_i_closed_form():
    mp = CTX.mp
    oracle = 3 * mp.gamma(mp.mpf(1) / 4) ** 8 / (2 * mp.pi) ** 6
    assert close(eval_series(e4(80), "1i", CTX, terms=80), oracle, 1e-55)
    # default rows bound |q|^T by 10^(-precision/2); polynomial coefficient growth costs a few digits
    assert close(eval_series(e4(80), "1i", CTX), oracle, 1e-20)


def test_fractional_power_branch():
    s = PuiseuxSeries.monomial(F(1, 5), 40)
    assert close(eval_series(s, "5i", CTX), CTX.mp.exp(-2 * CTX.mp.pi))
    tau = CTX.mpc("0.3+0.7i")
    assert close(eval_series(s, tau, CTX) ** 5, eval_series(q(40), tau, CTX))


def test_eval_errors():
    with pytest.raises(NonUpperHalfPlane):
        eval_series(q(5), "-1i", CTX)
    with pytest.raises(TailBoundViolated):
        eval_series(q(5), "0.01i", CTX, terms=3)


def test_mobius():
    assert close(mobius(S, CTX.mpc("5i"), CTX), CTX.mpc("0.2i"))
    assert close(mobius(UniModularMatrix(1, 0, 5, 1), CTX.mpc("0.2i"), CTX), CTX.mpc("0.1+0.1i"))
    with pytest.raises(PoleHit):
        mobius(S, 0, CTX)


def test_matrix_validation():
    with pytest.raises(ValueError):
        UniModularMatrix(1, 1, 1, 1)
    assert (S @ S).as_list() == [-1, 0, 0, -1]
    assert all(g.in_gamma(5) for g in GAMMA5_SAMPLES)
    assert not T.in_gamma(5)


def test_cross_ratio_is_mobius_invariant():
    zs = [CTX.mpc(z) for z in ("0.1+1i", "2+0.5i", "-1+3i", "0.7+0.2i")]
    g = UniModularMatrix(2, 1, 7, 4)
    assert close(cross_ratio(*[mobius(g, z, CTX) for z in zs]), cross_ratio(*zs))


def test_points_stay_in_upper_half_plane():
    for g in GAMMA5_SAMPLES + [S, T]:
        for p in sample_points(g, 5, CTX):
            assert p.imag > 0 and mobius(g, p, CTX).imag > 0


@pytest.mark.parametrize("g", GAMMA5_SAMPLES)
def test_gamma5_invariance(g):
    for p in sample_points(g, 2, CTX):
        assert check_gamma5_invariance(g, p, CTX).passed


def test_gamma5_rejects_t_and_detects_failure():
    with pytest.raises(NotInGamma5):
        check_gamma5_invariance(T, "1i", CTX)
    # q^(1/5) alone is not invariant under tau -> tau/(5 tau + 1)
    mono = PuiseuxSeries.monomial(F(1, 5), 200)
    g = UniModularMatrix(1, 0, 5, 1)
    assert not check_gamma5_invariance(g, sample_points(g, 1, CTX)[0], CTX, mono).passed


def test_fit_rho_on_gamma5_is_identity():
    g = GAMMA5_SAMPLES[3]
    pts = sample_points(g, 4, CTX)
    M, res = fit_rho(series_h(haupt_t(120)), g, pts[:3], pts[3], CTX)
    assert res < 1e-20
    scalar = M[0, 0]
    assert abs(abs(scalar) - 1) < 1e-20
    assert all(abs(M[i, j] - (scalar if i == j else 0)) < 1e-20 for i in range(2) for j in range(2))


def test_fit_rho_trivial_gamma():
    pts = [CTX.mpc(z) for z in ("1i", "0.2+1.1i", "-0.3+0.9i", "0.1+1.3i")]
    M, res = fit_rho(series_h(haupt_t(60)), IDENTITY, pts[:3], pts[3], CTX)
    assert res < 1e-30 and abs(M[0, 1]) < 1e-30 and abs(M[1, 0]) < 1e-30


def test_resonant_ratio_is_mobius_related():
    h = basis_h(solve(2, 200))
    pts = sample_points(S, 4, CTX)
    _, res = fit_rho(h, S, pts[:3], pts[3], CTX)
    assert res < 1e-8
    assert cross_ratio_equivariance(h, S, pts, EvalContext(tol=1e-6)).passed


def test_doubled_context_is_separate():
    d = CTX.doubled()
    assert d.precision == 120 and CTX.mp.dps == 60 and d.mp.dps == 120
