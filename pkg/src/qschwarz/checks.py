"""Named verification checks shared by the CLI and the acceptance tests."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import frobenius as fb
from .modforms import e2_eta_residual, ramanujan_residual
from .numerics import EvalContext, equivariance_report, gamma5_report
from .schwarz import check_schwarz_eq, level5_solution
from .series import AnySeries, LogSeries, format_rat

ODE_RS = [Fraction(1, 5), Fraction(2, 5), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2), Fraction(3)]
WRONSKIAN_RS = [Fraction(1, 5), Fraction(2, 5), Fraction(1, 2), Fraction(3, 4), Fraction(1), Fraction(2),
                Fraction(3), Fraction(7, 6), Fraction(13, 36)]
KK_KS = [Fraction(1, 5), Fraction(7, 5), Fraction(13, 5), Fraction(2), Fraction(5)]


@dataclass
class CheckReport:
    check: str
    kind: str
    passed: bool
    params: dict = field(default_factory=dict)
    results: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"check": self.check, "kind": self.kind, "pass": self.passed,
                "params": self.params, "results": self.results}


@dataclass(frozen=True)
class CheckDescriptor:
    name: str
    kind: str  # "exact" | "numeric"
    run: Callable[..., CheckReport]
    doc: str = ""


def _fmt(x) -> str | None:
    return None if x is None else format_rat(x)


def _residual_row(label: str, residual: AnySeries, order: int, **extra) -> dict:
    if isinstance(residual, LogSeries):
        ok = residual.vanishes_below(order)
        row = {"case": label, "pass": ok, "certified_to": _fmt(residual.known_to),
               "first_nonzero_log": _fmt(residual.log_part.valuation),
               "first_nonzero": _fmt(residual.pure_part.valuation)}
    else:
        ok = residual.vanishes_below(order)
        row = {"case": label, "pass": ok, "certified_to": _fmt(residual.known_to),
               "first_nonzero": _fmt(residual.valuation)}
    row.update(extra)
    return row


def _solve_for(r: Fraction, order: int) -> fb.FrobeniusBasis:
    # rows are counted from -r/2, so pad to certify O(q^order)
    return fb.solve(r, order + math.ceil(r / 2) + 2)


# -- exact ------------------------------------------------------------------

def run_ramanujan(order: int, **_) -> CheckReport:
    row = _residual_row("12 D(E2) = E2^2 - E4", ramanujan_residual(order), order)
    return CheckReport("ramanujan-e2", "exact", row["pass"], {"order": order}, [row])


def run_eta_e2(order: int, **_) -> CheckReport:
    row = _residual_row("E2 = 24 D(eta)/eta", e2_eta_residual(order), order)
    return CheckReport("eta-e2", "exact", row["pass"], {"order": order}, [row])


def _level5(name: str, r: Fraction, order: int) -> CheckReport:
    h = level5_solution(r, order)
    res = check_schwarz_eq(h, r, order)
    row = {"case": f"S_q(h) + ({r * r / 2}) E4", "pass": res.passed,
           "certified_to": _fmt(res.certified_to), "first_nonzero": _fmt(res.first_nonzero)}
    return CheckReport(name, "exact", res.passed, {"order": order, "r": str(r)}, [row])


def run_hauptmodul(order: int, **_) -> CheckReport:
    return _level5("hauptmodul-schwarz", Fraction(1, 5), order)


def run_map_7_5(order: int, **_) -> CheckReport:
    return _level5("rational-map-7-5", Fraction(2, 5), order)


def run_map_13_5(order: int, **_) -> CheckReport:
    return _level5("rational-map-13-5", Fraction(3, 5), order)


def run_ode_roundtrip(order: int, r: Fraction | None = None, **_) -> CheckReport:
    rs = ODE_RS if r is None else [Fraction(r)]
    rows = []
    for rv in rs:
        basis = _solve_for(rv, order)
        for label, y in (("y1", basis.y1), ("y2", basis.y2)):
            rows.append(_residual_row(f"r={rv} {label}", fb.ode_residual_series(y, rv), order))
    if r is None or Fraction(r) == Fraction(1, 5):
        r5 = Fraction(1, 5)
        basis = _solve_for(r5, order)
        for label, y in zip(("h/sqrt(Dh)", "1/sqrt(Dh)"), fb.solutions_from_h(level5_solution(r5, order))):
            span = fb.span_coefficients(y, basis)
            rows.append({"case": f"t -> {label}", "pass": span is not None and y.known_to >= order,
                         "span": None if span is None else [str(span[0]), str(span[1])]})
    return CheckReport("ode-roundtrip", "exact", all(x["pass"] for x in rows), {"order": order}, rows)


def run_wronskian(order: int, r: Fraction | None = None, **_) -> CheckReport:
    rs = WRONSKIAN_RS if r is None else [Fraction(r)]
    rows = []
    for rv in rs:
        basis = fb.solve(rv, max(order, int(rv) + 2))
        const, single = fb.wronskian(basis)
        ok = single and const == -rv and (basis.c != 0) == (rv.denominator == 1)
        rows.append({"case": f"r={rv}", "pass": ok, "W": str(const), "single_term": single,
                     "c": str(basis.c)})
    return CheckReport("wronskian", "exact", all(x["pass"] for x in rows), {"order": order}, rows)


def run_kk_residual(order: int, k: Fraction | None = None, series: AnySeries | None = None, **_) -> CheckReport:
    rows = []
    if series is not None:
        if k is None:
            raise ValueError("--series needs --k")
        rows.append(_residual_row(f"k={k} supplied series", fb.kk_residual_series(series, k), order))
    else:
        for kv in (KK_KS if k is None else [Fraction(k)]):
            r = fb.r_from_k(kv)
            basis = _solve_for(r, order)
            pad = order + math.ceil(r / 2) + 2
            for label, y in (("f1", basis.y1), ("f2", basis.y2)):
                f = fb.to_f(y, kv, pad, r=r)
                rows.append(_residual_row(f"k={kv} {label}", fb.kk_residual_series(f, kv), order))
    params = {"order": order}
    if k is not None:
        params["k"] = str(k)
    return CheckReport("kk-residual", "exact", all(x["pass"] for x in rows), params, rows)


def run_exponent_probe(order: int, k: Fraction | None = None, **_) -> CheckReport:
    kv = Fraction(1, 5) if k is None else Fraction(k)
    probe = fb.exponent_probe(kv, order)
    expected = [2 * (kv + 1)]
    rows = [{"case": f"eta^{w}", "vanishes": ok, "pass": ok == (w in expected)}
            for w, ok in probe.exponents.items()]
    return CheckReport("exponent-probe", "exact", probe.vanishing == expected,
                       {"order": order, "k": str(kv), "vanishing": [str(w) for w in probe.vanishing]}, rows)


# -- numeric ----------------------------------------------------------------

def _numeric_rows(first, second) -> list[dict]:
    rows = []
    for a, b in zip(first, second):
        row = a.to_dict()
        improved = b.residual == 0 or b.residual * 10 <= a.residual
        row["residual_doubled"] = mpmath.nstr(b.residual, 2, min_fixed=1, max_fixed=0)
        row["doubling_improves"] = bool(improved)
        row["pass"] = bool(a.passed and improved)
        rows.append(row)
    return rows


def _ctx(tolerance=None, precision=None, terms=None) -> EvalContext:
    return EvalContext(precision=int(precision or 60), terms=terms, tol=float(tolerance or 1e-8))


def run_gamma5(tolerance=None, precision=None, terms=None, **_) -> CheckReport:
    ctx = _ctx(tolerance, precision, terms)
    rows = _numeric_rows(gamma5_report(ctx), gamma5_report(ctx.doubled()))
    return CheckReport("gamma5-invariance", "numeric", all(x["pass"] for x in rows),
                       {"tolerance": ctx.tol, "precision": ctx.precision, "terms": terms}, rows)


def run_equivariance(tolerance=None, precision=None, terms=None, r=None, **_) -> CheckReport:
    ctx = _ctx(tolerance or 1e-6, precision, terms)
    rs = [1, 2, 3] if r is None else [Fraction(r)]
    rows = []
    for rv in rs:
        if Fraction(rv).denominator != 1 or rv <= 0:
            raise ValueError("equivariance is defined for positive integer r")
        rv = int(rv)
        for row in _numeric_rows(equivariance_report(rv, ctx), equivariance_report(rv, ctx.doubled())):
            row["r"] = rv
            rows.append(row)
    return CheckReport("equivariance", "numeric", all(x["pass"] for x in rows),
                       {"tolerance": ctx.tol, "precision": ctx.precision, "terms": terms}, rows)


CATALOG: dict[str, CheckDescriptor] = {
    d.name: d
    for d in [
        CheckDescriptor("ramanujan-e2", "exact", run_ramanujan, "12 D(E2) = E2^2 - E4"),
        CheckDescriptor("eta-e2", "exact", run_eta_e2, "E2 = 24 D(eta)/eta"),
        CheckDescriptor("hauptmodul-schwarz", "exact", run_hauptmodul, "S_q(t) = -(1/50) E4"),
        CheckDescriptor("rational-map-7-5", "exact", run_map_7_5, "t^2(t^5-7)/(7t^5+1), r = 2/5"),
        CheckDescriptor("rational-map-13-5", "exact", run_map_13_5, "t^3(t^10-39t^5-26)/(26t^10-39t^5-1), r = 3/5"),
        CheckDescriptor("ode-roundtrip", "exact", run_ode_roundtrip, "Frobenius bases and h -> (y1, y2)"),
        CheckDescriptor("wronskian", "exact", run_wronskian, "W = -r, single term"),
        CheckDescriptor("kk-residual", "exact", run_kk_residual, "eta^(2(k+1)) y solves the k-equation"),
        CheckDescriptor("exponent-probe", "exact", run_exponent_probe, "which eta power works"),
        CheckDescriptor("gamma5-invariance", "numeric", run_gamma5, "t(gamma tau) = t(tau) on Gamma(5)"),
        CheckDescriptor("equivariance", "numeric", run_equivariance, "cross-ratios of y2/y1"),
    ]
}
