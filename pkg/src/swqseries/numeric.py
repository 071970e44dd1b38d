"""Floating-point evaluation of truncated q-expansions on the upper
half-plane.  This is the one place the package leaves exact arithmetic:
the S- and T-transformation laws relate values at tau and -1/tau, which
no finite q-expansion can compare exactly, and the span of characters
plus tau-weighted theta derivatives is probed by numerical rank."""

from __future__ import annotations

import cmath
import math
import time
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import characters, forms
from . import qseries as qs
from .forms import ThetaParams
from .qseries import QSeries, RatLike, VerificationReport

__all__ = [
    "TauPoint",
    "eval_series",
    "verify_s_t_laws",
    "ns_space_rank",
    "t_map_ratios",
]

# Smallest tolerance double-precision residuals can certify.
_TOL_FLOOR = 1e-13

# Integer theta levels checked: 3 and 5 carry the half-integer grids
# 3/2 and 5/2 (doubling the exponent denominator identifies the two
# families term by term; the identification itself is an exact identity
# in the form suite), 6 and 10 are the even supercharacter grids.
_S_LEVELS = (3, 5, 6, 10)


@dataclass(frozen=True)
class TauPoint:
    """A point of the upper half-plane, so |q| = exp(-2 pi im) < 1."""

    re: float
    im: float

    def __post_init__(self):
        if not (math.isfinite(self.re) and math.isfinite(self.im)):
            raise ValueError("tau must be finite")
        if not self.im > 0:
            raise ValueError("tau must have positive imaginary part")

    @property
    def tau(self) -> complex:
        return complex(self.re, self.im)

    @property
    def q_abs(self) -> float:
        return math.exp(-2.0 * math.pi * self.im)


def _neg_inv(t: TauPoint) -> TauPoint:
    d = t.re * t.re + t.im * t.im
    return TauPoint(-t.re / d, t.im / d)


def _shifted(t: TauPoint, dx: float) -> TauPoint:
    return TauPoint(t.re + dx, t.im)


def eval_series(a: QSeries, tau: TauPoint, tol: float | None = None) -> tuple[complex, float]:
    """Value of the truncation at tau together with a tail bound.

    The bound is M |q|^(order + 1/denom) / (1 - |q|^(1/denom)) with M
    the largest retained coefficient magnitude (at least 1); it covers
    the dropped tail as long as later coefficients stay below M, which
    holds for every series this package evaluates at the orders the
    callers request.  With tol given, a bound above tol raises
    ValueError naming an order that would suffice.
    """
    log_q = 2.0 * math.pi * complex(-tau.im, tau.re)
    value = complex(0.0)
    big = 1.0
    for e, c in a.terms():
        cf = float(c)
        value += cf * cmath.exp(log_q * float(e))
        big = max(big, abs(cf))
    step = tau.q_abs ** (1.0 / a.denom)
    tail = big * tau.q_abs ** (float(a.order) + 1.0 / a.denom) / (1.0 - step)
    if tol is not None and tail > tol:
        need = math.log(tol * (1.0 - step) / big) / math.log(tau.q_abs)
        raise ValueError(
            f"tail bound {tail:.3e} exceeds tolerance {tol:.3e}; "
            f"order {need:.1f} would suffice"
        )
    return value, tail


def _law_report(
    identity_id: str,
    params: dict,
    order: Fraction,
    checks: list[tuple[int, float]],
    tol: float,
    started: float,
) -> VerificationReport:
    """checks holds (position, residual + tail) per sub-check; the first
    entry at or above tol fails the law and lands in first_mismatch as
    (position, achieved error, tolerance)."""
    bad = next((c for c in checks if not c[1] < tol), None)
    return VerificationReport(
        identity_id=identity_id,
        params=params,
        order=order,
        status="pass" if bad is None else "fail",
        first_mismatch=None if bad is None else (Fraction(bad[0]), Fraction(bad[1]), Fraction(tol)),
        runtime_ms=(time.perf_counter() - started) * 1000.0,
    )


def verify_s_t_laws(taus: list[TauPoint], order: RatLike, tol: float) -> list[VerificationReport]:
    """Residual checks of the transformation laws at each tau:

    eta(-1/tau) = sqrt(-i tau) eta(tau), eta(tau+1) = e^{i pi/12} eta(tau),
    Theta_{j,k}(-1/tau) = sqrt(-i tau/2k) sum_{j'=0}^{2k-1} e^{i pi j j'/k} Theta_{j',k}(tau),
    Theta_{j,k}(tau+2) = e^{i pi j^2/k} Theta_{j,k}(tau),

    the last two also for the weighted sums, whose law under
    tau -> -1/tau carries the extra factor (-tau).  Levels run over
    _S_LEVELS with j = 0..k; a law passes iff residual plus both tail
    bounds stays below tol at every point.  Tolerances under 1e-13 are
    rejected: double precision cannot certify them.
    """
    order = Fraction(order)
    if not tol >= _TOL_FLOOR:
        raise ValueError(f"tolerance must be at least {_TOL_FLOOR}")
    reports: list[VerificationReport] = []

    started = time.perf_counter()
    eta = forms.eta(order)
    checks = []
    for idx, t in enumerate(taus):
        lv, lt = eval_series(eta, _neg_inv(t), tol)
        rv, rt = eval_series(eta, t, tol)
        pref = cmath.sqrt(-1j * t.tau)
        checks.append((idx, abs(lv - pref * rv) + lt + abs(pref) * rt))
    reports.append(_law_report("eta-s-law", {}, order, checks, tol, started))

    started = time.perf_counter()
    phase = cmath.exp(1j * math.pi / 12)
    checks = []
    for idx, t in enumerate(taus):
        lv, lt = eval_series(eta, _shifted(t, 1.0), tol)
        rv, rt = eval_series(eta, t, tol)
        checks.append((idx, abs(lv - phase * rv) + lt + abs(phase) * rt))
    reports.append(_law_report("eta-t-law", {}, order, checks, tol, started))

    for k in _S_LEVELS:
        kf = Fraction(k)
        ths = [forms.theta(ThetaParams(jp, kf), order) for jp in range(2 * k)]
        dths = [forms.dtheta(ThetaParams(jp, kf), order) for jp in range(2 * k)]

        started = time.perf_counter()
        s_checks, ds_checks = [], []
        idx = 0
        for t in taus:
            ti = _neg_inv(t)
            tv = [eval_series(s, t, tol) for s in ths]
            dtv = [eval_series(s, t, tol) for s in dths]
            rtail = sum(v[1] for v in tv)
            drtail = sum(v[1] for v in dtv)
            pref = cmath.sqrt(-1j * t.tau / (2 * k))
            dpref = -t.tau * pref
            for j in range(k + 1):
                phases = [cmath.exp(1j * math.pi * j * jp / k) for jp in range(2 * k)]
                lv, lt = eval_series(ths[j], ti, tol)
                rv = sum(p * v[0] for p, v in zip(phases, tv))
                s_checks.append((idx, abs(lv - pref * rv) + lt + abs(pref) * rtail))
                lv, lt = eval_series(dths[j], ti, tol)
                rv = sum(p * v[0] for p, v in zip(phases, dtv))
                ds_checks.append((idx, abs(lv - dpref * rv) + lt + abs(dpref) * drtail))
                idx += 1
        reports.append(_law_report("theta-s-law", {"k": k}, order, s_checks, tol, started))
        reports.append(_law_report("dtheta-s-law", {"k": k}, order, ds_checks, tol, started))

        started = time.perf_counter()
        t_checks, dt_checks = [], []
        idx = 0
        for t in taus:
            t2 = _shifted(t, 2.0)
            for j in range(k + 1):
                ph = cmath.exp(1j * math.pi * j * j / k)
                lv, lt = eval_series(ths[j], t2, tol)
                rv, rt = eval_series(ths[j], t, tol)
                t_checks.append((idx, abs(lv - ph * rv) + lt + rt))
                lv, lt = eval_series(dths[j], t2, tol)
                rv, rt = eval_series(dths[j], t, tol)
                dt_checks.append((idx, abs(lv - ph * rv) + lt + rt))
                idx += 1
        reports.append(_law_report("theta-t2-law", {"k": k}, order, t_checks, tol, started))
        reports.append(_law_report("dtheta-t2-law", {"k": k}, order, dt_checks, tol, started))

    return reports


def ns_space_rank(
    m: int, taus: list[TauPoint], order: RatLike, tol: float = 1e-8
) -> tuple[int, float]:
    """Numerical rank of the (3m+1) x (3m+1) matrix of values of the
    2m+1 characters and the m functions tau (f/eta) dTheta_{j,(2m+1)/2},
    j = 1..m, at 3m+1 distinct points.  Rank counts singular values
    above 1e-6 times the largest; the smallest is returned alongside.
    """
    if m < 1:
        raise ValueError("m must be positive")
    n = 3 * m + 1
    if len(taus) != n:
        raise ValueError(f"need {n} tau points")
    if len(set(taus)) != n:
        raise ValueError("tau points must be distinct")
    order = Fraction(order)
    p = 2 * m + 1
    cols = [characters.sw_char(mod, order) for mod in characters.all_module_ids(m)]
    fe = characters.f_over_eta(order)
    for j in range(1, m + 1):
        cols.append(qs.mul(fe, forms.dtheta(ThetaParams(j, Fraction(p, 2)), order)))
    mat = np.empty((n, n), dtype=complex)
    for r, t in enumerate(taus):
        for c, series in enumerate(cols):
            value, _ = eval_series(series, t, tol)
            mat[r, c] = t.tau * value if c > 2 * m else value
    sv = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(sv > 1e-6 * sv[0]))
    return rank, float(sv[-1])


def t_map_ratios(
    m: int, tau: TauPoint, order: RatLike, tol: float | None = None
) -> dict[str, complex]:
    """Empirical ratio character(tau+1) / supercharacter(tau) for each
    module.  The shift by one maps the character span into the
    supercharacter span module by module; the scalars are reported for
    inspection and asserted nowhere.
    """
    order = Fraction(order)
    shifted = _shifted(tau, 1.0)
    out: dict[str, complex] = {}
    for mod in characters.all_module_ids(m):
        num, _ = eval_series(characters.sw_char(mod, order), shifted, tol)
        den, _ = eval_series(characters.sw_superchar_theta(mod, order), tau, tol)
        out[mod.label] = num / den
    return out
