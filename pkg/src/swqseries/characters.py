"""Theta-form characters and supercharacters of the irreducible SW(m)
modules, irreducible Neveu-Schwarz characters, and the decomposition
cross-checks between them."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import forms, qseries as qs
from .forms import ThetaParams
from .qseries import QSeries, RatLike, VerificationReport

__all__ = [
    "SWModuleId",
    "CentralData",
    "all_module_ids",
    "central_data",
    "f_over_eta",
    "f2_over_eta",
    "ns_irr_char",
    "sw_char",
    "sw_superchar_theta",
    "char_by_decomposition",
    "superchar_leading_shift",
    "verify_character_suite",
]


@dataclass(frozen=True)
class SWModuleId:
    """One of the 2m+1 irreducible modules: lambda:1 .. lambda:m+1 or
    pi:1 .. pi:m."""

    m: int
    kind: str
    index: int

    def __post_init__(self):
        if self.m < 1:
            raise ValueError("m must be at least 1")
        if self.kind == "lambda":
            if not 1 <= self.index <= self.m + 1:
                raise ValueError("lambda index out of range")
        elif self.kind == "pi":
            if not 1 <= self.index <= self.m:
                raise ValueError("pi index out of range")
        else:
            raise ValueError(f"unknown module kind {self.kind!r}")

    @property
    def i(self) -> int:
        """The parameter i: lambda:(i+1) has i in 0..m, pi:(m-i) has i in 0..m-1."""
        if self.kind == "lambda":
            return self.index - 1
        return self.m - self.index

    @property
    def label(self) -> str:
        return f"{self.kind}:{self.index}"


def all_module_ids(m: int) -> list[SWModuleId]:
    ids = [SWModuleId(m, "lambda", j) for j in range(1, m + 2)]
    ids += [SWModuleId(m, "pi", j) for j in range(1, m + 1)]
    return ids


@dataclass(frozen=True)
class CentralData:
    """Central charge and conformal weights h^{r,s} for fixed m."""

    m: int
    c: Fraction
    weights: dict[tuple[int, int], Fraction] = field(compare=False)

    def h(self, r: int, s: int) -> Fraction:
        p = 2 * self.m + 1
        return Fraction((s * p - r) ** 2 - (2 * self.m) ** 2, 8 * p)


@lru_cache(maxsize=None)
def central_data(m: int) -> CentralData:
    if m < 1:
        raise ValueError("m must be at least 1")
    p = 2 * m + 1
    c = Fraction(3, 2) * (1 - Fraction(8 * m * m, p))
    cd = CentralData(m, c, {})
    weights = {(2 * i + 1, 1): cd.h(2 * i + 1, 1) for i in range(3 * m + 1)}
    return CentralData(m, c, weights)


@lru_cache(maxsize=None)
def f_over_eta(order: RatLike) -> QSeries:
    """f/eta = q^{-1/16} prod (1+q^{n-1/2}) / prod (1-q^n)."""
    n = Fraction(order) + 1
    quot = qs.mul(forms.weber("f", n), qs.invert(forms.eta(n)))
    return qs.truncate(quot, Fraction(order))


@lru_cache(maxsize=None)
def f2_over_eta(order: RatLike) -> QSeries:
    """f2/eta = prod (1+q^n) / prod (1-q^n)."""
    n = Fraction(order) + 1
    quot = qs.mul(forms.weber("f2", n), qs.invert(forms.eta(n)))
    return qs.truncate(quot, Fraction(order))


def ns_irr_char(m: int, i: int, n: int, order: RatLike) -> QSeries:
    """Character of the irreducible Neveu-Schwarz Virasoro module with
    central charge c(m) and lowest weight h^{2i+1,2n+1}:

    q^{m^2/(2(2m+1))} * (f/eta) * (q^{h^{2i+1,2n+1}} - q^{h^{2i+1,-2n-1}})
    """
    if not (m >= 1 and 0 <= i <= m and n >= 0):
        raise ValueError("parameter out of range")
    cd = central_data(m)
    offset = Fraction(m * m, 2 * (2 * m + 1))
    order_f = Fraction(order)
    inner_order = order_f - offset + Fraction(1, 16) + 1
    terms = [
        (e, s)
        for e, s in ((cd.h(2 * i + 1, 2 * n + 1), 1), (cd.h(2 * i + 1, -2 * n - 1), -1))
        if e <= inner_order
    ]
    two = qs.make_series(terms, inner_order)
    prod = qs.mul(f_over_eta(inner_order), two)
    return qs.truncate(qs.shift(prod, offset), order_f)


def _char_combo(module: SWModuleId, order: Fraction) -> QSeries:
    m, i = module.m, module.i
    p = ThetaParams(m - i, Fraction(2 * m + 1, 2))
    th = forms.theta(p, order)
    dth = forms.dtheta(p, order)
    if module.kind == "lambda":
        return qs.add(
            qs.scale(th, Fraction(2 * i + 1, 2 * m + 1)),
            qs.scale(dth, Fraction(2, 2 * m + 1)),
        )
    return qs.add(
        qs.scale(th, Fraction(2 * m - 2 * i, 2 * m + 1)),
        qs.scale(dth, Fraction(-2, 2 * m + 1)),
    )


def sw_char(module: SWModuleId, order: RatLike) -> QSeries:
    """Theta-form character (f/eta) times the level-(2m+1)/2 theta combination."""
    order_f = Fraction(order)
    combo = _char_combo(module, order_f + Fraction(1, 16) + 1)
    prod = qs.mul(f_over_eta(order_f + 1), combo)
    return qs.truncate(prod, order_f)


def sw_superchar_theta(module: SWModuleId, order: RatLike) -> QSeries:
    """Supercharacter in theta form: (f2/eta) times the level-2(2m+1)
    theta combination, implemented exactly as displayed."""
    order_f = Fraction(order)
    m, i = module.m, module.i
    k2 = Fraction(2 * (2 * m + 1))
    n = order_f + 1
    th = qs.sub(
        forms.theta(ThetaParams(2 * (m - i), k2), n),
        forms.theta(ThetaParams(2 * (m + i + 1), k2), n),
    )
    dth = qs.sub(
        forms.dtheta(ThetaParams(2 * (m - i), k2), n),
        forms.dtheta(ThetaParams(2 * (m + i + 1), k2), n),
    )
    if module.kind == "lambda":
        combo = qs.add(
            qs.scale(th, Fraction(2 * i + 1, 2 * m + 1)),
            qs.scale(dth, Fraction(1, 2 * m + 1)),
        )
    else:
        combo = qs.add(
            qs.scale(th, Fraction(2 * m - 2 * i, 2 * m + 1)),
            qs.scale(dth, Fraction(-1, 2 * m + 1)),
        )
    return qs.truncate(qs.mul(f2_over_eta(n), combo), order_f)


def module_weight(module: SWModuleId) -> Fraction:
    """Lowest conformal weight of the module."""
    cd = central_data(module.m)
    if module.kind == "lambda":
        return cd.h(2 * module.i + 1, 1)
    return cd.h(2 * (2 * module.m + 1 + module.i) + 1, 1)


def char_by_decomposition(module: SWModuleId, order: RatLike) -> QSeries:
    """Sum of (2n+1) copies of the n-th irreducible NS character; valid
    for the lambda variants only."""
    if module.kind != "lambda":
        raise ValueError("decomposition form available for lambda variants only")
    m, i = module.m, module.i
    cd = central_data(m)
    order_f = Fraction(order)
    total = qs.zero(order_f)
    n = 0
    while cd.h(2 * i + 1, 2 * n + 1) - cd.c / 24 <= order_f:
        total = qs.add(total, qs.scale(ns_irr_char(m, i, n, order_f), 2 * n + 1))
        n += 1
    return total


def superchar_leading_shift(module: SWModuleId, order: RatLike = 10) -> Fraction:
    """Leading exponent of the displayed supercharacter minus
    (h - c/24); reported as data, never silently corrected."""
    cd = central_data(module.m)
    sc = sw_superchar_theta(module, order)
    lead, _ = sc.leading()
    return lead - (module_weight(module) - cd.c / 24)


def _integrality_report(
    identity_id: str, params: dict, s: QSeries, started: float
) -> VerificationReport:
    mismatch = None
    for e, c in s.terms():
        if c.denominator != 1 or c < 0:
            nearest = Fraction(max(0, round(c)))
            mismatch = (e, c, nearest)
            break
    ms = (time.perf_counter() - started) * 1000.0
    return VerificationReport(
        identity_id,
        params,
        s.order,
        "pass" if mismatch is None else "fail",
        mismatch,
        ms,
    )


def verify_character_suite(m: int, order: RatLike) -> list[VerificationReport]:
    """Decomposition, pair-sum, and coefficient checks for all modules."""
    if m < 1:
        raise ValueError("m must be at least 1")
    order_f = Fraction(order)
    reports = []
    for i in range(m + 1):
        module = SWModuleId(m, "lambda", i + 1)
        t0 = time.perf_counter()
        lhs = char_by_decomposition(module, order_f)
        rhs = sw_char(module, order_f)
        reports.append(
            qs.compare_report(
                "char-decomposition",
                {"m": m, "module": module.label},
                lhs,
                rhs,
                order_f,
                started=t0,
            )
        )
    for i in range(m):
        t0 = time.perf_counter()
        lam = sw_char(SWModuleId(m, "lambda", i + 1), order_f)
        pi = sw_char(SWModuleId(m, "pi", m - i), order_f)
        rhs = qs.truncate(
            qs.mul(
                f_over_eta(order_f + 1),
                forms.theta(ThetaParams(m - i, Fraction(2 * m + 1, 2)), order_f + 2),
            ),
            order_f,
        )
        reports.append(
            qs.compare_report(
                "char-pair-sum",
                {"m": m, "i": i},
                qs.add(lam, pi),
                rhs,
                order_f,
                started=t0,
            )
        )
    for module in all_module_ids(m):
        t0 = time.perf_counter()
        reports.append(
            _integrality_report(
                "char-integrality",
                {"m": m, "module": module.label},
                sw_char(module, order_f),
                t0,
            )
        )
    return reports
