"""Dedekind eta, the Weber functions, and the indexed theta series
Theta_{j,k} = sum_n q^{(2kn+j)^2/4k} with their weighted variants, together
with an exact identity suite relating them."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from . import qseries as qs
from .qseries import QSeries, RatLike, VerificationReport

__all__ = [
    "ThetaParams",
    "eta",
    "weber",
    "theta",
    "dtheta",
    "eta_scaled",
    "verify_form_identities",
    "FORM_IDENTITY_IDS",
]


@dataclass(frozen=True)
class ThetaParams:
    """Index pair (j, k); k a positive integer or half-integer."""

    j: int
    k: Fraction

    def __post_init__(self):
        k = Fraction(self.k)
        object.__setattr__(self, "k", k)
        if k <= 0:
            raise ValueError("k must be positive")
        if k.denominator not in (1, 2):
            raise ValueError("k must be an integer or half-integer")


@lru_cache(maxsize=None)
def eta(order: RatLike) -> QSeries:
    """q^{1/24} prod_{n>=1} (1 - q^n), exact to the given order."""
    order_f = Fraction(order)
    if order_f <= 0:
        raise ValueError("order must be positive")
    prod = qs.pochhammer(1, 1, -1, None, order_f)
    return qs.truncate(qs.shift(prod, Fraction(1, 24)), order_f)


@lru_cache(maxsize=None)
def weber(which: str, order: RatLike) -> QSeries:
    """One of the three Weber functions:

    f  = q^{-1/48} prod_{n>=0} (1 + q^{n+1/2})
    f1 = q^{-1/48} prod_{n>=1} (1 - q^{n-1/2})
    f2 = q^{1/24}  prod_{n>=1} (1 + q^n)
    """
    order_f = Fraction(order)
    if which == "f":
        lead = Fraction(-1, 48)
        prod = qs.pochhammer(Fraction(1, 2), 1, 1, None, order_f - lead)
    elif which == "f1":
        lead = Fraction(-1, 48)
        prod = qs.pochhammer(Fraction(1, 2), 1, -1, None, order_f - lead)
    elif which == "f2":
        lead = Fraction(1, 24)
        prod = qs.pochhammer(1, 1, 1, None, order_f - lead)
    else:
        raise ValueError(f"unknown Weber function {which!r}")
    if order_f <= lead:
        raise ValueError("order must exceed the leading exponent")
    return qs.truncate(qs.shift(prod, lead), order_f)


def _theta_sum(p: ThetaParams, order: Fraction, weighted: bool) -> QSeries:
    # exponent (Kn+j)^2 / (2K) with K = 2k an integer; lattice (1/2K) Z
    K = int(2 * Fraction(p.k))
    denom = 2 * K
    coeffs: dict[int, Fraction] = {}

    def visit(arg: int) -> None:
        w = Fraction(arg) if weighted else Fraction(1)
        key = arg * arg
        coeffs[key] = coeffs.get(key, Fraction(0)) + w

    limit = order * denom
    n = 0
    while True:
        arg = K * n + p.j
        if arg * arg > limit and arg >= 0:
            break
        if arg * arg <= limit:
            visit(arg)
        n += 1
    n = -1
    while True:
        arg = K * n + p.j
        if arg * arg > limit and arg <= 0:
            break
        if arg * arg <= limit:
            visit(arg)
        n -= 1
    return qs._normalized(denom, coeffs, order)


def theta(p: ThetaParams, order: RatLike) -> QSeries:
    """Theta_{j,k}: sum over n in Z of q^{(2kn+j)^2/4k}."""
    return _theta_sum(p, Fraction(order), weighted=False)


def dtheta(p: ThetaParams, order: RatLike) -> QSeries:
    """The (2kn+j)-weighted variant of theta."""
    return _theta_sum(p, Fraction(order), weighted=True)


def eta_scaled(r: RatLike, order: RatLike) -> QSeries:
    """eta with q replaced by q^r (the tau -> r*tau substitution)."""
    r_f, order_f = Fraction(r), Fraction(order)
    base_order = order_f / r_f + 1
    return qs.truncate(qs.substitute_power(eta(base_order), r_f), order_f)


# -- identity suite -----------------------------------------------------------


def _pair_dtheta_eta_cube(order: Fraction) -> tuple[QSeries, QSeries]:
    n = order + 2
    lhs = dtheta(ThetaParams(1, Fraction(3, 2)), n)
    e = eta(n)
    f = weber("f", n)
    rhs = qs.mul(qs.mul(qs.mul(e, e), e), qs.invert(qs.mul(f, f)))
    return lhs, rhs


def _pair_weber_eta_quotient(order: Fraction) -> tuple[QSeries, QSeries]:
    n = order + 2
    lhs = weber("f", n)
    e = eta(n)
    rhs = qs.mul(
        qs.mul(e, e),
        qs.invert(qs.mul(eta_scaled(Fraction(1, 2), n), eta_scaled(2, n))),
    )
    return lhs, rhs


def _pair_odd_even_split(order: Fraction) -> tuple[QSeries, QSeries]:
    # prod(1+q^{n-1/2}) / prod(1-q^n)  =  1 / [prod(1-q^{n/2})(1+q^n)]
    n = order + 2
    lhs = qs.mul(
        qs.pochhammer(Fraction(1, 2), 1, 1, None, n),
        qs.invert(qs.pochhammer(1, 1, -1, None, n)),
    )
    rhs = qs.invert(
        qs.mul(
            qs.pochhammer(Fraction(1, 2), Fraction(1, 2), -1, None, n),
            qs.pochhammer(1, 1, 1, None, n),
        )
    )
    return lhs, rhs


def _pair_eta_half_inverse(order: Fraction) -> tuple[QSeries, QSeries]:
    # 1/eta(tau/2) = (f/eta) * f2
    n = order + 2
    lhs = qs.invert(eta_scaled(Fraction(1, 2), n))
    rhs = qs.mul(qs.mul(weber("f", n), qs.invert(eta(n))), weber("f2", n))
    return lhs, rhs


def _pair_theta_half_level(mm: int, j: int, order: Fraction) -> tuple[QSeries, QSeries]:
    n = order + 2
    lhs = qs.substitute_power(theta(ThetaParams(2 * j, Fraction(2 * mm + 1)), 2 * n), Fraction(1, 2))
    rhs = theta(ThetaParams(j, Fraction(2 * mm + 1, 2)), n)
    return lhs, rhs


def _pair_dtheta_half_level(mm: int, j: int, order: Fraction) -> tuple[QSeries, QSeries]:
    n = order + 2
    lhs = qs.substitute_power(dtheta(ThetaParams(2 * j, Fraction(2 * mm + 1)), 2 * n), Fraction(1, 2))
    rhs = qs.scale(dtheta(ThetaParams(j, Fraction(2 * mm + 1, 2)), n), 2)
    return lhs, rhs


def _pair_theta_negate(j: int, k: Fraction, order: Fraction) -> tuple[QSeries, QSeries]:
    return theta(ThetaParams(j, k), order + 1), theta(ThetaParams(-j, k), order + 1)


def _pair_theta_reflect(j: int, k: Fraction, order: Fraction) -> tuple[QSeries, QSeries]:
    return (
        theta(ThetaParams(j, k), order + 1),
        theta(ThetaParams(int(2 * k) - j, k), order + 1),
    )


def _suite(order: Fraction) -> list[tuple[str, dict, Callable[[], tuple[QSeries, QSeries]]]]:
    items: list[tuple[str, dict, Callable[[], tuple[QSeries, QSeries]]]] = [
        ("dtheta-eta-weber-cube", {}, lambda: _pair_dtheta_eta_cube(order)),
        ("weber-eta-quotient", {}, lambda: _pair_weber_eta_quotient(order)),
        ("odd-even-split", {}, lambda: _pair_odd_even_split(order)),
        ("eta-half-inverse", {}, lambda: _pair_eta_half_inverse(order)),
    ]
    for mm in (1, 2, 3):
        for j in range(0, 2 * mm + 2):
            items.append(
                (
                    "theta-half-level",
                    {"m": mm, "j": j},
                    lambda mm=mm, j=j: _pair_theta_half_level(mm, j, order),
                )
            )
            items.append(
                (
                    "dtheta-half-level",
                    {"m": mm, "j": j},
                    lambda mm=mm, j=j: _pair_dtheta_half_level(mm, j, order),
                )
            )
    for j, k in ((1, Fraction(3, 2)), (2, Fraction(3, 2)), (1, Fraction(5, 2)), (2, Fraction(6))):
        items.append(
            ("theta-symmetry-negate", {"j": j, "k": k}, lambda j=j, k=k: _pair_theta_negate(j, k, order))
        )
        items.append(
            ("theta-symmetry-reflect", {"j": j, "k": k}, lambda j=j, k=k: _pair_theta_reflect(j, k, order))
        )
    return items


FORM_IDENTITY_IDS = [
    "dtheta-eta-weber-cube",
    "weber-eta-quotient",
    "odd-even-split",
    "eta-half-inverse",
    "theta-half-level",
    "dtheta-half-level",
    "theta-symmetry-negate",
    "theta-symmetry-reflect",
]


def verify_form_identities(order: RatLike) -> list[VerificationReport]:
    """Run the fixed identity suite at the given order."""
    order_f = Fraction(order)
    if order_f < 10:
        raise ValueError("order must be at least 10")
    reports = []
    for identity_id, params, build in _suite(order_f):
        t0 = time.perf_counter()
        lhs, rhs = build()
        reports.append(qs.compare_report(identity_id, params, lhs, rhs, order_f, started=t0))
    return reports
