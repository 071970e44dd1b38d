"""Exact univariate polynomials over the rationals and the polynomial
identities attached to the genus-zero singlet curve: the curve data
with its parametrization, the weight-root polynomial f_m, the
alternating binomial-sum polynomial with its two factored forms, the
Lagrange interpolation polynomial through the upper weight points, and
the sign recursion that certifies its nonvanishing."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import characters
from .qseries import RatLike, VerificationReport

__all__ = [
    "RatPoly",
    "SingletCurve",
    "poly",
    "poly_report",
    "add",
    "sub",
    "mul",
    "scale",
    "compose",
    "shift_arg",
    "from_roots",
    "binom_poly",
    "lagrange",
    "singlet_curve",
    "f_m_poly",
    "f_m_alt_poly",
    "phi_tilde",
    "a_bar_constant",
    "b_constant",
    "verify_phi_identities",
    "interpolation_L",
    "r_poly",
    "verify_s_properties",
]


@dataclass(frozen=True)
class RatPoly:
    """Dense polynomial, lowest degree first; () is the zero polynomial."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.coeffs and self.coeffs[-1] == 0:
            raise ValueError("trailing coefficient must be nonzero")

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def __call__(self, t: RatLike) -> Fraction:
        t = Fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


def poly(vals: Sequence[RatLike]) -> RatPoly:
    """Build from a coefficient sequence, dropping trailing zeros."""
    cs = [Fraction(v) for v in vals]
    while cs and cs[-1] == 0:
        cs.pop()
    return RatPoly(tuple(cs))


def add(a: RatPoly, b: RatPoly) -> RatPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    return poly([a.coeff(k) + b.coeff(k) for k in range(n)])


def sub(a: RatPoly, b: RatPoly) -> RatPoly:
    n = max(len(a.coeffs), len(b.coeffs))
    return poly([a.coeff(k) - b.coeff(k) for k in range(n)])


def scale(a: RatPoly, c: RatLike) -> RatPoly:
    c = Fraction(c)
    return poly([x * c for x in a.coeffs])


def mul(a: RatPoly, b: RatPoly) -> RatPoly:
    if a.is_zero() or b.is_zero():
        return poly([])
    out = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
    for i, x in enumerate(a.coeffs):
        for j, y in enumerate(b.coeffs):
            out[i + j] += x * y
    return poly(out)


def compose(a: RatPoly, b: RatPoly) -> RatPoly:
    """a(b(t)) by Horner's rule."""
    acc = poly([])
    for c in reversed(a.coeffs):
        acc = add(mul(acc, b), poly([c]))
    return acc


def shift_arg(a: RatPoly, c: RatLike) -> RatPoly:
    """a(t + c)."""
    return compose(a, poly([c, 1]))


def from_roots(roots: Sequence[RatLike]) -> RatPoly:
    """Monic polynomial with the given roots (with multiplicity)."""
    acc = poly([1])
    for r in roots:
        acc = mul(acc, poly([-Fraction(r), 1]))
    return acc


def binom_poly(r: int, arg_shift: RatLike = 0) -> RatPoly:
    """binom(t + arg_shift, r) as the falling-factorial polynomial
    (t + arg_shift)(t + arg_shift - 1)...(t + arg_shift - r + 1)/r!."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    shift = Fraction(arg_shift)
    return scale(from_roots([j - shift for j in range(r)]), Fraction(1, math.factorial(r)))


def lagrange(points: Sequence[tuple[RatLike, RatLike]]) -> RatPoly:
    """Interpolation polynomial through points with distinct abscissae."""
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("abscissae must be distinct")
    acc = poly([])
    for i, (_, y) in enumerate(points):
        num = from_roots([x for j, x in enumerate(xs) if j != i])
        den = num(xs[i])
        acc = add(acc, scale(num, Fraction(y) / den))
    return acc


def poly_report(
    identity_id: str, params: dict[str, object], a: RatPoly, b: RatPoly, started: float
) -> VerificationReport:
    mismatch = None
    for k in range(max(len(a.coeffs), len(b.coeffs))):
        if a.coeff(k) != b.coeff(k):
            mismatch = (Fraction(k), a.coeff(k), b.coeff(k))
            break
    return VerificationReport(
        identity_id=identity_id,
        params=params,
        order=Fraction(max(a.degree(), b.degree(), 0)),
        status="pass" if mismatch is None else "fail",
        first_mismatch=mismatch,
        runtime_ms=(time.perf_counter() - started) * 1000.0,
    )


# -- singlet curve and weight polynomials -------------------------------------


@dataclass(frozen=True)
class SingletCurve:
    """Genus-zero curve y^2 = p_x(x) with its rational parametrization
    x = x_param(t), y = y_param(t)."""

    m: int
    Cm: Fraction
    p_x: RatPoly
    x_param: RatPoly
    y_param: RatPoly


def _weights(m: int, count: int) -> list[Fraction]:
    cd = characters.central_data(m)
    return [cd.h(2 * i + 1, 1) for i in range(count)]


def _x_param(m: int) -> RatPoly:
    return scale(poly([0, -2 * m, 1]), Fraction(1, 2 * (2 * m + 1)))


def singlet_curve(m: int) -> SingletCurve:
    """Curve data; the parametrization identity
    y_param^2 = p_x(x_param) is checked symbolically at construction."""
    if m < 1:
        raise ValueError("m must be positive")
    Cm = Fraction((2 * (2 * m + 1)) ** (2 * m + 1), math.factorial(2 * m + 1) ** 2)
    p_x = scale(from_roots(_weights(m, 2 * m + 1)), Cm)
    x_param = _x_param(m)
    y_param = binom_poly(2 * m + 1)
    if not sub(mul(y_param, y_param), compose(p_x, x_param)).is_zero():
        raise AssertionError("curve parametrization check failed")
    return SingletCurve(m, Cm, p_x, x_param, y_param)


def f_m_poly(m: int) -> RatPoly:
    """Monic polynomial of degree 3m+1 whose roots are the weights
    h^{2i+1,1} for i = 0..3m."""
    if m < 1:
        raise ValueError("m must be positive")
    return from_roots(_weights(m, 3 * m + 1))


def f_m_alt_poly(m: int) -> RatPoly:
    """The same polynomial assembled from the squared-factor form:
    (x - h^{2m+1,1}) prod_{i<m} (x - h^{2i+1,1})^2
    prod_{i=2m+1..3m} (x - h^{2i+1,1})."""
    if m < 1:
        raise ValueError("m must be positive")
    ws = _weights(m, 3 * m + 1)
    roots = [ws[m]]
    for i in range(m):
        roots += [ws[i], ws[i]]
    roots += ws[2 * m + 1 :]
    return from_roots(roots)


# -- the alternating binomial-sum polynomial ----------------------------------


def phi_tilde(m: int) -> RatPoly:
    """sum_{k=0}^{2m} (-1)^k binom(2m,k) binom(t,4m+1-k) binom(t,2m+1+k)."""
    if m < 1:
        raise ValueError("m must be positive")
    acc = poly([])
    for k in range(2 * m + 1):
        term = mul(binom_poly(4 * m + 1 - k), binom_poly(2 * m + 1 + k))
        acc = add(acc, scale(term, (-1) ** k * math.comb(2 * m, k)))
    return acc


def a_bar_constant(m: int) -> Fraction:
    """(-1)^m binom(2m,m) / binom(4m+1,m)."""
    return Fraction((-1) ** m * math.comb(2 * m, m), math.comb(4 * m + 1, m))


def b_constant(m: int) -> Fraction:
    """(-1)^m binom(2m,m) (2(2m+1))^{3m+1} / (binom(4m+1,m) ((3m+1)!)^2)."""
    num = (-1) ** m * math.comb(2 * m, m) * (2 * (2 * m + 1)) ** (3 * m + 1)
    den = math.comb(4 * m + 1, m) * math.factorial(3 * m + 1) ** 2
    return Fraction(num, den)


def verify_phi_identities(m: int) -> list[VerificationReport]:
    """The binomial-sum polynomial against its two factored forms: the
    product binom(t,3m+1)binom(t+m,3m+1) scaled by a_bar_constant, and
    the composition b_constant * f_m(x_param(t))."""
    if m < 1:
        raise ValueError("m must be positive")
    phi = phi_tilde(m)
    t0 = time.perf_counter()
    product = scale(
        mul(binom_poly(3 * m + 1), binom_poly(3 * m + 1, arg_shift=m)), a_bar_constant(m)
    )
    reports = [poly_report("phi-binom-product", {"m": m}, phi, product, t0)]
    t0 = time.perf_counter()
    composition = scale(compose(f_m_poly(m), _x_param(m)), b_constant(m))
    reports.append(poly_report("phi-fm-composition", {"m": m}, phi, composition, t0))
    return reports


# -- interpolation polynomial and the sign recursion --------------------------


def interpolation_L(m: int) -> RatPoly:
    """Lagrange polynomial through (h^{2i+1,1}, binom(i,2m+1)) for
    i = 2m+1..3m; degree m-1."""
    if m < 1:
        raise ValueError("m must be positive")
    cd = characters.central_data(m)
    points = [
        (cd.h(2 * i + 1, 1), Fraction(math.comb(i, 2 * m + 1)))
        for i in range(2 * m + 1, 3 * m + 1)
    ]
    return lagrange(points)


def _r_closed_form(m: int) -> RatPoly:
    # (1/(2m+1)!) sum_i c_i [(t-2m+i) - (t-i)] prod_{j != i} (t-j)(t-2m+j)
    # over i = 2m+1..3m, with
    # c_i = (i!)^2 (-1)^{i+m} / ((i-2m-1)!^2 (3m-i)! (i+m)!)
    acc = poly([])
    idx = range(2 * m + 1, 3 * m + 1)
    for i in idx:
        c = Fraction(
            math.factorial(i) ** 2 * (-1) ** (i + m),
            math.factorial(i - 2 * m - 1) ** 2
            * math.factorial(3 * m - i)
            * math.factorial(i + m),
        )
        rest = from_roots([j for j in idx if j != i] + [2 * m - j for j in idx if j != i])
        acc = add(acc, scale(rest, c * (2 * i - 2 * m)))
    return scale(acc, Fraction(1, math.factorial(2 * m + 1)))


def r_poly(m: int) -> RatPoly:
    """interpolation_L composed with the curve's x-parametrization;
    checked at construction against the closed-form expansion."""
    r = compose(interpolation_L(m), _x_param(m))
    if not sub(r, _r_closed_form(m)).is_zero():
        raise AssertionError("closed form for the composed interpolant failed")
    return r


def _s_denominator(m: int) -> RatPoly:
    idx = range(2 * m + 1, 3 * m + 1)
    return from_roots([j for j in idx] + [2 * m - j for j in idx])


def verify_s_properties(m: int) -> VerificationReport:
    """One report covering: the three-term recursion
    s(t)(m+t)(2m+1-t)^2 = 2(m+1-t)(2m^2+2tm-2-t^2+2t)s(t-1)
                          + (t-1)^2(3m+2-t)s(t-2)
    for s = r/denominator as an exact rational-function identity
    (denominators cleared), the sign conditions s(0) < 0 and s(1) < 0,
    and interpolation_L being nonzero at h^{2i+1,1} for i = 0..m.

    On failure, first_mismatch holds (coefficient index, lhs, rhs) for
    the recursion, (t, s(t), 0) for a sign check, or (weight, value, 0)
    for a vanishing interpolant value."""
    if m < 1:
        raise ValueError("m must be positive")
    t0 = time.perf_counter()
    params: dict[str, object] = {"m": m}
    r = r_poly(m)
    den = _s_denominator(m)
    r1, den1 = shift_arg(r, -1), shift_arg(den, -1)
    r2, den2 = shift_arg(r, -2), shift_arg(den, -2)

    lhs_w = mul(poly([m, 1]), mul(poly([2 * m + 1, -1]), poly([2 * m + 1, -1])))
    mid_w = scale(
        mul(poly([m + 1, -1]), poly([2 * m * m - 2, 2 * m + 2, -1])), 2
    )
    last_w = mul(mul(poly([-1, 1]), poly([-1, 1])), poly([3 * m + 2, -1]))

    lhs = mul(mul(lhs_w, r), mul(den1, den2))
    rhs = add(
        mul(mul(mid_w, r1), mul(den, den2)),
        mul(mul(last_w, r2), mul(den, den1)),
    )

    def report(mismatch):
        return VerificationReport(
            identity_id="s-properties",
            params=params,
            order=Fraction(max(lhs.degree(), rhs.degree(), 0)),
            status="pass" if mismatch is None else "fail",
            first_mismatch=mismatch,
            runtime_ms=(time.perf_counter() - t0) * 1000.0,
        )

    for k in range(max(len(lhs.coeffs), len(rhs.coeffs))):
        if lhs.coeff(k) != rhs.coeff(k):
            return report((Fraction(k), lhs.coeff(k), rhs.coeff(k)))
    for t in (0, 1):
        value = r(t) / den(t)
        if not value < 0:
            return report((Fraction(t), value, Fraction(0)))
    L = interpolation_L(m)
    cd = characters.central_data(m)
    for i in range(m + 1):
        w = cd.h(2 * i + 1, 1)
        if L(w) == 0:
            return report((w, Fraction(0), Fraction(0)))
    return report(None)
