"""The quadruple binomial sum G_m(t): exact evaluation, interpolation
to a polynomial under the proven degree bound, comparison against the
conjectured closed form binom(2m,m)^2 binom(t+m,4m+1), and the mod-p
residue check at t = 3m+1."""

from __future__ import annotations

import math
import time
from fractions import Fraction

from . import zhupoly as zp
from .qseries import VerificationReport
from .zhupoly import RatPoly

__all__ = [
    "gm_value",
    "gm_poly",
    "verify_gm_conjecture",
    "gm_mod_p",
    "extract_Am",
]


def _binom(a: int, b: int) -> int:
    """Falling-factorial binomial: a(a-1)...(a-b+1)/b!, zero for b < 0."""
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b)
    return (-1) ** b * math.comb(b - a - 1, b)


def gm_value(m: int, t: int) -> Fraction:
    """Exact value of the quadruple sum at integer t."""
    if m < 1:
        raise ValueError("m must be positive")
    p = 2 * m + 1
    total = 0
    for l in range(1, p + 1):
        cl = math.comb(p, l)
        for i in range(l):
            for j in range(p + i - l + 1):
                cj = _binom(-p, j)
                for k in range(l - i):
                    term = (
                        cl
                        * cj
                        * _binom(-p, k)
                        * _binom(2 * m - t, j + k + p)
                        * _binom(t, i - j - l + p)
                        * _binom(t, l - k - 1 - i)
                    )
                    if (j + k + l) % 2:
                        total -= term
                    else:
                        total += term
    return Fraction(total)


def gm_poly(m: int) -> RatPoly:
    """The unique polynomial of degree at most 4m+1 through the values
    at t = 0..4m+1, consistency-checked at t = 4m+2 and 4m+3."""
    if m < 1:
        raise ValueError("m must be positive")
    points = [(Fraction(t), gm_value(m, t)) for t in range(4 * m + 2)]
    g = zp.lagrange(points)
    for t in (4 * m + 2, 4 * m + 3):
        if g(t) != gm_value(m, t):
            raise RuntimeError(f"degree bound violated at t = {t} for m = {m}")
    return g


def verify_gm_conjecture(m: int) -> VerificationReport:
    """gm_poly against binom(2m,m)^2 binom(t+m,4m+1), coefficient by
    coefficient."""
    t0 = time.perf_counter()
    g = gm_poly(m)
    closed = zp.scale(zp.binom_poly(4 * m + 1, arg_shift=m), math.comb(2 * m, m) ** 2)
    return zp.poly_report("gm-conjecture", {"m": m}, g, closed, t0)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def gm_mod_p(m: int) -> VerificationReport:
    """Residue of the value at t = 3m+1 modulo p = 2m+1 (prime): pass
    iff it is 1.  The exact rational is checked to be p-integral before
    reduction.  On failure, first_mismatch is (3m+1, residue, 1)."""
    p = 2 * m + 1
    if not _is_prime(p):
        raise ValueError("mod-p argument requires prime 2m+1")
    t0 = time.perf_counter()
    value = gm_value(m, 3 * m + 1)
    if value.denominator % p == 0:
        raise AssertionError("value is not p-integral")
    residue = value.numerator * pow(value.denominator, -1, p) % p
    return VerificationReport(
        identity_id="gm-mod-p",
        params={"m": m, "p": p},
        order=Fraction(3 * m + 1),
        status="pass" if residue == 1 else "fail",
        first_mismatch=None
        if residue == 1
        else (Fraction(3 * m + 1), Fraction(residue), Fraction(1)),
        runtime_ms=(time.perf_counter() - t0) * 1000.0,
    )


def extract_Am(m: int) -> Fraction:
    """The value at t = 3m+1, where the closed form's binomial factor
    is 1; conjecturally binom(2m,m)^2."""
    return gm_value(m, 3 * m + 1)
