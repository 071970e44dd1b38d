"""Multi-sum (fermionic) q-series over the inverse Cartan matrix of D_p:
the two one-parameter sum families, fermionic forms of the module
characters, and the auxiliary single- and double-sum identities."""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as iproduct
from math import lcm

from . import characters, forms, qseries as qs
from .characters import SWModuleId
from .forms import ThetaParams
from .qseries import QSeries, RatLike, VerificationReport

__all__ = [
    "CartanData",
    "FermionicSumSpec",
    "inverse_cartan_D",
    "warnaar_lhs",
    "warnaar_rhs",
    "verify_warnaar",
    "fermionic_sw_char",
    "fermionic_char_report",
    "verify_aux_identities",
]


@dataclass(frozen=True)
class CartanData:
    """Exact inverse Cartan matrix of D_p: chain nodes 1..p-2, fork
    nodes p-1 and p both attached to node p-2."""

    p: int
    B: tuple[tuple[Fraction, ...], ...]


@lru_cache(maxsize=None)
def inverse_cartan_D(p: int) -> CartanData:
    if p < 3:
        raise ValueError("p must be at least 3")
    a = [[Fraction(0)] * p for _ in range(p)]
    for i in range(p):
        a[i][i] = Fraction(2)
    for i in range(p - 3):
        a[i][i + 1] = a[i + 1][i] = Fraction(-1)
    a[p - 3][p - 2] = a[p - 2][p - 3] = Fraction(-1)
    a[p - 3][p - 1] = a[p - 1][p - 3] = Fraction(-1)

    aug = [row[:] + [Fraction(int(i == j)) for j in range(p)] for i, row in enumerate(a)]
    for col in range(p):
        pivot = next(r for r in range(col, p) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(p):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    b = [row[p:] for row in aug]

    for i in range(p):
        for j in range(p):
            prod = sum(b[i][k] * a[k][j] for k in range(p))
            if prod != (1 if i == j else 0):
                raise AssertionError("inverse self-check failed")
            if b[i][j] != b[j][i]:
                raise AssertionError("inverse not symmetric")
            if b[i][j] <= 0:
                raise AssertionError("inverse not elementwise positive")
    return CartanData(p, tuple(tuple(row) for row in b))


@dataclass(frozen=True)
class FermionicSumSpec:
    """Parameters of one multi-sum: lattice size p, integer lam in 0..p,
    sigma in {0,1}, variant 1 or 2, and the required parity of
    n_{p-1} + n_p."""

    p: int
    lam: int
    sigma: int
    variant: int
    parity: int

    def __post_init__(self):
        if self.p < 3:
            raise ValueError("p must be at least 3")
        if not 0 <= self.lam <= self.p:
            raise ValueError("lam out of range")
        if self.sigma not in (0, 1):
            raise ValueError("sigma must be 0 or 1")
        if self.variant not in (1, 2):
            raise ValueError("variant must be 1 or 2")
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0 or 1")


def _one_d_min(qii: Fraction, li: Fraction) -> Fraction:
    # min over integer v >= 0 of qii*v^2 + li*v
    if li >= 0:
        return Fraction(0)
    vertex = -li / (2 * qii)
    best = Fraction(0)
    for v in (int(vertex), int(vertex) + 1):
        if v >= 0:
            best = min(best, qii * v * v + li * v)
    return best


def _multi_sum(
    Q: tuple[tuple[Fraction, ...], ...],
    lin: list[Fraction],
    const: Fraction,
    parity: int | None,
    order: Fraction,
    s: int,
) -> QSeries:
    """Sum over tuples n in Z>=0^p with n_{p-1} + n_p congruent to parity
    mod 2 (unconstrained when parity is None) of

        q^{n.Q.n + lin.n + const} / prod_i (q^{1/s}; q^{1/s})_{n_i}

    exact to the given order.  Requires Q symmetric, positive definite,
    and elementwise nonnegative: the pruning bound keeps the exact prefix
    value plus one-dimensional minima of the free diagonal terms, which
    is a lower bound because every dropped cross term is nonnegative.
    """
    p = len(Q)
    for row in Q:
        for x in row:
            if x < 0:
                raise ValueError("enumerator requires elementwise nonnegative Q")

    den = lcm(s, *[x.denominator for row in Q for x in row],
              *[x.denominator for x in lin], const.denominator)
    ustep = den // s
    tail = [Fraction(0)] * (p + 1)
    for i in range(p - 1, -1, -1):
        tail[i] = tail[i + 1] + _one_d_min(Q[i][i], lin[i])
    e_min = const + tail[0]
    u_order = max(0, int((order - e_min) * s))

    acc: dict[int, int] = {}

    def leaf(e: Fraction, prod: list[int]) -> None:
        a_max = int((order - e) * s)
        e_num = int(e * den)
        for a in range(a_max + 1):
            c = prod[a]
            if c:
                key = e_num + a * ustep
                acc[key] = acc.get(key, 0) + c

    def rec(d: int, e_base: Fraction, cross: list[Fraction], prod: list[int], par: int) -> None:
        if d == p:
            if parity is None or par == parity:
                leaf(e_base, prod)
            return
        qdd = Q[d][d]
        cd = cross[d]
        in_pair = d >= p - 2
        v = 0
        cur = prod
        prev_e = None
        while True:
            e_v = e_base + qdd * v * v + cd * v
            if e_v + tail[d + 1] > order:
                if prev_e is None:
                    if cd >= 0:
                        break
                elif e_v >= prev_e:
                    break
            else:
                nxt = [cross[i] + (Q[d][i] + Q[i][d]) * v for i in range(p)]
                rec(d + 1, e_v, nxt, cur, (par + v) % 2 if in_pair else par)
            prev_e = e_v
            v += 1
            if cur is prod:
                cur = prod[:]
            for a in range(v, u_order + 1):
                cur[a] += cur[a - v]

    rec(0, const, list(lin), [1] + [0] * u_order, 0)
    return qs._normalized(den, {k: Fraction(v) for k, v in acc.items()}, order)


@lru_cache(maxsize=None)
def _inv_poch_u(v: int, s: int, order: Fraction) -> QSeries:
    return qs.invert(qs.pochhammer(Fraction(1, s), Fraction(1, s), -1, v, order))


def _naive_multi_sum(
    Q: tuple[tuple[Fraction, ...], ...],
    lin: list[Fraction],
    const: Fraction,
    parity: int | None,
    order: Fraction,
    s: int,
) -> QSeries:
    """Oracle enumerator: per-coordinate box bounds, then brute force."""
    p = len(Q)
    mins = [_one_d_min(Q[i][i], lin[i]) for i in range(p)]
    big = order - min(Fraction(0), const + sum(mins))
    boxes = []
    for i in range(p):
        rest = const + sum(mins) - mins[i]
        v, last_ok, prev = 0, -1, None
        while True:
            bnd = Q[i][i] * v * v + lin[i] * v + rest
            if bnd <= order:
                last_ok = v
            elif (prev is not None and bnd >= prev) or (prev is None and lin[i] >= 0):
                break
            prev = bnd
            v += 1
        boxes.append(last_ok + 1)
    total = qs.zero(order)
    for n in iproduct(*[range(b) for b in boxes]):
        if parity is not None and (n[p - 2] + n[p - 1]) % 2 != parity:
            continue
        e = const + sum(lin[i] * n[i] for i in range(p))
        e += sum(Q[i][j] * n[i] * n[j] for i in range(p) for j in range(p))
        if e > order:
            continue
        term = qs.one(big)
        for v in n:
            if v:
                term = qs.mul(term, _inv_poch_u(v, s, big))
        total = qs.add(total, qs.shift(qs.truncate(term, order - e), e))
    return total


# -- one-parameter sum families ------------------------------------------------


def _warnaar_data(spec: FermionicSumSpec):
    B = inverse_cartan_D(spec.p).B
    p = spec.p
    lin = [Fraction(0)] * p
    half = Fraction(spec.lam, 2)
    lin[p - 2] += half
    if spec.variant == 1:
        lin[p - 1] -= half
    else:
        lin[p - 1] += half
        for i in range(max(1, p - spec.lam), p - 1):
            lin[i - 1] += i - p + spec.lam + 1
    const = half * spec.sigma - Fraction(spec.sigma * p, 4)
    return B, lin, const


def warnaar_lhs(spec: FermionicSumSpec, order: RatLike) -> QSeries:
    """The multi-sum side: tuples weighted by 1/prod (q;q)_{n_i}."""
    B, lin, const = _warnaar_data(spec)
    return _multi_sum(B, lin, const, spec.parity, Fraction(order), 1)


def warnaar_rhs(spec: FermionicSumSpec, order: RatLike) -> QSeries:
    """The single-sum side: (1/(q;q)_inf) sum over n in Z of
    q^{p n^2 + (lam - sigma p) n}, weighted by (2n - sigma + 1) for
    variant 2."""
    p, lam, sig = spec.p, spec.lam, spec.sigma
    b = lam - sig * p
    order_f = Fraction(order)
    inner_order = order_f + 1
    coeffs: dict[int, Fraction] = {}
    M = 1
    while p * M * M - abs(b) * M <= inner_order:
        M += 1
    for n in range(-M, M + 1):
        e = p * n * n + b * n
        if e <= inner_order:
            w = 1 if spec.variant == 1 else 2 * n - sig + 1
            coeffs[e] = coeffs.get(e, Fraction(0)) + w
    inner = qs._normalized(1, coeffs, inner_order)
    inv_inf = qs.invert(qs.pochhammer(1, 1, -1, None, inner_order))
    return qs.truncate(qs.mul(inv_inf, inner), order_f)


def verify_warnaar(p: int, order: RatLike) -> list[VerificationReport]:
    """Both variants, all lam in 0..p, sigma in {0,1}; the required
    parity of n_{p-1}+n_p is sigma throughout."""
    if p < 3:
        raise ValueError("p must be at least 3")
    order_f = Fraction(order)
    reports = []
    for variant in (1, 2):
        for lam in range(p + 1):
            for sig in (0, 1):
                spec = FermionicSumSpec(p, lam, sig, variant, parity=sig)
                t0 = time.perf_counter()
                lhs = warnaar_lhs(spec, order_f)
                rhs = warnaar_rhs(spec, order_f)
                reports.append(
                    qs.compare_report(
                        f"warnaar-v{variant}",
                        {"p": p, "lambda": lam, "sigma": sig},
                        lhs,
                        rhs,
                        order_f,
                        started=t0,
                    )
                )
    return reports


# -- fermionic character forms ---------------------------------------------


def fermionic_sw_char(module: SWModuleId, order: RatLike) -> tuple[QSeries, Fraction]:
    """Multi-sum form of the module character: the variant-2 sum over
    p = 2m+1 coordinates at (lam, sigma) = (2(m-i), 0) for lambda
    modules and (2i+1, 1) for pi modules, taken on the q^{1/2} grid
    and divided by (-q;q)_inf; the required parity of n_{2m}+n_{2m+1}
    equals sigma.

    Returns (series, shift) with shift determined by aligning leading
    exponents against sw_char; the pair satisfies
    series = q^{shift} * sw_char."""
    m, i = module.m, module.i
    p = 2 * m + 1
    if module.kind == "lambda":
        wspec = FermionicSumSpec(p, 2 * (m - i), 0, 2, parity=0)
    else:
        wspec = FermionicSumSpec(p, 2 * i + 1, 1, 2, parity=1)
    order_f = Fraction(order)
    half = qs.substitute_power(warnaar_lhs(wspec, 2 * order_f), Fraction(1, 2))
    if half.is_zero():
        raise ValueError(f"order {order_f} below the leading exponent")
    inv_inf = qs.invert(
        qs.pochhammer(1, 1, 1, None, order_f + 1 - min(Fraction(0), half.leading()[0]))
    )
    series = qs.truncate(qs.mul(half, inv_inf), order_f)
    char = characters.sw_char(module, order_f)
    shift = series.leading()[0] - char.leading()[0]
    return series, shift


def fermionic_char_report(module: SWModuleId, order: RatLike) -> VerificationReport:
    """Compare the multi-sum form against q^{shift} * sw_char."""
    order_f = Fraction(order)
    t0 = time.perf_counter()
    series, shift = fermionic_sw_char(module, order_f)
    shifted = qs.shift(characters.sw_char(module, order_f), shift)
    return qs.compare_report(
        "fermionic-char",
        {"m": module.m, "module": module.label, "shift": shift},
        series,
        shifted,
        min(order_f, order_f + shift),
        started=t0,
    )


# -- auxiliary identities ---------------------------------------------------


@lru_cache(maxsize=None)
def _finite_poch(start: Fraction, step: Fraction, sign: int, count: int, order: Fraction) -> QSeries:
    return qs.pochhammer(start, step, sign, count, order)


@lru_cache(maxsize=None)
def _finite_poch_inv(start: Fraction, step: Fraction, sign: int, count: int, order: Fraction) -> QSeries:
    return qs.invert(qs.pochhammer(start, step, sign, count, order))


def _durfee_half(k: int, order: Fraction) -> QSeries:
    # sum_n q^{(n^2+kn)/2} / [(u;u)_n (u;u)_{n+k}],  u = q^{1/2}
    h = Fraction(1, 2)
    total = qs.zero(order)
    n = 0
    while Fraction(n * n + k * n, 2) <= order:
        e = Fraction(n * n + k * n, 2)
        term = qs.mul(
            _finite_poch_inv(h, h, -1, n, order),
            _finite_poch_inv(h, h, -1, n + k, order),
        )
        total = qs.add(total, qs.truncate(qs.shift(qs.truncate(term, order - e), e), order))
        n += 1
    return total


def _durfee_mixed(k: int, order: Fraction) -> QSeries:
    # sum_n (-u;u)_n (-u;u)_{n+k} q^{(n^2+kn)/2} / [(q)_n (q)_{n+k}]
    h = Fraction(1, 2)
    total = qs.zero(order)
    n = 0
    while Fraction(n * n + k * n, 2) <= order:
        e = Fraction(n * n + k * n, 2)
        term = qs.mul(
            qs.mul(_finite_poch(h, h, 1, n, order), _finite_poch(h, h, 1, n + k, order)),
            qs.mul(
                _finite_poch_inv(Fraction(1), Fraction(1), -1, n, order),
                _finite_poch_inv(Fraction(1), Fraction(1), -1, n + k, order),
            ),
        )
        total = qs.add(total, qs.truncate(qs.shift(qs.truncate(term, order - e), e), order))
        n += 1
    return total


def _euler_eta_sum(order: Fraction) -> QSeries:
    # q^{1/24} sum_n (-1)^n q^{n(n+1)/2} / (q)_n
    total = qs.zero(order)
    inner_order = order - Fraction(1, 24)
    n = 0
    while Fraction(n * (n + 1), 2) <= inner_order:
        e = Fraction(n * (n + 1), 2)
        term = _finite_poch_inv(Fraction(1), Fraction(1), -1, n, inner_order)
        term = qs.scale(qs.shift(qs.truncate(term, inner_order - e), e), (-1) ** n)
        total = qs.add(total, qs.truncate(qs.shift(term, Fraction(1, 24)), order))
        n += 1
    return total


def _eta_double_sum(order: Fraction) -> QSeries:
    # q^{5/48} sum_{m1,m2 >= 0} (-1)^{m1+m2} (-u;u)_{m2}
    #   q^{m1(m1+1) + m2(m2+1)/4} / [(q^2;q^2)_{m1} (q)_{m2}]
    h = Fraction(1, 2)
    lead = Fraction(5, 48)
    inner_order = order - lead
    total = qs.zero(inner_order)
    m1 = 0
    while Fraction(m1 * (m1 + 1)) <= inner_order:
        m2 = 0
        while Fraction(m1 * (m1 + 1)) + Fraction(m2 * (m2 + 1), 4) <= inner_order:
            e = Fraction(m1 * (m1 + 1)) + Fraction(m2 * (m2 + 1), 4)
            term = qs.mul(
                _finite_poch(h, h, 1, m2, inner_order),
                qs.mul(
                    _finite_poch_inv(Fraction(2), Fraction(2), -1, m1, inner_order),
                    _finite_poch_inv(Fraction(1), Fraction(1), -1, m2, inner_order),
                ),
            )
            term = qs.scale(qs.shift(qs.truncate(term, inner_order - e), e), (-1) ** (m1 + m2))
            total = qs.add(total, qs.truncate(term, inner_order))
            m2 += 1
        m1 += 1
    return qs.shift(total, lead)


def _theta_double_sum(order: Fraction) -> QSeries:
    # [q^{5/48} / (-q;q)_inf] sum_{m1 = m2 mod 2} (-u;u)_{m1} (-u;u)_{m2}
    #   q^{3(m1-m2)^2/8 + (m1-m2)/2 + m1 m2/2} / [(q)_{m1} (q)_{m2}]
    h = Fraction(1, 2)
    lead = Fraction(5, 48)
    inner_order = order - lead
    total = qs.zero(inner_order)
    d = 0
    while Fraction(3 * d * d, 8) - Fraction(d, 2) <= inner_order:
        for sd in ((0,) if d == 0 else (d, -d)):
            base = Fraction(3 * sd * sd, 8) + Fraction(sd, 2)
            m2 = max(0, -sd)
            while True:
                m1 = m2 + sd
                # exponent is nondecreasing in m2 once m1, m2 >= 0
                e = base + Fraction(m1 * m2, 2)
                if e > inner_order:
                    break
                term = qs.mul(
                    qs.mul(_finite_poch(h, h, 1, m1, inner_order), _finite_poch(h, h, 1, m2, inner_order)),
                    qs.mul(
                        _finite_poch_inv(Fraction(1), Fraction(1), -1, m1, inner_order),
                        _finite_poch_inv(Fraction(1), Fraction(1), -1, m2, inner_order),
                    ),
                )
                term = qs.shift(qs.truncate(term, inner_order - e), e)
                total = qs.add(total, qs.truncate(term, inner_order))
                m2 += 1
        d += 2
    inv_inf = qs.invert(qs.pochhammer(1, 1, 1, None, inner_order))
    return qs.shift(qs.truncate(qs.mul(total, inv_inf), inner_order), lead)


def verify_aux_identities(order: RatLike) -> list[VerificationReport]:
    """Durfee rectangle sums (both forms, k = 0..3), the alternating-sum
    form of eta, and the two m=1 double-sum identities."""
    order_f = Fraction(order)
    if order_f < 10:
        raise ValueError("order must be at least 10")
    reports = []

    half_inf = qs.truncate(
        qs.invert(qs.pochhammer(Fraction(1, 2), Fraction(1, 2), -1, None, order_f + 1)),
        order_f,
    )
    for k in range(4):
        t0 = time.perf_counter()
        reports.append(
            qs.compare_report(
                "durfee-half", {"k": k}, _durfee_half(k, order_f), half_inf, order_f, started=t0
            )
        )
        t0 = time.perf_counter()
        reports.append(
            qs.compare_report(
                "durfee-mixed", {"k": k}, _durfee_mixed(k, order_f), half_inf, order_f, started=t0
            )
        )

    t0 = time.perf_counter()
    reports.append(
        qs.compare_report(
            "euler-eta", {}, _euler_eta_sum(order_f), forms.eta(order_f), order_f, started=t0
        )
    )

    double_product = qs.truncate(
        qs.mul(forms.eta_scaled(2, order_f + 1), forms.eta_scaled(Fraction(1, 2), order_f + 1)),
        order_f,
    )
    t0 = time.perf_counter()
    lhs = qs.truncate(
        qs.mul(
            characters.f_over_eta(order_f + 1),
            forms.dtheta(ThetaParams(1, Fraction(3, 2)), order_f + 2),
        ),
        order_f,
    )
    reports.append(
        qs.compare_report("dtheta-eta-double-product", {}, lhs, double_product, order_f, started=t0)
    )
    t0 = time.perf_counter()
    reports.append(
        qs.compare_report(
            "eta-double-sum", {}, _eta_double_sum(order_f), double_product, order_f, started=t0
        )
    )

    t0 = time.perf_counter()
    lhs = qs.truncate(
        qs.mul(
            characters.f_over_eta(order_f + 1),
            forms.theta(ThetaParams(1, Fraction(3, 2)), order_f + 2),
        ),
        order_f,
    )
    reports.append(
        qs.compare_report(
            "theta-double-sum", {}, _theta_double_sum(order_f), lhs, order_f, started=t0
        )
    )
    return reports
