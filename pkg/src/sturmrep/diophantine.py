"""Numbers from words: truncations, rational approximations, and μ estimates.

Only certified truncations of a real number are handled here.  A prefix of
N base-b digits pins ξ to the interval [ξ_N, ξ_N + b^-N]; every continued
fraction quotient reported is common to both ends of that interval.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .arith import CFExpansion, QuadraticNumber, cf_expand, convergents, floor_quadratic
from .complexity import RProfile
from .words import DIGITS, BudgetExceeded

LOG_TERM_BUDGET = 1 << 20
LOG_DIGIT_BUDGET = 200_000


@dataclass(frozen=True)
class DigitExpansion:
    base: int
    digits: str
    provenance: str = ""

    def __post_init__(self):
        if not 2 <= self.base <= 10:
            raise ValueError("base must lie in 2..10")
        top = DIGITS[self.base - 1]
        if any(not "0" <= c <= top for c in self.digits):
            raise ValueError(f"digits must lie in 0..{top}")

    @property
    def N(self) -> int:
        return len(self.digits)


def xi_truncation(x: DigitExpansion, N: int | None = None) -> Fraction:
    """sum_{k<=N} x_k b^-k, exactly."""
    N = x.N if N is None else N
    if N > x.N:
        raise ValueError(f"only {x.N} digits available")
    if N == 0:
        return Fraction(0)
    return Fraction(int(x.digits[:N], x.base), x.base**N)


# ---------------------------------------------------------------------------
# approximations from repetitions


@dataclass(frozen=True)
class ApproximationRecord:
    """p / (b^r_off (b^s - 1)) read off a repeated factor of length n."""

    n: int
    m: int
    r_off: int
    s: int
    p: int
    base: int
    N: int
    residual: int    # |X D - p b^N| where ξ_N = X / b^N

    @property
    def denominator(self) -> int:
        return self.base**self.r_off * (self.base**self.s - 1)

    @property
    def e(self) -> Fraction:
        return Fraction(self.m, self.r_off + self.s)

    @property
    def error(self) -> Fraction:
        return Fraction(self.residual, self.denominator * self.base**self.N)

    @property
    def bound(self) -> Fraction:
        return Fraction(1, self.base**self.m) + Fraction(1, self.base**self.N)

    def csv_row(self) -> list:
        e = self.e
        return [self.n, self.m, self.r_off, self.s, self.p, e.numerator, e.denominator]


def repetition_approximations(x: DigitExpansion, profile: RProfile, ns: Iterable[int] | None = None) -> list[ApproximationRecord]:
    """One certified record per observed n with at least one full period.

    With m = r(n) and i the earlier start, x_1..x_m = W (UV)^(t+1) U' with
    |W| = i - 1 and |UV| = m - n + 1 - i.  The record is kept only if the
    integer inequality |X D - p b^N| <= D (b^(N-m) + 1) holds.
    """
    b, N = x.base, x.N
    if profile.N != N:
        raise ValueError("profile horizon differs from the digit count")
    X = int(x.digits, b) if N else 0
    bN = b**N
    out = []
    for n in ns if ns is not None else range(1, profile.n_max + 1):
        m, i = int(profile.r[n]), int(profile.i[n])
        s = m - n + 1 - i
        if s <= 0:
            raise AssertionError(f"non-positive period at n={n}: engine bug")
        if n // s < 1:
            continue
        r_off = i - 1
        D = b**r_off * (b**s - 1)
        XD = X * D
        p = (2 * XD + bN) // (2 * bN)
        resid = abs(XD - p * bN)
        if resid <= D * (b ** (N - m) + 1):
            out.append(ApproximationRecord(n, m, r_off, s, p, b, N, resid))
    return out


@dataclass
class MuEstimate:
    lower: Optional[Fraction] = None
    lower_witness: Optional[ApproximationRecord] = None
    cf_value: Optional[float] = None
    cf_witness: Optional[int] = None          # k attaining the max
    window: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out: dict = {"window": dict(self.window)}
        if self.lower is not None:
            w = self.lower_witness
            out["lower_num"], out["lower_den"] = self.lower.numerator, self.lower.denominator
            out["lower"] = float(self.lower)
            out["lower_witness"] = {"n": w.n, "m": w.m, "r_off": w.r_off, "s": w.s}
        if self.cf_value is not None:
            out["cf_value"] = self.cf_value
            out["cf_witness_k"] = self.cf_witness
        return out


def mu_lower_estimate(records: Sequence[ApproximationRecord], N: int | None = None,
                      n_window: tuple[int, int] | None = None) -> MuEstimate:
    """max of m / (r_off + s) over records with m <= N/2 (and n in the window)."""
    if not records:
        raise ValueError("no approximation records")
    N = records[0].N if N is None else N
    pool = [r for r in records if 2 * r.m <= N]
    if n_window is not None:
        pool = [r for r in pool if n_window[0] <= r.n <= n_window[1]]
    if not pool:
        raise ValueError("no records in the trusted window")
    best = max(pool, key=lambda r: (r.e, -r.n))
    window = {"m_max": N // 2}
    if n_window is not None:
        window["n"] = list(n_window)
    return MuEstimate(lower=best.e, lower_witness=best, window=window)


# ---------------------------------------------------------------------------
# continued fractions of intervals


def _cf_terms(x: Fraction) -> list[int]:
    out = []
    p, q = x.numerator, x.denominator
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def cf_of_interval(lo: Fraction, hi: Fraction) -> list[int]:
    """Quotients shared by every real in [lo, hi]: the common CF prefix.

    When one endpoint's expansion ends inside the other's, the finished
    expansion is the common prefix.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("need lo <= hi")
    a, b = _cf_terms(lo), _cf_terms(hi)
    out = []
    for u, v in zip(a, b):
        if u != v:
            break
        out.append(u)
    return out


def convergent_denominators(quotients: Sequence[int]) -> list[int]:
    return [c.q for c in convergents(list(quotients), len(quotients) - 1)]


def mu_from_convergents(quotients: Sequence[int], window: tuple[int, int] | None = None,
                        min_log_q: float = 0.0) -> MuEstimate:
    """1 + max_k log q_(k+1) / log q_k over the window of indices k.

    By default every k with q_k > 1 and log q_k >= ``min_log_q`` counts.
    """
    if len(quotients) < 3:
        raise ValueError("need at least 3 quotients")
    qs = convergent_denominators(quotients)
    logs = [math.log(q) if q > 0 else 0.0 for q in qs]
    lo, hi = window if window is not None else (0, len(qs) - 2)
    hi = min(hi, len(qs) - 2)
    best, arg = None, None
    for k in range(lo, hi + 1):
        if qs[k] < 2 or logs[k] < min_log_q:
            continue
        v = logs[k + 1] / logs[k]
        if best is None or v > best:
            best, arg = v, k
    if best is None:
        raise ValueError("no usable convergent in the window")
    return MuEstimate(cf_value=1 + best, cf_witness=arg,
                      window={"k": [lo, hi], "min_log_q": min_log_q})


def certain_quotients(x: DigitExpansion) -> list[int]:
    """CF quotients valid for every ξ with these leading digits."""
    lo = xi_truncation(x)
    return cf_of_interval(lo, lo + Fraction(1, x.base**x.N))


def mu_cf_estimate(x: DigitExpansion, min_digits: int | None = None) -> MuEstimate:
    """mu_from_convergents on the certain quotients of ξ.

    Convergents with q_k < b^min_digits (default b^sqrt(N)) are skipped:
    log ratios of small denominators say nothing about the limsup.
    """
    qs = certain_quotients(x)
    if min_digits is None:
        min_digits = math.isqrt(x.N)
    est = mu_from_convergents(qs, min_log_q=min_digits * math.log(x.base))
    est.window["digits"] = x.N
    return est


def _convergent_set(x: Fraction) -> set[Fraction]:
    terms = _cf_terms(x)
    return {Fraction(c.p, c.q) for c in convergents(terms, len(terms) - 1)}


def legendre_gate(records: Sequence[ApproximationRecord], x: DigitExpansion) -> list[tuple[ApproximationRecord, bool]]:
    """Records close enough for Legendre's theorem must be convergents.

    A record qualifies when e > 2, 2Q^2 <= b^m for its reduced denominator
    Q, and |y - p/Q| < 1/(2Q^2) holds at both ends y of the digit interval.
    It passes when p/Q is a convergent of both ends.  Membership is tested
    per endpoint because p/Q may lie inside the interval, where the two
    expansions approach it from opposite sides and part ways at its last
    quotient.
    """
    lo = xi_truncation(x)
    hi = lo + Fraction(1, x.base**x.N)
    conv_lo, conv_hi = _convergent_set(lo), _convergent_set(hi)
    out = []
    for r in records:
        frac = Fraction(r.p, r.denominator)
        Q = frac.denominator
        if r.e <= 2 or 2 * Q * Q > r.base**r.m:
            continue
        gap = Fraction(1, 2 * Q * Q)
        if abs(lo - frac) < gap and abs(hi - frac) < gap:
            out.append((r, frac in conv_lo and frac in conv_hi))
    return out


# ---------------------------------------------------------------------------
# Adams-Davison numbers


def adams_davison_digits(alpha: QuadraticNumber, base: int, N: int) -> DigitExpansion:
    """Digit k is 1 exactly when k = floor(j alpha) for some j >= 1."""
    if alpha.is_rational:
        raise ValueError("alpha must be irrational")
    if not alpha > 1:
        raise ValueError("alpha must exceed 1")
    buf = ["0"] * N
    j = 1
    while True:
        k = floor_quadratic(alpha * j)
        if k > N:
            break
        buf[k - 1] = "1"
        j += 1
    return DigitExpansion(base, "".join(buf), f"adams-davison;alpha={alpha};base={base}")


def reversed_cf_limsup(cf: CFExpansion, K: int = 200) -> Fraction:
    """max over n in [K/2, K] of [a_n; a_(n-1), ..., a_1], a_1 the integer part."""
    terms = cf.terms(K)
    best = None
    v = Fraction(terms[0])
    for n in range(2, K + 1):
        v = terms[n - 1] + 1 / v     # [a_n; a_(n-1), ..., a_1]
        if n >= K // 2 and (best is None or v > best):
            best = v
    return best


@dataclass
class AdamsDavisonReport:
    alpha: QuadraticNumber
    base: int
    N: int
    digit_side: MuEstimate
    quotient_side: float
    gap: float


def adams_davison_check(alpha, base: int, N: int, K: int = 200) -> AdamsDavisonReport:
    alpha = alpha if isinstance(alpha, QuadraticNumber) else QuadraticNumber.from_rational(Fraction(alpha))
    x = adams_davison_digits(alpha, base, N)
    lhs = mu_cf_estimate(x)
    rhs = 1 + float(reversed_cf_limsup(cf_expand(alpha), K))
    return AdamsDavisonReport(alpha, base, N, lhs, rhs, abs(lhs.cf_value - rhs))


# ---------------------------------------------------------------------------
# log(1 + 1/a)


def _atanh_inverse_sum(c: int, K: int) -> Fraction:
    """sum_{k=0..K} 1 / ((2k+1) c^(2k+1)), as one exact fraction."""
    L = 1
    for k in range(K + 1):
        L = L * (2 * k + 1) // math.gcd(L, 2 * k + 1)
    # common denominator L c^(2K+1); Horner over powers of c^2
    c2 = c * c
    num = 0
    for k in range(K + 1):
        num = num * c2 + L // (2 * k + 1)
    return Fraction(num, L * c ** (2 * K + 1))


def log_digits(a: int, base: int, N: int, max_terms: int = LOG_TERM_BUDGET,
               max_digits: int = LOG_DIGIT_BUDGET) -> DigitExpansion:
    """First N base-b digits of log(1 + 1/a), each one certified.

    log(1 + 1/a) = 2 atanh(z), z = 1/(2a+1).  After K+1 terms the tail is
    below 2 z^(2K+3) / ((2K+3)(1 - z^2)); the digits are accepted once the
    whole interval [S_K, S_K + tail) floors to the same b^N-scaled integer.
    """
    if a < 1:
        raise ValueError("a must be >= 1")
    if N < 0:
        raise ValueError("N must be non-negative")
    if N > max_digits:
        raise BudgetExceeded(f"{N} digits requested, budget is {max_digits}")
    prov = f"log(1+1/{a})"
    if N == 0:
        return DigitExpansion(base, "", prov)
    c = 2 * a + 1
    scale = base**N
    K = max(2, int(N * math.log(base) / (2 * math.log(c))) + 2)
    while K <= max_terms:
        S = 2 * _atanh_inverse_sum(c, K)
        tail = Fraction(2, (2 * K + 3) * c ** (2 * K + 3)) / (1 - Fraction(1, c * c))
        F = math.floor(S * scale)
        if (S + tail) * scale < F + 1:
            digits = _to_base(F, base, N)
            return DigitExpansion(base, digits, prov)
        K *= 2
    raise BudgetExceeded(f"digits not certified within {max_terms} series terms")


def _to_base(F: int, base: int, N: int) -> str:
    if base == 10:
        return str(F).rjust(N, "0")
    if base == 2:
        return format(F, "b").rjust(N, "0")
    out = []
    for _ in range(N):
        F, d = divmod(F, base)
        out.append(DIGITS[d])
    return "".join(reversed(out))
