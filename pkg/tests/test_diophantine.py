import math
from decimal import Decimal, localcontext
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sturmrep.arith import parse_quadratic
from sturmrep.complexity import p_profile, r_profile
from sturmrep.diophantine import (
    DigitExpansion, adams_davison_check, adams_davison_digits, cf_of_interval, certain_quotients, log_digits,
    mu_cf_estimate, mu_from_convergents, mu_lower_estimate, repetition_approximations, reversed_cf_limsup,
    legendre_gate, xi_truncation,
)
from sturmrep.exponents import rep_estimate
from sturmrep.words import BudgetExceeded, extremal_word, fibonacci_word

PHI = (1 + math.sqrt(5)) / 2
EXTREMAL_MU = 2.50995


def expansion(word, base=2):
    return DigitExpansion(base, word, "test")


def ln_digits_oracle(num, den, base, N):
    """Base-b digits of ln(num/den) from Decimal's own logarithm."""
    with localcontext() as ctx:
        ctx.prec = int(N * math.log10(base)) + 40
        v = (Decimal(num) / Decimal(den)).ln()
        out = []
        for _ in range(N):
            v *= base
            d = int(v)
            out.append(str(d))
            v -= d
    return "".join(out)


def cf_of_fraction(x):
    out = []
    while True:
        a = x.numerator // x.denominator
        out.append(a)
        x -= a
        if x == 0:
            return out
        x = 1 / x


# ---------------------------------------------------------------------------
# digit expansions


def test_truncation_examples():
    assert xi_truncation(expansion("0111"), 3) == Fraction(3, 8)
    assert xi_truncation(expansion("01001010")) == Fraction(37, 128)
    assert xi_truncation(expansion("0110"), 0) == 0
    with pytest.raises(ValueError):
        xi_truncation(expansion("01"), 5)


def test_expansion_validation():
    with pytest.raises(ValueError):
        DigitExpansion(2, "012")
    with pytest.raises(ValueError):
        DigitExpansion(11, "0")
    assert DigitExpansion(3, "0212").N == 4


# ---------------------------------------------------------------------------
# approximation records


def verify_record(rec, x):
    """Independent check of one record against the digits."""
    b = x.base
    xi = xi_truncation(x)
    D = b**rec.r_off * (b**rec.s - 1)
    assert rec.denominator == D
    assert abs(xi - Fraction(rec.p, D)) <= Fraction(1, b**rec.m) + Fraction(1, b**x.N)
    assert rec.e == Fraction(rec.m, rec.r_off + rec.s) and rec.e > 1
    # the digits really are W (UV)^(t+1) U' with |W| = r_off, |UV| = s
    d = x.digits[: rec.m]
    assert d[rec.r_off + rec.s :] == d[rec.r_off : rec.m - rec.s]
    assert rec.n // rec.s >= 1


def test_record_examples():
    x = expansion("0" * 200)
    recs = repetition_approximations(x, r_profile(x.digits))
    r5 = next(r for r in recs if r.n == 5)
    assert (r5.m, r5.r_off, r5.s, r5.p, r5.residual) == (6, 0, 1, 0, 0)

    fib = expansion(fibonacci_word(2000))
    recs = repetition_approximations(fib, r_profile(fib.digits))
    r3 = next(r for r in recs if r.n == 3)
    assert (r3.m, r3.r_off, r3.s, r3.denominator) == (6, 0, 3, 7)
    assert abs(xi_truncation(fib) - Fraction(r3.p, 7)) <= Fraction(1, 64) + Fraction(1, 2**2000)


def test_records_certified_independently():
    for word in (fibonacci_word(3000), extremal_word().prefix(3000)):
        x = expansion(word)
        recs = repetition_approximations(x, r_profile(word))
        assert len(recs) > 100
        for rec in recs:
            verify_record(rec, x)


@given(st.text(alphabet="012", min_size=5, max_size=300), st.sampled_from([3, 5, 10]))
def test_records_certified_on_random_digits(word, base):
    x = expansion(word, base)
    for rec in repetition_approximations(x, r_profile(word)):
        verify_record(rec, x)


def test_profile_horizon_mismatch():
    x = expansion("01001010")
    with pytest.raises(ValueError):
        repetition_approximations(x, r_profile("0100101001"))


def test_mu_lower_examples():
    word = extremal_word().prefix(20_000)
    x = expansion(word)
    recs = repetition_approximations(x, r_profile(word))
    est = mu_lower_estimate(recs, n_window=(1000, 10_000))
    assert est.lower >= Fraction(245, 100)
    assert est.lower == est.lower_witness.e
    assert 2 * est.lower_witness.m <= x.N

    fib = expansion(fibonacci_word(20_000))
    est = mu_lower_estimate(repetition_approximations(fib, r_profile(fib.digits)))
    assert float(est.lower) >= PHI / (PHI - 1) - 0.05

    with pytest.raises(ValueError):
        mu_lower_estimate([])


def test_mu_lower_degenerate_periodic_grows():
    vals = []
    for N in (200, 2000):
        x = expansion("01" * (N // 2))
        vals.append(mu_lower_estimate(repetition_approximations(x, r_profile(x.digits))).lower)
    assert vals[1] > 5 * vals[0]


@pytest.mark.parametrize("word", [fibonacci_word(20_000), extremal_word().prefix(20_000)],
                         ids=["fibonacci", "extremal"])
def test_lower_estimate_matches_rep(word):
    x = expansion(word)
    prof = r_profile(word)
    recs = repetition_approximations(x, prof)
    est = mu_lower_estimate(recs)
    n_top = max(n for n in range(1, prof.n_max + 1) if 2 * prof.get(n) <= x.N)
    rep = float(rep_estimate(prof, (1000, n_top)).value)
    assert float(est.lower) >= rep / (rep - 1) - 0.05


def test_legendre_gate():
    for word in (fibonacci_word(4000), extremal_word().prefix(4000)):
        x = expansion(word)
        gated = legendre_gate(repetition_approximations(x, r_profile(word)), x)
        assert gated and all(ok for _, ok in gated)


# ---------------------------------------------------------------------------
# continued fractions


def test_cf_of_interval_examples():
    assert cf_of_interval(Fraction(3, 8), Fraction(1, 2)) == [0, 2]
    assert cf_of_interval(Fraction(3, 7), Fraction(3, 7)) == [0, 2, 3]
    assert cf_of_interval(Fraction(1, 2), Fraction(3, 2)) == []
    with pytest.raises(ValueError):
        cf_of_interval(Fraction(1, 2), Fraction(1, 3))


@given(st.fractions(0, 10, max_denominator=10**6), st.fractions(0, 10, max_denominator=10**6))
def test_cf_of_interval_is_valid_for_the_whole_interval(a, b):
    lo, hi = min(a, b), max(a, b)
    if lo == hi or lo == 0:
        return
    pre = cf_of_interval(lo, hi)
    mid = (lo + hi) / 2
    for y in (lo, mid, hi):
        full = cf_of_fraction(y)
        # a terminating expansion may differ only in its last quotient
        assert full[: len(pre) - 1] == pre[:-1] or not pre


def test_certain_quotients_of_golden_digits():
    # binary digits of (sqrt5 - 1)/2 via integer square roots
    N = 3000
    X = math.isqrt(5 << (2 * N)) - (1 << N)
    digits = bin(X >> 1)[2:].zfill(N)[:N]
    qs = certain_quotients(expansion(digits))
    assert qs[0] == 0 and len(qs) > 1000
    assert all(a == 1 for a in qs[1:-1])


def test_mu_from_convergents_examples():
    golden = [1] * 400
    assert abs(mu_from_convergents(golden, window=(100, 398)).cf_value - 2) < 0.02
    with pytest.raises(ValueError):
        mu_from_convergents([1, 1])


def test_mu_cf_extremal():
    x = expansion(extremal_word().prefix(10_000))
    assert abs(mu_cf_estimate(x).cf_value - EXTREMAL_MU) < 0.05


def test_liouville_word_grows():
    def liouville(N):
        out, k = [], 0
        while len(out) < N:
            out.extend("0" * 10**k + "1")
            k += 1
        return "".join(out[:N])

    small = mu_cf_estimate(expansion(liouville(150)), min_digits=1).cf_value
    big = mu_cf_estimate(expansion(liouville(2500)), min_digits=1).cf_value
    assert big > small > 2


# ---------------------------------------------------------------------------
# Adams-Davison


def test_adams_davison_digits():
    alpha = parse_quadratic("(1+sqrt(5))/2")
    x = adams_davison_digits(alpha, 2, 30)
    hits = {math.floor(j * (1 + math.sqrt(5)) / 2) for j in range(1, 40)}
    assert x.digits == "".join("1" if k in hits else "0" for k in range(1, 31))
    with pytest.raises(ValueError):
        adams_davison_digits(parse_quadratic("3"), 2, 10)
    with pytest.raises(ValueError):
        adams_davison_digits(parse_quadratic("(-1+sqrt(5))/2"), 2, 10)


def test_reversed_cf():
    from sturmrep.arith import cf_expand
    assert abs(float(reversed_cf_limsup(cf_expand(parse_quadratic("(1+sqrt(5))/2")))) - PHI) < 1e-9
    assert abs(float(reversed_cf_limsup(cf_expand(parse_quadratic("1+sqrt(2)")))) - (1 + math.sqrt(2))) < 1e-9


@pytest.mark.parametrize("alpha,target", [
    ("(1+sqrt(5))/2", 1 + PHI),
    ("1+sqrt(2)", 2 + math.sqrt(2)),
    ("sqrt(3)", None),
])
def test_adams_davison_gap(alpha, target):
    rep = adams_davison_check(parse_quadratic(alpha), 2, 10_000)
    assert rep.gap <= 0.1
    if target is not None:
        assert abs(rep.quotient_side - target) < 1e-6
        assert abs(rep.digit_side.cf_value - target) <= 0.05


# ---------------------------------------------------------------------------
# logarithms


def test_log_digits_examples():
    assert log_digits(1, 2, 10).digits == "1011000101"
    assert log_digits(1, 2, 4).digits == "1011"
    assert log_digits(5, 10, 0).digits == ""


@pytest.mark.parametrize("a,base,N", [(1, 2, 2000), (34, 2, 1000), (2, 10, 500), (100, 3, 400)])
def test_log_digits_match_decimal_oracle(a, base, N):
    assert log_digits(a, base, N).digits == ln_digits_oracle(a + 1, a, base, N)


def test_log_digits_budget():
    with pytest.raises(BudgetExceeded):
        log_digits(34, 2, 10**7)


def test_log_demo_pipeline():
    x = log_digits(34, 2, 1000)
    pp = p_profile(x.digits)
    table = [pp.get(n) - n for n in range(1, 31)]
    assert all(v >= 0 for v in table)
