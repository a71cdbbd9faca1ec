"""Finite-window estimates of rep, dio and ice, and their cross-checks.

None of these quantities is decidable from a prefix.  Every estimate is an
exact rational computed on an explicit window and carries the witness that
produces it, so it can be recomputed independently.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from . import _kernels
from .complexity import LArray, RProfile, l_array, r_profile, word_codes
from .words import WordStream, apply_morphism

ICE_FLOOR = 4


@dataclass(frozen=True)
class ExponentEstimate:
    kind: str                    # "rep", "dio" or "ice"
    window: tuple[int, int]
    value: Fraction
    witness: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "window": list(self.window),
            "value_num": self.value.numerator,
            "value_den": self.value.denominator,
            "witness": dict(self.witness),
        }

    def check(self, x: str) -> bool:
        """Recompute the value from the witness on the word ``x``."""
        w = self.witness
        if self.kind == "rep":
            n, m = w["n"], w["r"]
            return Fraction(m, n) == self.value and _first_repeat_end(x, n) == m
        u, v, m = w["u_len"], w["v_len"], w["prefix_len"]
        if not _has_period(x[u:m], v):
            return False
        return Fraction(m, u + v) == self.value


def _has_period(s: str, p: int) -> bool:
    return p >= 1 and s[p:] == s[: len(s) - p]


def _first_repeat_end(x: str, n: int) -> Optional[int]:
    for m in range(n + 1, len(x) + 1):
        if x.find(x[m - n : m], 0, m - 1) != -1:
            return m
    return None


def _check_window(window, hi_limit: int, what: str) -> tuple[int, int]:
    lo, hi = int(window[0]), int(window[1])
    if lo < 1 or lo > hi:
        raise ValueError(f"empty window [{lo}, {hi}]")
    if hi > hi_limit:
        raise ValueError(f"window end {hi} exceeds the observed {what} {hi_limit}")
    return lo, hi


def rep_estimate(profile: RProfile, window: tuple[int, int] | None = None) -> ExponentEstimate:
    """min r(n)/n over the window: a finite proxy for the liminf."""
    lo, hi = _check_window(window or (1, profile.n_max), profile.n_max, "n range")
    ns = np.arange(lo, hi + 1)
    r = profile.r[lo : hi + 1]
    # compare r(n)/n exactly by cross-multiplication against the float argmin
    k = int(np.argmin(r / ns))
    best = Fraction(int(r[k]), int(ns[k]))
    for j in np.nonzero(np.abs(r / ns - r[k] / ns[k]) < 1e-9)[0]:
        cand = Fraction(int(r[j]), int(ns[j]))
        if cand < best or (cand == best and j < k):
            best, k = cand, int(j)
    return ExponentEstimate("rep", (lo, hi), best, {"n": int(ns[k]), "r": int(r[k])})


def _factorization(la: LArray, m: int) -> dict:
    # the suffix of length L(m) reappears at i, so x_i..x_m has period m-L+1-i
    ell = int(la.L[m])
    i = int(la.E[m]) - ell + 1 if ell else 1
    return {"prefix_len": m, "u_len": i - 1, "v_len": m - ell - i + 1}


def dio_estimate(x: str, window: tuple[int, int] | None = None, larray: LArray | None = None) -> ExponentEstimate:
    """max over prefix lengths m of m / (m - L(m)), the best UV^w split of x_1^m."""
    if len(x) < 4:
        raise ValueError("dio estimate needs at least 4 symbols")
    la = larray if larray is not None else l_array(x)
    lo, hi = _check_window(window or (1, la.N), la.N, "prefix length")
    ms = np.arange(lo, hi + 1)
    den = ms - la.L[lo : hi + 1]
    k = int(np.argmax(ms / den))
    best = Fraction(int(ms[k]), int(den[k]))
    for j in np.nonzero(np.abs(ms / den - ms[k] / den[k]) < 1e-9)[0]:
        cand = Fraction(int(ms[j]), int(den[j]))
        if cand > best or (cand == best and j < k):
            best, k = cand, int(j)
    return ExponentEstimate("dio", (lo, hi), best, _factorization(la, int(ms[k])))


def ice_estimate(x: str, window: tuple[int, int] | None = None, floor: int = ICE_FLOOR) -> ExponentEstimate:
    """max over q of |longest prefix with period q| / q.

    Only witnesses of total length >= ``floor`` whose length lies in the
    window are considered; ratio 1 is always available from V = x itself.
    """
    if len(x) < 2:
        raise ValueError("ice estimate needs at least 2 symbols")
    codes, _ = word_codes(x)
    lo, hi = _check_window(window or (1, len(x)), len(x), "prefix length")
    z = _kernels.z_array(codes)
    best, wit = Fraction(1), {"prefix_len": hi, "u_len": 0, "v_len": hi}
    for q in range(1, len(x)):
        P = q + int(z[q])
        if P < floor or P < lo or z[q] == 0:
            continue
        P = min(P, hi)
        if P <= q:
            continue
        cand = Fraction(P, q)
        if cand > best:
            best, wit = cand, {"prefix_len": P, "u_len": 0, "v_len": q}
    return ExponentEstimate("ice", (lo, hi), best, wit)


# ---------------------------------------------------------------------------
# rep versus dio


@dataclass
class RepDioReport:
    window: tuple[int, int]
    rep: ExponentEstimate
    dio: ExponentEstimate
    rep_to_dio: list = field(default_factory=list)     # (n, r(n), u_len, v_len, ok)
    dio_to_rep: list = field(default_factory=list)     # (m, n, r(n), ok)
    failures: list = field(default_factory=list)

    @property
    def product(self) -> Fraction:
        """rep * (dio - 1) / dio; equals 1 when the two exponents match."""
        d = self.dio.value
        return self.rep.value * (d - 1) / d

    @property
    def ok(self) -> bool:
        return not self.failures


def rep_dio_crosscheck(x: str, window: tuple[int, int], profile: RProfile | None = None,
                       larray: LArray | None = None) -> RepDioReport:
    """Check both directions of the rep/dio correspondence constructively.

    (a) each observed r(n) = C n yields a split x_1^{r(n)} = U V^w with
        |UV| = (C - 1) n;
    (b) each split x_1^m = U V^w with repeated tail of length
        n = |UV^w| - |UV| gives r(n) <= m.
    """
    la = larray if larray is not None else l_array(x)
    prof = profile if profile is not None else r_profile(x, larray=la)
    lo, hi = window
    rep = rep_estimate(prof, (lo, min(hi, prof.n_max)))
    dio = dio_estimate(x, (lo, min(hi, la.N)), larray=la)
    report = RepDioReport((lo, hi), rep, dio)

    for n in range(lo, min(hi, prof.n_max) + 1):
        m = int(prof.r[n])
        i = int(prof.i[n])
        u, v = i - 1, m - n - i + 1
        ok = u + v == m - n and v >= 1 and x[m - n : m] == x[i - 1 : i - 1 + n]
        report.rep_to_dio.append((n, m, u, v, ok))
        if not ok:
            report.failures.append(("a", n))

    for m in range(lo, min(hi, la.N) + 1):
        n = int(la.L[m])
        if n < 1:
            continue
        rn = prof.get(n)
        ok = rn is not None and rn <= m
        report.dio_to_rep.append((m, n, rn, ok))
        if not ok:
            report.failures.append(("b", m))
    return report


# ---------------------------------------------------------------------------
# morphic images


@dataclass
class MorphicReport:
    rep_source: ExponentEstimate
    rep_image: ExponentEstimate
    delta: Fraction              # |phi(s_1..s_N)| / N
    n_image: int                 # |phi(V)| for the repeated factor V at the source argmin
    bound: int                   # |W| + |phi(s_1^{r(n)})|
    slack: Fraction
    ok: bool


def morphic_rep_compare(images: Mapping[str, str], lead: str, s: WordStream | str, N: int,
                        window: tuple[int, int] | None = None) -> MorphicReport:
    """Compare rep of s with rep of y = W phi(s) on finite prefixes.

    At the source argmin n, the factor V = s_{r-n+1..r} repeats, so phi(V)
    repeats in y within the first |W| + |phi(s_1^r)| symbols.  That bound
    gives the slack; ``ok`` says the image estimate respects it.
    """
    src = s.prefix(N) if isinstance(s, WordStream) else s[:N]
    ps = r_profile(src)
    win = window or (max(1, ps.n_max // 20), ps.n_max)
    rs = rep_estimate(ps, win)
    n, r = rs.witness["n"], rs.witness["r"]

    y_stream = apply_morphism(images, src, lead)
    y = "".join(y_stream)
    V = src[r - n : r]
    n_y = sum(len(images[c]) for c in V)
    bound = len(lead) + sum(len(images[c]) for c in src[:r])
    py = r_profile(y)
    delta = Fraction(len(y) - len(lead), len(src))

    lo_y = max(1, min(n_y, int(delta * win[0])))
    hi_y = min(py.n_max, max(n_y, int(delta * win[1])))
    ry = rep_estimate(py, (lo_y, hi_y))
    slack = Fraction(bound, n_y) - rs.value
    ok = py.get(n_y) is not None and py.get(n_y) <= bound and ry.value <= rs.value + slack
    return MorphicReport(rs, ry, delta, n_y, bound, slack, ok)
