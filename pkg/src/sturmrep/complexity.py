"""Repetition function r(n,x), subword complexity p(n,x) and related tools.

One pass of an online suffix automaton gives, for every prefix length m,
L(m) = the length of the longest suffix of x_1..x_m that already ended at
an earlier position.  From it:

* r(n) = min{m : L(m) >= n}
* p(n, x_1^N) = #{n <= m <= N : L(m) < n}
"""
from __future__ import annotations

import os
from collections import defaultdict
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .words import BudgetExceeded

ORACLE_BUDGET = 5_000
DEBUG = os.environ.get("STURMREP_DEBUG", "") == "1"

_CODE = bytes.maketrans(b"0123456789", bytes(range(10)))


def word_codes(x: str) -> tuple[bytes, int]:
    """Symbol codes 0..9 of a digit word and the alphabet size (>= 2)."""
    b = x.encode("ascii").translate(_CODE)
    if b and max(b) > 9:
        raise ValueError("words must consist of the digits 0-9")
    return b, max(2, (max(b) + 1) if b else 2)


@dataclass(frozen=True)
class LArray:
    L: np.ndarray   # L[m], m = 0..N (L[0] = L[1] = 0)
    E: np.ndarray   # first end position of the suffix counted by L[m]

    @property
    def N(self) -> int:
        return len(self.L) - 1

    def __getitem__(self, m: int) -> int:
        return int(self.L[m])


def l_array(x: str) -> LArray:
    codes, sigma = word_codes(x)
    L, E = _kernels.longest_earlier_suffix(codes, sigma)
    return LArray(L, E)


@dataclass(frozen=True)
class RProfile:
    """r(n) and the earlier-occurrence start i(n) for n = 1..n_max.

    Values with r(n) beyond the horizon N are absent, never extrapolated.
    """

    word_id: str
    N: int
    r: np.ndarray   # index n; r[0] unused
    i: np.ndarray

    @property
    def n_max(self) -> int:
        return len(self.r) - 1

    def get(self, n: int) -> Optional[int]:
        return int(self.r[n]) if 1 <= n <= self.n_max else None

    def start(self, n: int) -> Optional[int]:
        return int(self.i[n]) if 1 <= n <= self.n_max else None

    def __contains__(self, n: int) -> bool:
        return 1 <= n <= self.n_max


@dataclass(frozen=True)
class PProfile:
    word_id: str
    N: int
    p: np.ndarray   # index n = 0..N; p[0] unused

    def get(self, n: int) -> int:
        return int(self.p[n])


def r_profile(x: str, word_id: str = "", larray: LArray | None = None, debug: bool = DEBUG) -> RProfile:
    la = larray if larray is not None else l_array(x)
    N = la.N
    if N < 2:
        return RProfile(word_id, N, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))
    runmax = np.maximum.accumulate(la.L[1:])     # runmax[m-1] = max L(1..m)
    n_max = int(runmax[-1])
    ns = np.arange(1, n_max + 1)
    r = np.zeros(n_max + 1, dtype=np.int64)
    i = np.zeros(n_max + 1, dtype=np.int64)
    r[1:] = np.searchsorted(runmax, ns, side="left") + 1
    # at m = r(n) the longest repeated suffix has length exactly n
    i[1:] = la.E[r[1:]] - ns + 1
    if debug:
        _assert_unique_occurrence(x, r, i)
    return RProfile(word_id, N, r, i)


def _assert_unique_occurrence(x: str, r: np.ndarray, i: np.ndarray) -> None:
    for n in range(1, len(r)):
        m, j = int(r[n]), int(i[n])
        factor = x[m - n : m]
        assert x.find(factor, 0, m - 1) == j - 1, (n, m, j)
        assert x.find(factor, j, m - 1) == -1, ("second earlier occurrence", n, m)


def p_profile(x: str, word_id: str = "", larray: LArray | None = None) -> PProfile:
    la = larray if larray is not None else l_array(x)
    N = la.N
    # p(n) = (N - n + 1) - #{m : L(m) >= n}
    hist = np.bincount(la.L[1:], minlength=N + 2)
    at_least = np.cumsum(hist[::-1])[::-1]
    ns = np.arange(N + 1)
    p = (N - ns + 1) - at_least[: N + 1]
    p[0] = 0
    return PProfile(word_id, N, p.astype(np.int64))


# ---------------------------------------------------------------------------
# literal oracles (tests only)


def _oracle_guard(x: str, budget: int) -> None:
    if len(x) > budget:
        raise BudgetExceeded(f"oracle limited to {budget} symbols, got {len(x)}")


def r_brute(x: str, n: int, budget: int = ORACLE_BUDGET) -> Optional[int]:
    """Smallest m such that x_{m-n+1..m} also starts at some i <= m - n."""
    _oracle_guard(x, budget)
    for m in range(n + 1, len(x) + 1):
        if x.find(x[m - n : m], 0, m - 1) != -1:
            return m
    return None


def p_brute(x: str, n: int, budget: int = ORACLE_BUDGET) -> int:
    _oracle_guard(x, budget)
    return len({x[k : k + n] for k in range(len(x) - n + 1)})


# ---------------------------------------------------------------------------
# periods, return time, special factors


def lambda_set(U: str) -> set[int]:
    """{1 <= k < |U| : u_i = u_{i+k} for all i}, read off the border chain."""
    n = len(U)
    if n < 2:
        raise ValueError("need |U| >= 2")
    fail = [0] * (n + 1)
    fail[0] = -1
    k = -1
    for j in range(n):
        while k >= 0 and U[k] != U[j]:
            k = fail[k]
        k += 1
        fail[j + 1] = k
    out = set()
    b = fail[n]
    while b > 0:
        out.add(n - b)
        b = fail[b]
    return out


def return_time(x: str, n: int) -> Optional[int]:
    """Smallest t >= 1 with x_{t+1..t+n} = x_{1..n}; None beyond the horizon."""
    if n < 1 or n > len(x):
        return None
    t = x.find(x[:n], 1)
    return t if t != -1 else None


class RightSpecial(NamedTuple):
    status: str                 # "unique", "multiple" or "absent"
    factor: Optional[str]
    candidates: tuple[str, ...]


def right_special_factor(x: str, n: int) -> RightSpecial:
    """Length-n factors Z of the prefix with both Z0 and Z1 occurring."""
    if set(x) - {"0", "1"}:
        raise ValueError("right_special_factor needs a binary word")
    ext: dict[str, set[str]] = defaultdict(set)
    for k in range(len(x) - n):
        ext[x[k : k + n]].add(x[k + n])
    found = tuple(sorted(z for z, e in ext.items() if len(e) == 2))
    if not found:
        return RightSpecial("absent", None, ())
    if len(found) > 1:
        return RightSpecial("multiple", None, found)
    return RightSpecial("unique", found[0], found)


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class ClassifyConfig:
    min_length: int = 100
    periodic_tail_fraction: float = 0.25   # last quarter of observable n
    periodic_span_factor: int = 2          # tail must be >= factor * M long
    dyadic_start: int = 3                  # windows [2^j, 2^(j+1)], j >= 3


@dataclass
class ClassificationVerdict:
    verdict: str                 # periodic-consistent | sturmian-consistent | other
    witness: dict = field(default_factory=dict)

    def validate(self, profile: RProfile) -> bool:
        w = self.witness
        if self.verdict == "periodic-consistent":
            lo, hi, M = w["n_lo"], w["n_hi"], w["M"]
            return hi <= profile.n_max and all(profile.get(n) - n == M for n in range(lo, hi + 1))
        if self.verdict == "sturmian-consistent":
            ok = all(profile.get(n) <= 2 * n + 1 for n in range(1, profile.n_max + 1))
            return ok and all(profile.get(n) == 2 * n + 1 for n in w["equalities"])
        if "n" in w:
            n = w["n"]
            return n in profile and profile.get(n) > 2 * n + 1
        lo, hi = w["window"]
        return hi <= profile.n_max and all(profile.get(n) < 2 * n + 1 for n in range(lo, hi + 1))


def classify(x: str, config: ClassifyConfig = ClassifyConfig(), profile: RProfile | None = None) -> ClassificationVerdict:
    if len(x) < config.min_length:
        raise ValueError(f"classification needs at least {config.min_length} symbols")
    prof = profile if profile is not None else r_profile(x)
    n_max = prof.n_max
    r = prof.r
    ns = np.arange(n_max + 1)

    if n_max >= 4:
        lo = max(1, int(n_max * (1 - config.periodic_tail_fraction)))
        diff = r[lo:] - ns[lo:]
        M = int(diff[0])
        if np.all(diff == M) and (n_max - lo + 1) >= config.periodic_span_factor * M:
            return ClassificationVerdict("periodic-consistent", {"M": M, "n_lo": lo, "n_hi": n_max})

    over = np.nonzero(r[1:] > 2 * ns[1:] + 1)[0]
    if len(over):
        n = int(over[0]) + 1
        return ClassificationVerdict("other", {"n": n, "r": int(r[n])})

    equalities = []
    j = config.dyadic_start
    while 2 ** (j + 1) <= n_max:
        lo, hi = 2**j, 2 ** (j + 1)
        hit = np.nonzero(r[lo : hi + 1] == 2 * ns[lo : hi + 1] + 1)[0]
        if not len(hit):
            return ClassificationVerdict("other", {"window": (lo, hi)})
        equalities.append(lo + int(hit[0]))
        j += 1
    return ClassificationVerdict("sturmian-consistent", {"equalities": equalities})


def jump_points(profile: RProfile) -> list[int]:
    r = profile.r
    return [n for n in range(2, profile.n_max + 1) if r[n] >= r[n - 1] + 2]


def jump_check(profile: RProfile) -> list[tuple[int, bool]]:
    """Every n with r(n) >= r(n-1) + 2 must have r(n) >= 2n + 1."""
    r = profile.r
    return [(n, bool(r[n] >= 2 * n + 1)) for n in jump_points(profile)]
