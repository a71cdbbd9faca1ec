"""Generators for prefixes of infinite words.

Words are plain ``str`` of digit characters ``'0'..'9'`` (alphabets of size
at most 10).  Infinite words are :class:`WordStream` objects that
materialize and cache prefixes on demand.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import islice
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .arith import CFExpansion, QuadraticNumber, floor_quadratic

DIGITS = "0123456789"
DEFAULT_DE_BRUIJN_BUDGET = 10**7

FiniteWord = str


class BudgetExceeded(RuntimeError):
    """A requested object would exceed its size or precision budget."""


def check_word(w: str, alphabet: int) -> None:
    if not 2 <= alphabet <= 10:
        raise ValueError("alphabet size must be between 2 and 10")
    allowed = set(DIGITS[:alphabet])
    bad = set(w) - allowed
    if bad:
        raise ValueError(f"symbols {sorted(bad)} outside alphabet of size {alphabet}")


class WordStream:
    """Deterministic producer of prefixes of one infinite word.

    ``chunks`` is a zero-argument callable returning an iterator of string
    chunks; successive chunks concatenate to the word.  ``prefix(N)`` pulls
    only as many chunks as needed and caches them, so repeated calls with
    growing ``N`` do linear total work.
    """

    def __init__(self, name: str, params: Mapping[str, object], chunks: Callable[[], Iterator[str]], alphabet: int = 2):
        self.name = name
        self.params = dict(params)
        self.alphabet = alphabet
        self._it = chunks()
        self._text = ""
        self._pending: list[str] = []
        self._pending_len = 0
        self._exhausted = False

    def __repr__(self):
        return f"WordStream({self.spec_string()})"

    def spec_string(self) -> str:
        """Canonical ``name;key=value;...`` identity of the generator."""
        items = ";".join(f"{k}={self.params[k]}" for k in sorted(self.params))
        return f"{self.name};{items}" if items else self.name

    @property
    def materialized(self) -> int:
        return len(self._text) + self._pending_len

    def _fill(self, n: int) -> None:
        while self.materialized < n and not self._exhausted:
            try:
                chunk = next(self._it)
            except StopIteration:
                self._exhausted = True
                break
            self._pending.append(chunk)
            self._pending_len += len(chunk)
        if self._pending:
            self._text += "".join(self._pending)
            self._pending.clear()
            self._pending_len = 0

    def prefix(self, n: int) -> str:
        if n < 0:
            raise ValueError("prefix length must be non-negative")
        if n > len(self._text):
            self._fill(n)
            if n > len(self._text):
                raise ValueError(f"{self.name} ended after {len(self._text)} symbols")
        return self._text[:n]

    def __iter__(self) -> Iterator[str]:
        k = 0
        while True:
            if k >= len(self._text):
                self._fill(max(2 * len(self._text), 1024))
                if k >= len(self._text):
                    return
            yield self._text[k]
            k += 1


# ---------------------------------------------------------------------------
# Sturmian words from the digit formula


def _as_quadratic(x) -> QuadraticNumber:
    if isinstance(x, QuadraticNumber):
        return x
    if isinstance(x, str):
        return QuadraticNumber.parse(x)
    return QuadraticNumber.from_rational(Fraction(x))


def sturmian_word(theta, rho=0, variant: str = "floor", chunk: int = 4096) -> WordStream:
    """s_n = floor((n+1)theta + rho) - floor(n theta + rho), n >= 1 (or ceilings).

    ``theta`` must be an irrational quadratic number in (0, 1); ``rho`` may be
    rational or lie in the same quadratic field.  Indices ``n`` at which
    ``n*theta + rho`` is an integer are collected in ``stream.integer_hits``.
    """
    theta, rho = _as_quadratic(theta), _as_quadratic(rho)
    if theta.is_rational:
        raise ValueError("rational slope gives a periodic word; use periodic_word")
    if not (0 < theta < 1):
        raise ValueError("slope must lie in (0, 1)")
    if variant not in ("floor", "ceiling"):
        raise ValueError("variant must be 'floor' or 'ceiling'")
    if rho.q and rho.d != theta.d:
        raise ValueError("intercept must be rational or share the slope's radicand")

    d = theta.d
    R = theta.r * rho.r // math.gcd(theta.r, rho.r)
    a1, b1 = theta.p * (R // theta.r), theta.q * (R // theta.r)
    a0, b0 = rho.p * (R // rho.r), rho.q * (R // rho.r)
    ceiling = variant == "ceiling"
    hits: list[int] = []

    def rounded(n: int) -> int:
        # floor or ceiling of (a0 + n a1 + (b0 + n b1) sqrt d) / R
        A, B = a0 + n * a1, b0 + n * b1
        if B == 0:
            f, exact = A // R, A % R == 0
        else:
            root = math.isqrt(B * B * d)
            f, exact = (A + (root if B > 0 else -root - 1)) // R, False
        if exact:
            hits.append(n)
        return f + 1 if ceiling and not exact else f

    def chunks() -> Iterator[str]:
        n = 1
        prev = rounded(1)
        while True:
            buf = []
            for _ in range(chunk):
                nxt = rounded(n + 1)
                buf.append(DIGITS[nxt - prev])
                prev = nxt
                n += 1
            yield "".join(buf)

    s = WordStream("sturmian", {"slope": theta, "intercept": rho, "variant": variant}, chunks)
    s.integer_hits = hits
    return s


# ---------------------------------------------------------------------------
# standard words


def _quotient_iter(a) -> Iterator[int]:
    """Partial quotients a_1, a_2, ... from a CFExpansion or an iterable."""
    if isinstance(a, CFExpansion):
        it = a.quotients()
        next(it)
        return it
    return iter(a)


@dataclass(frozen=True)
class StandardWordSequence:
    quotients: tuple[int, ...]   # a_1 .. a_K
    words: tuple[str, ...]       # M_0 .. M_K

    @property
    def K(self) -> int:
        return len(self.words) - 1

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(w) for w in self.words)

    def M(self, k: int) -> str:
        return self.words[k]

    def W(self, k: int) -> str:
        """M_0 M_1 ... M_{k-2} (empty for k < 2)."""
        return "".join(self.words[: max(k - 1, 0)])

    def tilde(self, k: int) -> str:
        """(M_k M_{k-1}) with its last two letters removed."""
        return (self.words[k] + self.words[k - 1])[:-2]

    def eta(self, k: int) -> Fraction:
        return Fraction(len(self.words[k - 1]), len(self.words[k]))

    def t(self, k: int) -> Fraction:
        return Fraction(len(self.W(k)), len(self.words[k]))


def standard_words(a, K: int) -> StandardWordSequence:
    """M_0 = 0, M_1 = 0^(a_1 - 1) 1, M_{k+1} = M_k^(a_{k+1}) M_{k-1}."""
    qs = list(islice(_quotient_iter(a), K))
    if len(qs) < K:
        raise ValueError(f"need {K} partial quotients, got {len(qs)}")
    if any(x < 1 for x in qs):
        raise ValueError("partial quotients must be >= 1")
    words = ["0"]
    if K >= 1:
        words.append("0" * (qs[0] - 1) + "1")
    for k in range(1, K):
        words.append(words[k] * qs[k] + words[k - 1])
    return StandardWordSequence(tuple(qs), tuple(words))


def _standard_word_iter(a) -> Iterator[str]:
    it = _quotient_iter(a)
    prev = "0"
    yield prev
    a1 = next(it)
    if a1 < 1:
        raise ValueError("partial quotients must be >= 1")
    cur = "0" * (a1 - 1) + "1"
    yield cur
    for ak in it:
        if ak < 1:
            raise ValueError("partial quotients must be >= 1")
        prev, cur = cur, cur * ak + prev
        yield cur


def concatenation_word(a) -> WordStream:
    """The infinite word M_0 M_1 M_2 ..."""
    label = str(a) if isinstance(a, CFExpansion) else "custom"
    return WordStream("concatenation", {"cf": label}, lambda: _standard_word_iter(a))


def characteristic_word(a) -> WordStream:
    """lim M_k: the Sturmian word of slope [0; a_1, a_2, ...] and intercept 0."""

    def chunks():
        done = 0
        for k, m in enumerate(_standard_word_iter(a)):
            if k == 0:
                continue  # M_0 is not a prefix of M_1 when a_1 = 1
            yield m[done:]
            done = len(m)

    label = str(a) if isinstance(a, CFExpansion) else "custom"
    return WordStream("characteristic", {"cf": label}, chunks)


EXTREMAL_CF = CFExpansion(0, (), (2, 1, 1))


def extremal_word() -> WordStream:
    """Concatenation word for slope [0; (2,1,1)] = (sqrt(10) - 2) / 3."""
    s = concatenation_word(EXTREMAL_CF)
    s.name = "extremal"
    s.params = {}
    return s


# ---------------------------------------------------------------------------
# classical words


_FIB = str.maketrans({"0": "01", "1": "0"})


def fibonacci_word(N: int) -> str:
    """Prefix of the fixed point of 0 -> 01, 1 -> 0."""
    if N < 0:
        raise ValueError("N must be non-negative")
    w = "0"
    while len(w) < N:
        w = w.translate(_FIB)
    return w[:N]


def thue_morse_word(N: int) -> str:
    """t_k = parity of the number of ones in k (k counted from 0)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return "".join("1" if k.bit_count() & 1 else "0" for k in range(N))


def fibonacci_stream() -> WordStream:
    def chunks():
        done, w = 0, "0"
        while True:
            w = w.translate(_FIB)
            yield w[done:]
            done = len(w)

    return WordStream("fibonacci", {}, chunks)


def thue_morse_stream(chunk: int = 4096) -> WordStream:
    def chunks():
        k = 0
        while True:
            yield thue_morse_word(k + chunk)[k:]
            k += chunk

    return WordStream("thue-morse", {}, chunks)


def periodic_word(preperiod: str, period: str) -> WordStream:
    if not period:
        raise ValueError("period must be nonempty")
    alphabet = max(2, int(max(preperiod + period)) + 1)

    def chunks():
        if preperiod:
            yield preperiod
        block = period * max(1, 4096 // len(period))
        while True:
            yield block

    return WordStream("periodic", {"pre": preperiod, "period": period}, chunks, alphabet)


def de_bruijn_word(b: int, n: int, budget: int = DEFAULT_DE_BRUIJN_BUDGET) -> str:
    """Linear de Bruijn word of order n over {0..b-1}, length b^n + n - 1.

    Concatenation of the Lyndon words of length dividing n in
    lexicographic order (Fredricksen-Kessler-Maiorana), then the first
    n - 1 symbols appended to linearize the cycle.
    """
    if not 2 <= b <= 10 or n < 1:
        raise ValueError("need 2 <= b <= 10 and n >= 1")
    if b**n + n - 1 > budget:
        raise BudgetExceeded(f"de Bruijn word of length {b**n + n - 1} exceeds budget {budget}")
    a = [0] * (n + 1)
    seq: list[int] = []

    def db(t: int, p: int) -> None:
        if t > n:
            if n % p == 0:
                seq.extend(a[1 : p + 1])
            return
        a[t] = a[t - p]
        db(t + 1, p)
        for j in range(a[t - p] + 1, b):
            a[t] = j
            db(t + 1, t)

    db(1, 1)
    cyc = "".join(DIGITS[c] for c in seq)
    return cyc + cyc[: n - 1]


# ---------------------------------------------------------------------------
# morphisms


def parse_morphism(text: str) -> dict[str, str]:
    """``"0:001,1:01"`` -> ``{"0": "001", "1": "01"}``."""
    images = {}
    for part in text.split(","):
        k, sep, v = part.partition(":")
        if not sep:
            raise ValueError(f"morphism entries look like 'letter:image', got {part!r}")
        images[k.strip()] = v.strip()
    return images


def apply_morphism(images: Mapping[str, str], w: WordStream | str, lead: str = "") -> WordStream:
    """The word ``lead + phi(w_1) phi(w_2) ...`` for a nonerasing morphism phi.

    ``stream.distinguishes_01`` records whether phi(01) != phi(10).
    """
    images = dict(images)
    for k, v in images.items():
        if not v:
            raise ValueError(f"image of {k!r} is empty; expansion rate undefined")
    symbols = "".join(images.values()) + lead + "".join(images)
    alphabet = max(2, int(max(symbols)) + 1)

    def chunks():
        if lead:
            yield lead
        src = iter(w)
        while True:
            block = "".join(islice(src, 1024))
            if not block:
                return
            try:
                yield "".join(images[c] for c in block)
            except KeyError as exc:
                raise ValueError(f"no image for symbol {exc.args[0]!r}") from None

    label = ",".join(f"{k}:{images[k]}" for k in sorted(images))
    src_name = w.spec_string() if isinstance(w, WordStream) else "finite"
    s = WordStream("morphic", {"images": label, "lead": lead, "source": src_name}, chunks, alphabet)
    s.distinguishes_01 = images.get("0", "") + images.get("1", "") != images.get("1", "") + images.get("0", "")
    return s


def is_primitive(w: str) -> bool:
    """True when w is not a proper power V^k, k >= 2."""
    return bool(w) and (w + w).find(w, 1) == len(w)
