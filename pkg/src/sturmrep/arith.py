"""Exact arithmetic in Q(sqrt(d)) and continued fractions.

Everything here is integer-only: floors, signs and comparisons of
``(p + q*sqrt(d))/r`` are decided with :func:`math.isqrt` and squaring,
never with floats.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

Rational = Union[int, Fraction]

DEFAULT_CF_BUDGET = 10_000


class PeriodNotFound(RuntimeError):
    """Raised when a quadratic surd does not cycle within the term budget."""


def integer_sqrt(n: int) -> int:
    """Return floor(sqrt(n)) for a non-negative integer ``n``."""
    if n < 0:
        raise ValueError("integer_sqrt of a negative number")
    return math.isqrt(n)


SQUAREFREE_TRIAL_LIMIT = 10**5


def _square_part(d: int) -> tuple[int, int]:
    """Split d = k*k*rest with rest squarefree.

    Trial division runs up to SQUAREFREE_TRIAL_LIMIT.  A cofactor left with
    no prime below the limit is squarefree unless it is a perfect square,
    provided it is smaller than the cube of the limit; larger cofactors
    cannot be certified and raise ValueError.
    """
    k, rest, f = 1, 1, 2
    while f * f <= d and f <= SQUAREFREE_TRIAL_LIMIT:
        if d % f == 0:
            e = 0
            while d % f == 0:
                d //= f
                e += 1
            k *= f ** (e // 2)
            if e % 2:
                rest *= f
        f += 1 if f == 2 else 2
    if d > 1:
        root = math.isqrt(d)
        if root * root == d:
            k *= root
        elif f <= SQUAREFREE_TRIAL_LIMIT or d < SQUAREFREE_TRIAL_LIMIT**3:
            rest *= d
        else:
            raise ValueError("radicand too large to reduce to squarefree form")
    return k, rest


@dataclass(frozen=True, init=False)
class QuadraticNumber:
    """The real number ``(p + q*sqrt(d)) / r`` in canonical form.

    Canonical form: ``r > 0``, ``d`` squarefree and ``> 1`` when ``q != 0``,
    ``q == d == 0`` for rationals, and ``gcd(p, q, r) == 1``.
    """

    p: int
    q: int
    d: int
    r: int

    def __init__(self, p: int, q: int = 0, d: int = 0, r: int = 1):
        if r == 0:
            raise ZeroDivisionError("QuadraticNumber with r == 0")
        if d < 0:
            raise ValueError("radicand must be non-negative")
        if r < 0:
            p, q, r = -p, -q, -r
        if q == 0 or d == 0:
            q, d = 0, 0
        else:
            k, d = _square_part(d)
            q *= k
            if d == 1:
                p, q, d = p + q, 0, 0
        g = math.gcd(math.gcd(p, q), r)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "r", r // g)

    # -- construction -----------------------------------------------------

    @classmethod
    def from_rational(cls, x: Rational) -> "QuadraticNumber":
        x = Fraction(x)
        return cls(x.numerator, 0, 0, x.denominator)

    @classmethod
    def parse(cls, text: str) -> "QuadraticNumber":
        return parse_quadratic(text)

    # -- predicates -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def is_integer(self) -> bool:
        return self.q == 0 and self.r == 1

    def as_fraction(self) -> Fraction:
        if self.q:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.p, self.r)

    def sign(self) -> int:
        """Sign of the value, decided by squaring."""
        p, q = self.p, self.q
        sp = (p > 0) - (p < 0)
        sq = (q > 0) - (q < 0)
        if sq == 0:
            return sp
        if sp == 0 or sp == sq:
            return sq
        # opposite signs: compare p^2 with q^2 d (never equal, d is not a square)
        return sp if p * p > q * q * self.d else sq

    # -- field operations (same radicand only) ----------------------------

    def _coerce(self, other) -> "QuadraticNumber":
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber.from_rational(other)
        return NotImplemented

    def _common_d(self, other: "QuadraticNumber") -> int:
        if self.q and other.q and self.d != other.d:
            raise ValueError(f"radicands differ: sqrt({self.d}) vs sqrt({other.d})")
        return self.d or other.d

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._common_d(o)
        return QuadraticNumber(
            self.p * o.r + o.p * self.r, self.q * o.r + o.q * self.r, d, self.r * o.r
        )

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.p, -self.q, self.d, self.r)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        d = self._common_d(o)
        return QuadraticNumber(
            self.p * o.p + self.q * o.q * d,
            self.p * o.q + self.q * o.p,
            d,
            self.r * o.r,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "QuadraticNumber":
        # r / (p + q sqrt d) = r (p - q sqrt d) / (p^2 - q^2 d)
        den = self.p * self.p - self.q * self.q * self.d
        if den == 0:
            raise ZeroDivisionError("reciprocal of zero")
        return QuadraticNumber(self.r * self.p, -self.r * self.q, self.d, den)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    # -- ordering ---------------------------------------------------------

    def _cmp(self, other) -> int:
        o = self._coerce(other)
        if o is NotImplemented:
            raise TypeError(f"cannot compare QuadraticNumber with {type(other).__name__}")
        return (self - o).sign()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return (self.p, self.q, self.d, self.r) == (o.p, o.q, o.d, o.r)

    def __hash__(self):
        if self.q == 0:
            return hash(Fraction(self.p, self.r))
        return hash((self.p, self.q, self.d, self.r))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __floor__(self):
        return floor_quadratic(self)

    def __ceil__(self):
        f = floor_quadratic(self)
        return f if self.is_integer() else f + 1

    def __float__(self):
        # display only; nothing exact goes through here
        return (self.p + self.q * math.sqrt(self.d)) / self.r

    def __str__(self):
        sign = "-" if self.q < 0 else "+"
        return f"({self.p}{sign}{abs(self.q)}*sqrt({self.d}))/{self.r}"

    def __repr__(self):
        return f"QuadraticNumber({self})"


def floor_quadratic(x: QuadraticNumber) -> int:
    """Exact floor of ``x``; ``x.is_integer()`` tells whether it is attained."""
    if x.q == 0:
        return x.p // x.r
    root = math.isqrt(x.q * x.q * x.d)  # never exact: d is not a square
    fq = root if x.q > 0 else -root - 1
    return (x.p + fq) // x.r


_TERM = re.compile(r"([+-]?)(\d*)\*?(sqrt\((\d+)\))?")


def parse_quadratic(text: str) -> QuadraticNumber:
    """Parse ``"(p+q*sqrt(d))/r"`` and the usual shorthands.

    Accepted examples: ``"(-2+sqrt(10))/3"``, ``"(1+1*sqrt(5))/2"``,
    ``"1+sqrt(2)"``, ``"3/7"``, ``"-4"``.
    """
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty quadratic number")
    den = 1
    m = re.fullmatch(r"\((.*)\)/(\d+)", s)
    if m:
        s, den = m.group(1), int(m.group(2))
    else:
        m = re.fullmatch(r"([+-]?\d+)/(\d+)", s)
        if m:
            return QuadraticNumber(int(m.group(1)), 0, 0, int(m.group(2)))
        if s.startswith("(") and s.endswith(")"):
            s = s[1:-1]
    p = q = 0
    d = 0
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
            raise ValueError(f"cannot parse quadratic number {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        if m.group(3):
            coef = int(m.group(2)) if m.group(2) else 1
            rad = int(m.group(4))
            if d and rad != d:
                raise ValueError(f"mixed radicands in {text!r}")
            d = rad
            q += sign * coef
        else:
            if s[m.end(2):m.end(2) + 1] == "*":
                raise ValueError(f"cannot parse quadratic number {text!r}")
            p += sign * int(m.group(2))
        pos = m.end()
    if q == 0:
        d = 0
    return QuadraticNumber(p, q, d, den)


# ---------------------------------------------------------------------------
# continued fractions


@dataclass(frozen=True)
class CFExpansion:
    """``[integer_part; preperiod..., (period...)]``; empty period = finite."""

    integer_part: int
    preperiod: tuple[int, ...] = ()
    period: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if any(a < 1 for a in self.preperiod + self.period):
            raise ValueError("partial quotients after the first must be >= 1")

    @property
    def is_finite(self) -> bool:
        return not self.period

    def quotients(self) -> Iterator[int]:
        """a_0, a_1, ...; infinite when the expansion is periodic."""
        yield self.integer_part
        yield from self.preperiod
        while self.period:
            yield from self.period

    def terms(self, n: int) -> list[int]:
        out = []
        for a in self.quotients():
            if len(out) == n:
                break
            out.append(a)
        return out

    def __str__(self):
        body = [str(a) for a in self.preperiod]
        if self.period:
            body.append("(" + ",".join(map(str, self.period)) + ")")
        if not body:
            return f"[{self.integer_part}]"
        return f"[{self.integer_part};{','.join(body)}]"

    @classmethod
    def parse(cls, text: str) -> "CFExpansion":
        s = text.replace(" ", "")
        m = re.fullmatch(r"\[([+-]?\d+)(?:;([\d,]*?),?(?:\(([\d,]+)\))?)?\]", s)
        if not m:
            raise ValueError(f"cannot parse continued fraction {text!r}")
        pre = tuple(int(t) for t in m.group(2).split(",") if t) if m.group(2) else ()
        per = tuple(int(t) for t in m.group(3).split(",")) if m.group(3) else ()
        return cls(int(m.group(1)), pre, per)


def _rational_cf(x: Fraction) -> list[int]:
    num, den = x.numerator, x.denominator
    out = []
    while den:
        a, rem = divmod(num, den)
        out.append(a)
        num, den = den, rem
    return out


def _surd_steps(x: QuadraticNumber) -> Iterator[tuple[int, int, int]]:
    """States (P, Q) of the complete quotients (P + sqrt(D)) / Q and their floors."""
    s = 1 if x.q > 0 else -1
    P, Q, D = s * x.p, s * x.r, x.q * x.q * x.d
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    root = math.isqrt(D)
    while True:
        if Q > 0:
            a = (P + root) // Q
        else:
            a = -((P + root) // -Q) - 1
        yield P, Q, a
        P = a * Q - P
        Q = (D - P * P) // Q


def quadratic_quotients(x: QuadraticNumber | Rational) -> Iterator[int]:
    """Partial quotients a_0, a_1, ... generated lazily, without period search."""
    if not isinstance(x, QuadraticNumber):
        x = QuadraticNumber.from_rational(x)
    if x.q == 0:
        yield from _rational_cf(Fraction(x.p, x.r))
        return
    for _, _, a in _surd_steps(x):
        yield a


def cf_expand(x: QuadraticNumber | Rational, max_terms: int = DEFAULT_CF_BUDGET) -> CFExpansion:
    """Continued fraction of a rational or a real quadratic irrational.

    The eventual period is found by detecting the first repeated reduced
    state ``(P, Q)`` of the complete quotients ``(P + sqrt(D)) / Q``.
    """
    if not isinstance(x, QuadraticNumber):
        x = QuadraticNumber.from_rational(x)
    if x.q == 0:
        a = _rational_cf(Fraction(x.p, x.r))
        return CFExpansion(a[0], tuple(a[1:]), ())

    quotients: list[int] = []
    seen: dict[tuple[int, int], int] = {}
    for k, (P, Q, a) in enumerate(_surd_steps(x)):
        if k > max_terms:
            break
        if k >= 1:
            j = seen.setdefault((P, Q), k)
            if j != k:
                return CFExpansion(quotients[0], tuple(quotients[1:j]), tuple(quotients[j:k]))
        quotients.append(a)
    raise PeriodNotFound(f"no period for {x} within {max_terms} terms")


def cf_to_quadratic(cf: CFExpansion, radicand: int | None = None) -> QuadraticNumber:
    """Exact value of a finite or eventually periodic continued fraction.

    Long periods give discriminants too large to factor; passing the known
    squarefree ``radicand`` lets the square part be read off exactly.
    """
    if cf.is_finite:
        terms = (cf.integer_part,) + cf.preperiod
        acc = QuadraticNumber(terms[-1])
        for a in reversed(terms[:-1]):
            acc = acc.reciprocal() + a
        return acc

    # purely periodic tail y = [b1; ..., bm, y]: Q_m y^2 + (Q_{m-1} - P_m) y - P_{m-1} = 0
    p_prev, p_cur, q_prev, q_cur = 0, 1, 1, 0
    for b in cf.period:
        p_prev, p_cur = p_cur, b * p_cur + p_prev
        q_prev, q_cur = q_cur, b * q_cur + q_prev
    A, B, C = q_cur, q_prev - p_cur, -p_prev
    disc = B * B - 4 * A * C
    if radicand is not None:
        k2, rem = divmod(disc, radicand)
        k = math.isqrt(k2)
        if rem or k * k != k2:
            raise ValueError(f"discriminant is not a square multiple of {radicand}")
        acc = QuadraticNumber(-B, k, radicand, 2 * A)
    else:
        acc = QuadraticNumber(-B, 1, disc, 2 * A)
    for a in reversed(cf.preperiod):
        acc = acc.reciprocal() + a
    return acc.reciprocal() + cf.integer_part


@dataclass(frozen=True)
class Convergent:
    k: int
    p: int
    q: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.p, self.q)


def convergents(cf: CFExpansion | Sequence[int] | Iterable[int], k_max: int) -> list[Convergent]:
    """Convergents p_k/q_k for k = 0..k_max (fewer if the expansion is finite)."""
    quotients = cf.quotients() if isinstance(cf, CFExpansion) else iter(cf)
    out: list[Convergent] = []
    p2, p1, q2, q1 = 0, 1, 1, 0
    for k, a in enumerate(quotients):
        if k > k_max:
            break
        p2, p1 = p1, a * p1 + p2
        q2, q1 = q1, a * q1 + q2
        if p1 * q2 - p2 * q1 != (-1 if k % 2 == 0 else 1):
            raise ArithmeticError(f"determinant identity failed at k={k}")
        out.append(Convergent(k, p1, q1))
    return out
