"""Odometer arithmetic on mixed-radix spaces, substitutions and Fibonacci
words, exact quadratic-irrational arithmetic and Sturmian codings, and
periodicity of two-sided words."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .words import Alphabet, BiWord, UltWord, Word, as_word


class InvalidPointError(ValueError):
    """The word is not a point of the given digit space."""


class Radix:
    """Eventually periodic sequence of digit bounds d_j >= 2 (head + cycle)."""

    def __init__(self, head: Sequence[int], cycle: Sequence[int]):
        self.head = tuple(int(d) for d in head)
        self.cycle = tuple(int(d) for d in cycle)
        if not self.cycle:
            raise ValueError("radix cycle must be nonempty")
        if any(d < 2 for d in self.head + self.cycle):
            raise ValueError("all digit bounds must be >= 2")

    def digit(self, j: int) -> int:
        if j < len(self.head):
            return self.head[j]
        return self.cycle[(j - len(self.head)) % len(self.cycle)]

    def period(self, l: int) -> int:
        """Product of the first l digit bounds."""
        out = 1
        for j in range(l):
            out *= self.digit(j)
        return out

    @property
    def all_odd(self) -> bool:
        return all(d % 2 == 1 for d in self.head + self.cycle)

    @property
    def has_even_digit(self) -> bool:
        return not self.all_odd

    @property
    def in_class_two_then_odd(self) -> bool:
        """First bound 2, all later bounds odd."""
        span = len(self.head) + len(self.cycle) + 1
        return self.digit(0) == 2 and all(
            self.digit(j) % 2 == 1 for j in range(1, span)
        )

    def max_digit(self) -> int:
        return max(self.head + self.cycle)

    def alphabet(self, extra: Sequence[str] = ()) -> Alphabet:
        return Alphabet([str(i) for i in range(self.max_digit())] + list(extra))

    def check_point(self, x: UltWord):
        """Every letter must be a numeral below its digit bound."""
        span = len(x.head) + len(self.head)
        span += math.lcm(len(x.cycle), len(self.cycle))
        for j in range(span):
            a = x.letter(j)
            if not a.isdigit() or int(a) >= self.digit(j):
                raise InvalidPointError(
                    "letter %r at position %d exceeds digit bound %d"
                    % (a, j, self.digit(j))
                )

    def zero(self) -> UltWord:
        return UltWord((), ("0",))

    def max_word_from(self, j: int) -> UltWord:
        """The word (d_j - 1)(d_{j+1} - 1)... as letters."""
        head = tuple(str(self.digit(i) - 1) for i in range(j, len(self.head)))
        cyc = tuple(str(d - 1) for d in self.cycle)
        if j >= len(self.head):
            k = (j - len(self.head)) % len(self.cycle)
            return UltWord((), cyc[k:] + cyc[:k])
        return UltWord(head, cyc)

    def __eq__(self, other):
        return (
            isinstance(other, Radix)
            and self.head == other.head
            and self.cycle == other.cycle
        )

    def __hash__(self):
        return hash((self.head, self.cycle))

    def __repr__(self):
        return "Radix(%s)" % format_radix(self)


def format_radix(d: Radix) -> str:
    parts = [str(v) for v in d.head]
    parts.append("(%s)^inf" % ",".join(str(v) for v in d.cycle))
    return ",".join(parts)


def parse_radix(s: str) -> Radix:
    """`2,3,(5)^inf` (also accepts the `^rep` suffix for the tail)."""
    s = s.strip()
    for suffix in ("^inf", "^rep"):
        if s.endswith(suffix):
            open_idx = s.rfind("(")
            if open_idx < 0 or not s[: -len(suffix)].endswith(")"):
                raise ValueError("bad radix %r" % s)
            cycle = [int(t) for t in s[open_idx + 1 : -len(suffix) - 1].split(",")]
            head_str = s[:open_idx].rstrip(",")
            head = [int(t) for t in head_str.split(",")] if head_str else []
            return Radix(head, cycle)
    # a bare comma list denotes head digits repeated... reject instead: the
    # grammar always carries a parenthesized repeating tail
    raise ValueError("radix must end with (tail)^inf: %r" % s)


# ---------------------------------------------------------------------------
# odometer


def _suffix_is_constant(d: Radix, x: UltWord, j0: int, value_of) -> bool:
    """True iff value_of(letter, digit bound) holds at every position >= j0."""
    span = j0 + len(x.head) + len(d.head) + math.lcm(len(x.cycle), len(d.cycle))
    return all(value_of(int(x.letter(j)), d.digit(j)) for j in range(j0, span))


def odometer_succ(d: Radix, x: UltWord) -> UltWord:
    """The +1-with-carry map; wraps the all-maximal word to the zero word."""
    d.check_point(x)
    span = len(x.head) + len(d.head) + math.lcm(len(x.cycle), len(d.cycle))
    for n in range(span):
        if int(x.letter(n)) < d.digit(n) - 1:
            head = ("0",) * n + (str(int(x.letter(n)) + 1),)
            return UltWord(head + x.drop(n + 1).head, x.drop(n + 1).cycle)
    return d.zero()


def odometer_pred(d: Radix, x: UltWord) -> UltWord:
    """Inverse of odometer_succ, by the mirrored borrow rule."""
    d.check_point(x)
    span = len(x.head) + len(d.head) + math.lcm(len(x.cycle), len(d.cycle))
    for n in range(span):
        if int(x.letter(n)) > 0:
            head = tuple(str(d.digit(j) - 1) for j in range(n))
            head += (str(int(x.letter(n)) - 1),)
            return UltWord(head + x.drop(n + 1).head, x.drop(n + 1).cycle)
    return d.max_word_from(0)


def odometer_iter(d: Radix, x: UltWord, i: int) -> UltWord:
    """i-th iterate (i may be negative) via digitwise add with carries."""
    d.check_point(x)
    if i == 0:
        return x
    carry = i
    head: list[str] = []
    j = 0
    # long carries only survive through constant max/zero tails
    while carry != 0:
        if carry == 1 and _suffix_is_constant(d, x, j, lambda v, b: v == b - 1):
            return UltWord(tuple(head), ("0",))
        if carry == -1 and _suffix_is_constant(d, x, j, lambda v, b: v == 0):
            tail = d.max_word_from(j)
            return UltWord(tuple(head) + tail.head, tail.cycle)
        t = int(x.letter(j)) + carry
        head.append(str(t % d.digit(j)))
        carry = t // d.digit(j)
        j += 1
    rest = x.drop(j)
    return UltWord(tuple(head) + rest.head, rest.cycle)


def prefix_succ(d: Radix, t: Word) -> Word:
    """Cyclic successor on length-|t| digit strings (odometer on finite
    sequences)."""
    out = [int(a) for a in t]
    for j in range(len(out)):
        if out[j] < d.digit(j) - 1:
            out[j] += 1
            break
        out[j] = 0
    return tuple(str(v) for v in out)


def prefix_iter(d: Radix, t: Word, i: int) -> Word:
    """i-th cyclic iterate on length-|t| digit strings."""
    n = len(t)
    value = 0
    mult = 1
    for j in range(n):
        value += int(t[j]) * mult
        mult *= d.digit(j)
    value = (value + i) % mult if n else 0
    out = []
    for j in range(n):
        b = d.digit(j)
        out.append(str(value % b))
        value //= b
    return tuple(out)


def odometer_level_orbit(d: Radix, l: int) -> list[Word]:
    """The orbit of 0^(l+1) under the cyclic successor: a permutation cycle of
    all length-(l+1) prefixes."""
    t = ("0",) * (l + 1)
    out = [t]
    for _ in range(d.period(l + 1) - 1):
        t = prefix_succ(d, t)
        out.append(t)
    return out


def period_spectrum(d: Radix, l_max: int) -> list[int]:
    """[d_0 * ... * d_{l-1} for l = 1 .. l_max]."""
    return [d.period(l) for l in range(1, l_max + 1)]


def orbit_point(d: Radix, i: int) -> UltWord:
    """The i-th iterate of the zero word."""
    return odometer_iter(d, d.zero(), i)


# ---------------------------------------------------------------------------
# substitutions and Fibonacci words


class Substitution:
    """Letter-to-word map extended to words by concatenation."""

    def __init__(self, images: dict):
        self.images = {a: as_word(w) for a, w in images.items()}
        if any(len(w) == 0 for w in self.images.values()):
            raise ValueError("substitution images must be nonempty")

    def apply(self, w) -> Word:
        out: list = []
        for a in as_word(w):
            out.extend(self.images[a])
        return tuple(out)


def substitute(t: Substitution, w, k: int) -> Word:
    if k < 0:
        raise ValueError("iteration count must be >= 0")
    out = as_word(w)
    for _ in range(k):
        out = t.apply(out)
    return out


FIB_SUBSTITUTION = Substitution({"0": "1", "1": "01"})


@lru_cache(maxsize=None)
def fibonacci_word(p: int) -> Word:
    """w_0 = 01, w_1 = 101, w_{p+2} = w_p w_{p+1}."""
    if p == 0:
        return ("0", "1")
    if p == 1:
        return ("1", "0", "1")
    return fibonacci_word(p - 2) + fibonacci_word(p - 1)


@lru_cache(maxsize=None)
def fibonacci_len(p: int) -> int:
    """f_0 = 2, f_1 = 3, f_{p+2} = f_p + f_{p+1}."""
    if p == 0:
        return 2
    if p == 1:
        return 3
    return fibonacci_len(p - 2) + fibonacci_len(p - 1)


def fibonacci_limit_prefix(n: int) -> Word:
    """First n letters of the one-sided limit of the reversed words w_p."""
    p = 0
    while fibonacci_len(p) < n:
        p += 1
    return tuple(reversed(fibonacci_word(p)))[:n]


# ---------------------------------------------------------------------------
# exact quadratic arithmetic


def _sign_a_plus_b_sqrt(a: int, b: int, disc: int) -> int:
    """Sign of a + b*sqrt(disc), by integer arithmetic."""
    if b == 0:
        return (a > 0) - (a < 0)
    if a == 0:
        return (b > 0) - (b < 0)
    if a > 0 and b > 0:
        return 1
    if a < 0 and b < 0:
        return -1
    # opposite signs: compare a^2 with b^2 * disc
    lhs, rhs = a * a, b * b * disc
    if lhs == rhs:
        return 0
    if a > 0:  # b < 0
        return 1 if lhs > rhs else -1
    return -1 if lhs > rhs else 1


class QuadraticReal:
    """(a + b*sqrt(disc)) / c with integer a, b, c > 0 and disc a positive
    non-square; comparisons are decided exactly."""

    __slots__ = ("a", "b", "c", "disc")

    def __init__(self, a: int, b: int, c: int, disc: int):
        if c == 0:
            raise ValueError("zero denominator")
        if disc <= 0 or math.isqrt(disc) ** 2 == disc:
            raise ValueError("disc must be a positive non-square")
        if c < 0:
            a, b, c = -a, -b, -c
        g = math.gcd(math.gcd(abs(a), abs(b)), c)
        self.a, self.b, self.c, self.disc = a // g, b // g, c // g, disc

    @classmethod
    def from_fraction(cls, q: Fraction, disc: int) -> "QuadraticReal":
        return cls(q.numerator, 0, q.denominator, disc)

    @property
    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other) -> "QuadraticReal":
        if isinstance(other, QuadraticReal):
            if other.disc != self.disc and other.b != 0 and self.b != 0:
                raise ValueError("mixed discriminants are not comparable here")
            return other
        return QuadraticReal.from_fraction(Fraction(other), self.disc)

    def __add__(self, other) -> "QuadraticReal":
        o = self._coerce(other)
        return QuadraticReal(
            self.a * o.c + o.a * self.c,
            self.b * o.c + o.b * self.c,
            self.c * o.c,
            self.disc,
        )

    def __sub__(self, other) -> "QuadraticReal":
        o = self._coerce(other)
        return QuadraticReal(
            self.a * o.c - o.a * self.c,
            self.b * o.c - o.b * self.c,
            self.c * o.c,
            self.disc,
        )

    def scale(self, n: int) -> "QuadraticReal":
        return QuadraticReal(self.a * n, self.b * n, self.c, self.disc)

    def sign(self) -> int:
        return _sign_a_plus_b_sqrt(self.a, self.b, self.disc)

    def cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (QuadraticReal, int, Fraction)):
            return NotImplemented
        return self.cmp(other) == 0

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.disc))

    def floor(self) -> int:
        # bracket with an integer square root, then bisect with exact cmp
        lo = (self.a - abs(self.b) * (math.isqrt(self.disc) + 1)) // self.c - 1
        hi = (self.a + abs(self.b) * (math.isqrt(self.disc) + 1)) // self.c + 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.cmp(mid) >= 0:
                lo = mid
            else:
                hi = mid - 1
        return lo

    def frac(self) -> "QuadraticReal":
        return self - self.floor()

    def approx(self) -> float:
        return (self.a + self.b * math.sqrt(self.disc)) / self.c

    def __repr__(self):
        return "(%d %s %d sqrt %d)/%d" % (
            self.a,
            "+" if self.b >= 0 else "-",
            abs(self.b),
            self.disc,
            self.c,
        )


def parse_quadratic(s: str) -> QuadraticReal:
    """`(p + q sqrt D)/s`, e.g. `(3 - 1 sqrt 5)/2`."""
    s = s.strip()
    if not s.startswith("("):
        raise ValueError("expected '(p +- q sqrt D)/s': %r" % s)
    close = s.rfind(")")
    inner = s[1:close]
    denom_part = s[close + 1 :].strip()
    denom = 1
    if denom_part:
        if not denom_part.startswith("/"):
            raise ValueError("bad denominator in %r" % s)
        denom = int(denom_part[1:])
    toks = inner.split()
    # forms: "p + q sqrt D" | "p - q sqrt D" | "p" | "q sqrt D"
    if "sqrt" in toks:
        i = toks.index("sqrt")
        disc = int(toks[i + 1])
        q = int(toks[i - 1])
        rest = toks[: i - 1]
        if rest and rest[-1] in ("+", "-"):
            if rest[-1] == "-":
                q = -q
            rest = rest[:-1]
        p = int(rest[0]) if rest else 0
        return QuadraticReal(p, q, denom, disc)
    return QuadraticReal(int(toks[0]), 0, denom, 5)


# ---------------------------------------------------------------------------
# Sturmian coding


class SturmianParameterError(ValueError):
    pass


def check_rotation_number(r: QuadraticReal):
    if r.is_rational:
        raise SturmianParameterError("rotation number must be irrational")
    half = Fraction(1, 2)
    if not (r.cmp(0) > 0 and r.cmp(half) < 0):
        raise SturmianParameterError("rotation number must lie in (0, 1/2)")


def sturmian_code(r: QuadraticReal, x, a: int, b: int) -> Word:
    """Letters 0/1 of the rotation coding on window a..b (inclusive): position
    n is 0 exactly when frac(x + n*r) lies in [0, r)."""
    check_rotation_number(r)
    if a > b:
        raise ValueError("window must satisfy a <= b")
    if not isinstance(x, QuadraticReal):
        x = QuadraticReal.from_fraction(Fraction(x), r.disc)
    out = []
    for n in range(a, b + 1):
        y = (x + r.scale(n)).frac()
        out.append("0" if y.cmp(r) < 0 else "1")
    return tuple(out)


# ---------------------------------------------------------------------------
# periodic points of the shift


def periodic_point_period(b: BiWord):
    """Minimal i > 0 with shift(b, i) == b, or None if b is aperiodic."""
    if b.core:
        return None
    p = len(b.right)
    return p if b.shift(p) == b else None
