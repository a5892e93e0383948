"""Exact scalars: rationals (gmpy2 ``mpq``) and elements of a real quadratic field.

A :class:`QuadScalar` is ``a + b*sqrt(d)`` with rational ``a, b`` and a
squarefree ``d >= 0``.  Values with ``b == 0`` are rational and mix freely with
any ``d``; two genuinely irrational values must share ``d``.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

from gmpy2 import mpq

__all__ = [
    "Q",
    "QuadScalar",
    "FieldMismatch",
    "as_rational",
    "is_rational_value",
    "squarefree_part",
    "sqrt_rational",
    "qs_sign",
    "qs_arith",
    "sign",
    "format_rational",
    "parse_rational",
    "format_scalar",
    "parse_scalar",
    "NonCanonicalToken",
]

Q = mpq

_RATIONAL_TYPES = (int, type(mpq(0)), Fraction)


class FieldMismatch(ValueError):
    """Two irrational quadratic scalars live in different fields."""


class NonCanonicalToken(ValueError):
    pass


def as_rational(x) -> mpq:
    if isinstance(x, QuadScalar):
        if x.b != 0:
            raise ValueError(f"{x} is not rational")
        return x.a
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x, strict=False)
    return mpq(x)


def is_rational_value(x) -> bool:
    return not isinstance(x, QuadScalar) or x.b == 0


@lru_cache(maxsize=None)
def squarefree_part(n: int) -> tuple[int, int]:
    """Return ``(s, d)`` with ``n == s*s*d`` and ``d`` squarefree (``n >= 0``)."""
    if n < 0:
        raise ValueError("negative")
    if n == 0:
        return 0, 0
    s, d = 1, 1
    p = 2
    m = n
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        s *= p ** (e // 2)
        if e % 2:
            d *= p
        p += 1 if p == 2 else 2
    d *= m
    return s, d


class QuadScalar:
    """Immutable element ``a + b*sqrt(d)`` of the real field Q(sqrt d)."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a=0, b=0, d: int = 0):
        a = as_rational(a)
        b = as_rational(b)
        d = int(d)
        if d < 0:
            raise ValueError("d must be nonnegative")
        if b != 0 and d > 1:
            s, d = squarefree_part(d)
            b = b * s
        if d == 1:
            a, b = a + b, mpq(0)
        elif d == 0:
            b = mpq(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "d", d)

    def __setattr__(self, name, value):
        raise AttributeError("QuadScalar is immutable")

    @classmethod
    def lift(cls, x, d: int = 0) -> "QuadScalar":
        if isinstance(x, QuadScalar):
            return x
        return cls(as_rational(x), 0, d)

    # -- predicates -------------------------------------------------------
    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def conjugate(self) -> "QuadScalar":
        return QuadScalar(self.a, -self.b, self.d)

    def norm(self) -> mpq:
        return self.a * self.a - self.b * self.b * self.d

    def sign(self) -> int:
        a, b = self.a, self.b
        sa = (a > 0) - (a < 0)
        sb = (b > 0) - (b < 0)
        if sb == 0:
            return sa
        if sa == 0 or sa == sb:
            return sb
        # opposite signs: the larger of a^2 and b^2 d wins
        return sa if a * a > b * b * self.d else sb

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def to_decimal(self, digits: int = 50):
        import mpmath

        with mpmath.workdps(digits + 10):
            return mpmath.mpf(self.a.numerator) / self.a.denominator + (
                mpmath.mpf(self.b.numerator) / self.b.denominator
            ) * mpmath.sqrt(self.d)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, QuadScalar):
            if self.b != 0 and other.b != 0 and self.d != other.d:
                raise FieldMismatch(f"sqrt({self.d}) vs sqrt({other.d})")
            d = self.d if self.b != 0 else other.d if other.b != 0 else max(self.d, other.d)
            return other, d
        if isinstance(other, _RATIONAL_TYPES):
            return QuadScalar(as_rational(other), 0, self.d), self.d
        return NotImplemented, None

    def __add__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a + o.a, self.b + o.b, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadScalar(-self.a, -self.b, self.d)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(self.a - o.a, self.b - o.b, d)

    def __rsub__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(o.a - self.a, o.b - self.b, d)

    def __mul__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(
            self.a * o.a + self.b * o.b * d, self.a * o.b + self.b * o.a, d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        if o.is_zero():
            raise ZeroDivisionError("QuadScalar division by zero")
        n = o.a * o.a - o.b * o.b * d
        num = QuadScalar(self.a, self.b, d) * QuadScalar(o.a, -o.b, d)
        return QuadScalar(num.a / n, num.b / n, d)

    def __rtruediv__(self, other):
        o, d = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadScalar(o.a, o.b, d) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return QuadScalar(1, 0, self.d) / self ** (-e)
        result = QuadScalar(1, 0, self.d)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadScalar):
            if self.b == 0 and other.b == 0:
                return self.a == other.a
            return self.a == other.a and self.b == other.b and self.d == other.d
        if isinstance(other, _RATIONAL_TYPES):
            return self.b == 0 and self.a == as_rational(other)
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        if self.b == 0:
            return f"QuadScalar({format_rational(self.a)})"
        return f"QuadScalar({format_rational(self.a)}, {format_rational(self.b)}, d={self.d})"

    def __str__(self):
        if self.b == 0:
            return format_rational(self.a)
        head = "" if self.a == 0 else format_rational(self.a)
        coef = self.b
        if head:
            op = "+" if coef > 0 else "-"
            coef = abs(coef)
            lead = f"{head}{op}"
        else:
            lead = ""
        c = "" if coef == 1 else "-" if coef == -1 else format_rational(coef) + "*"
        return f"{lead}{c}sqrt({self.d})"


def sign(x) -> int:
    """Sign of a rational or quadratic scalar."""
    if isinstance(x, QuadScalar):
        return x.sign()
    return (x > 0) - (x < 0)


def qs_sign(x: QuadScalar) -> int:
    return QuadScalar.lift(x).sign()


def qs_arith(x, y, op: str) -> QuadScalar:
    x = QuadScalar.lift(x)
    y = QuadScalar.lift(y)
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def sqrt_rational(r) -> QuadScalar:
    """Exact square root of a nonnegative rational as ``(s/q) * sqrt(d)``."""
    r = as_rational(r)
    if r < 0:
        raise ValueError("square root of a negative rational")
    p, q = r.numerator, r.denominator
    s, d = squarefree_part(p * q)
    if d in (0, 1):
        return QuadScalar(mpq(s, q))
    return QuadScalar(0, mpq(s, q), d)


def is_rational_matrix(rows) -> bool:
    return all(is_rational_value(x) for row in rows for x in row)


# -- text encoding -----------------------------------------------------------

_RAT_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def format_rational(x) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(token: str, strict: bool = True) -> mpq:
    """Parse ``p`` or ``p/q``; with ``strict`` reject unreduced or signed-zero forms."""
    m = _RAT_RE.match(token)
    if not m:
        if strict:
            raise NonCanonicalToken(f"malformed rational {token!r}")
        return mpq(Fraction(token))
    neg, num, den = m.group(1), int(m.group(2)), m.group(3)
    den = int(den) if den is not None else 1
    if strict:
        if den == 1 and m.group(3) is not None:
            raise NonCanonicalToken(f"non-canonical rational {token!r}")
        if math.gcd(num, den) != 1:
            raise NonCanonicalToken(f"non-canonical rational {token!r}")
        if neg and num == 0:
            raise NonCanonicalToken(f"non-canonical rational {token!r}")
    value = mpq(num, den)
    return -value if neg else value


def format_scalar(x) -> str:
    if isinstance(x, QuadScalar) and x.b != 0:
        return f"{format_rational(x.a)}|{format_rational(x.b)}"
    return format_rational(as_rational(x))


def parse_scalar(token: str, d: int, strict: bool = True):
    """Parse ``p/q`` or ``p/q|r/s`` (meaning p/q + r/s*sqrt(d))."""
    if "|" not in token:
        return parse_rational(token, strict)
    left, _, right = token.partition("|")
    a = parse_rational(left, strict)
    b = parse_rational(right, strict)
    if strict and b == 0:
        raise NonCanonicalToken(f"non-canonical scalar {token!r} (zero irrational part)")
    if d in (0, 1) or squarefree_part(d)[0] != 1:
        raise NonCanonicalToken(f"field d={d} is not a squarefree integer > 1")
    return QuadScalar(a, b, d)
