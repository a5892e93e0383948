"""Continued fractions of rationals and real quadratic irrationals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice

from gmpy2 import mpq

from .scalars import QuadScalar, as_rational


@dataclass(frozen=True)
class ContinuedFraction:
    """``[integer_part; preperiod..., (period...)*]``.  ``period`` is empty iff the value is rational."""

    integer_part: int
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def partial_quotients(self):
        yield self.integer_part
        yield from self.preperiod
        while self.period:
            yield from self.period

    def terms(self, count: int) -> list[int]:
        return list(islice(self.partial_quotients(), count))

    def convergents(self):
        """Yield ``(p, q)`` for successive convergents ``p/q``."""
        p0, q0, p1, q1 = 1, 0, 0, 1
        for a in self.partial_quotients():
            p0, p1 = a * p0 + p1, p0
            q0, q1 = a * q0 + q1, q0
            yield p0, q0

    def __str__(self):
        body = ", ".join(str(a) for a in self.preperiod)
        if self.period:
            per = "(" + ", ".join(str(a) for a in self.period) + ")"
            body = f"{body}, {per}" if body else per
        return f"[{self.integer_part}; {body}]" if body else f"[{self.integer_part}]"


def _rational_cf(x: mpq) -> ContinuedFraction:
    p, q = x.numerator, x.denominator
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    return ContinuedFraction(terms[0], tuple(terms[1:]), ())


def _surd_form(x: QuadScalar) -> tuple[int, int, int]:
    """Write ``x = (P + sqrt(D)) / Q`` with integers and ``Q | D - P^2``."""
    a, b = x.a, x.b
    w = math.lcm(int(a.denominator), int(b.denominator))
    u = int(a * w)
    v = int(b * w)
    D = v * v * x.d
    P, Qd = (u, w) if v > 0 else (-u, -w)
    if (D - P * P) % Qd:
        P, D, Qd = P * abs(Qd), D * Qd * Qd, Qd * abs(Qd)
    return P, D, Qd


def cf_expand(x) -> ContinuedFraction:
    """Exact continued fraction; periodic for quadratic irrationals."""
    if not isinstance(x, QuadScalar) or x.b == 0:
        return _rational_cf(as_rational(x))
    P, D, Qd = _surd_form(x)
    s = math.isqrt(D)
    seen: dict[tuple[int, int], int] = {}
    terms = []
    while (P, Qd) not in seen:
        seen[(P, Qd)] = len(terms)
        # floor((P + sqrt D)/Q) with sqrt D strictly between s and s+1
        a = (P + s) // Qd if Qd > 0 else (P + s + 1) // Qd
        terms.append(a)
        P = a * Qd - P
        Qd = (D - P * P) // Qd
    start = seen[(P, Qd)]
    if start == 0:
        # purely periodic: rotate so the period follows the integer part
        return ContinuedFraction(terms[0], (), tuple(terms[1:]) + (terms[0],))
    return ContinuedFraction(terms[0], tuple(terms[1:start]), tuple(terms[start:]))
