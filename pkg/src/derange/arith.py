"""Exact arithmetic substrate: factorials, binomials, rising factorials.

Python ints are arbitrary precision, so they carry every sequence value
directly; exact rationals are ``fractions.Fraction``, which is always held
in reduced form with a positive denominator. Factorials live in a growable
per-process table because the identity sweeps ask for them millions of
times.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache

Rational = Fraction

_FACTORIALS: list[int] = [1]
_FACTORIALS_LOCK = threading.Lock()


def factorial(n: int) -> int:
    """n! for n >= 0, served from the growable table."""
    if n < 0:
        raise ValueError("factorial requires n >= 0")
    if n >= len(_FACTORIALS):
        # Growth is locked: a concurrent append between reading the last
        # entry and its index would pair them inconsistently.
        with _FACTORIALS_LOCK:
            while len(_FACTORIALS) <= n:
                _FACTORIALS.append(_FACTORIALS[-1] * len(_FACTORIALS))
    return _FACTORIALS[n]


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """C(n, k) for n >= 0; by convention 0 when k < 0 or k > n.

    The out-of-range convention lets convolution sums run over their full
    index range without edge guards.
    """
    if n < 0:
        raise ValueError("binomial requires n >= 0")
    if k < 0 or k > n:
        return 0
    return factorial(n) // (factorial(k) * factorial(n - k))


def rising_factorial(r: int, q: int) -> int:
    """(r+1)(r+2)...(r+q) = (r+q)!/r!, the empty product 1 when q = 0."""
    if r < 0 or q < 0:
        raise ValueError("rising_factorial requires r >= 0 and q >= 0")
    return factorial(r + q) // factorial(r)
