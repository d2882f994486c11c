"""Truncated power-series algebra over exact rationals.

A series is a tuple of ordinary coefficients up to a fixed order N. An
integer sequence a_n is encoded as an exponential generating function by
storing a_n/n! in slot n; ``term`` multiplies back by n! on demand and
refuses to return a non-integer. Products never extend the order: mixing
different truncations is the classic silent bug in series code, so it is
an error here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import binomial, factorial

TermSequence = Sequence[int]


class NonIntegralTermError(ValueError):
    """n! times a coefficient is not an integer: the series is not the
    EGF of an integer sequence at that index."""


@dataclass(frozen=True)
class TruncatedSeries:
    """Ordinary coefficients coeffs[0..N] of a series truncated at order N."""

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least its constant coefficient")
        object.__setattr__(
            self, "coeffs", tuple(Fraction(c) for c in self.coeffs)
        )

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        _require_same_order(self, other, "add")
        return TruncatedSeries(
            tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return cauchy_product(self, other)


def _require_same_order(a: TruncatedSeries, b: TruncatedSeries, what: str) -> None:
    if a.order != b.order:
        raise ValueError(
            f"cannot {what} series of different orders "
            f"({a.order} vs {b.order}); truncate consistently first"
        )


def from_terms(terms: TermSequence) -> TruncatedSeries:
    """EGF of an integer sequence: coeffs[n] = terms[n]/n!."""
    if len(terms) == 0:
        raise ValueError("from_terms requires at least one term")
    return TruncatedSeries(
        tuple(Fraction(t, factorial(n)) for n, t in enumerate(terms))
    )


def term(series: TruncatedSeries, n: int) -> int:
    """n! * coeffs[n], the n-th term of the encoded integer sequence."""
    if n < 0 or n > series.order:
        raise IndexError(f"term index {n} outside order {series.order}")
    value = factorial(n) * series.coeffs[n]
    if value.denominator != 1:
        raise NonIntegralTermError(
            f"{n}! * coefficient = {value} is not an integer at index {n}"
        )
    return value.numerator


def terms(series: TruncatedSeries) -> list[int]:
    """All terms n! * coeffs[n]; fails if any one is not an integer."""
    return [term(series, n) for n in range(series.order + 1)]


def cauchy_product(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Coefficient convolution w_n = sum_{k<=n} a_k b_{n-k} at fixed order."""
    _require_same_order(a, b, "multiply")
    ac, bc = a.coeffs, b.coeffs
    out = []
    for n in range(len(ac)):
        acc = Fraction(0)
        for k in range(n + 1):
            acc += ac[k] * bc[n - k]
        out.append(acc)
    return TruncatedSeries(tuple(out))


def binomial_convolution(a: TermSequence, b: TermSequence) -> list[int]:
    """c_n = sum_{k<=n} C(n,k) a_k b_{n-k}, the term sequence of the
    product of the EGFs of a and b."""
    if len(a) != len(b):
        raise ValueError(
            f"binomial_convolution requires equal lengths ({len(a)} vs {len(b)})"
        )
    return [
        sum(binomial(n, k) * a[k] * b[n - k] for k in range(n + 1))
        for n in range(len(a))
    ]


def series_exp(sign: int, order: int) -> TruncatedSeries:
    """Truncation of e^(sign*x): coeffs[n] = sign^n / n!."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries(
        tuple(Fraction(sign**n, factorial(n)) for n in range(order + 1))
    )


def series_reciprocal_pole(m: int, p: int, order: int) -> TruncatedSeries:
    """Truncation of 1/(1 - m*x)^p: coeffs[n] = C(n+p-1, p-1) * m^n."""
    if p < 1:
        raise ValueError("pole multiplicity p must be >= 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    return TruncatedSeries(
        tuple(Fraction(binomial(n + p - 1, p - 1) * m**n) for n in range(order + 1))
    )


def series_shift(a: TruncatedSeries, r: int) -> TruncatedSeries:
    """Multiply by x^r at fixed order: coefficients move up r slots, the
    top r fall off, the bottom r are zero."""
    if r < 0:
        raise ValueError("shift distance must be nonnegative")
    if r == 0:
        return a
    n = len(a.coeffs)
    kept = a.coeffs[: max(n - r, 0)]
    return TruncatedSeries((Fraction(0),) * min(r, n) + kept)


def egf_r_derangement(r: int, order: int) -> TruncatedSeries:
    """Truncated EGF of the r-derangements, x^r e^(-x) / (1-x)^(r+1),
    built from its factors."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    core = cauchy_product(
        series_exp(-1, order), series_reciprocal_pole(1, r + 1, order)
    )
    return series_shift(core, r)


def egf_b_derangement(order: int) -> TruncatedSeries:
    """Truncated EGF of the B-type derangements, e^(-x) / (1-2x)."""
    return cauchy_product(series_exp(-1, order), series_reciprocal_pole(2, 1, order))
