"""Derangement-family integer sequences, evaluated exactly.

Families covered: classical derangements D(n), r-derangements D_r(n)
(closed form and three-term recurrence), B-type (signed) derangements
D^B(n), Lah numbers L(n1, n2), and the k = 0 column of the B-type
r-Stirling array. Every value is a plain Python int; alternating sums are
taken term by term in integer arithmetic, so there is nothing to round.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

from .arith import binomial, factorial


class Family(str, Enum):
    """Names of the sequence families exposed by this package."""

    DERANGEMENT = "derangement"
    R_DERANGEMENT = "r-derangement"
    B_DERANGEMENT = "b-derangement"
    LAH = "lah"
    B_STIRLING_K0 = "b-stirling-k0"


# Lah has arity 0 here: both of its indices are call-time arguments.
_ARITY = {
    Family.DERANGEMENT: 0,
    Family.R_DERANGEMENT: 1,
    Family.B_DERANGEMENT: 0,
    Family.LAH: 0,
    Family.B_STIRLING_K0: 1,
}


@dataclass(frozen=True)
class SequenceId:
    """A sequence family plus its fixed integer parameters (e.g. r)."""

    family: Family
    params: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        family = Family(self.family)
        params = tuple(int(p) for p in self.params)
        object.__setattr__(self, "family", family)
        object.__setattr__(self, "params", params)
        arity = _ARITY[family]
        if len(params) != arity:
            raise ValueError(
                f"{family.value} takes {arity} parameter(s), got {len(params)}"
            )
        if any(p < 0 for p in params):
            raise ValueError("sequence parameters must be nonnegative")

    def evaluate(self, *args: int) -> int:
        """Value at the call-time index (two indices for lah)."""
        if self.family is Family.LAH:
            if len(args) != 2:
                raise ValueError("lah takes two call-time arguments")
            return lah(args[0], args[1])
        if len(args) != 1:
            raise ValueError(f"{self.family.value} takes one call-time argument")
        (n,) = args
        if self.family is Family.DERANGEMENT:
            return derangement(n)
        if self.family is Family.R_DERANGEMENT:
            return r_derangement(n, self.params[0])
        if self.family is Family.B_DERANGEMENT:
            return b_derangement(n)
        return b_stirling_k0(n, self.params[0])


@lru_cache(maxsize=None)
def derangement(n: int) -> int:
    """D(n): permutations of n elements with no fixed point.

    Evaluates n! * sum_{i=0..n} (-1)^i / i! as the integer sum of the
    quotients n!/i!, accumulated from i = n downward.
    """
    if n < 0:
        raise ValueError("derangement requires n >= 0")
    fn = factorial(n)
    total = 0
    for i in range(n, -1, -1):
        q = fn // factorial(i)
        total += -q if i & 1 else q
    return total


def _taylor_numerator(m: int) -> int:
    # N_m with S_m = sum_{k<=m} 1/k! = N_m / m!; N_m = m*N_{m-1} + 1.
    num = 1
    for k in range(1, m + 1):
        num = num * k + 1
    return num


def derangement_nearest_int(n: int) -> int:
    """The nearest integer to n!/e, located by exact rational brackets.

    e is pinned between the Taylor partial sum S_m and S_m + 2/(m+1)!
    (a valid tail bound for every m >= 0), so n!/e is pinned between two
    explicit rationals; m grows until both ends round to the same integer.
    No floating point is involved, so the result is exact at any n.
    """
    if n < 1:
        raise ValueError("the nearest-integer formula is stated for n >= 1")
    fn = factorial(n)
    m = n + 1
    num = _taylor_numerator(m)
    while True:
        # n!/e lies strictly between n!(m+1)!/((m+1)N_m + 2) and n!m!/N_m.
        lo_num = fn * factorial(m + 1)
        lo_den = (m + 1) * num + 2
        hi_num = fn * factorial(m)
        hi_den = num
        lo_nearest = (2 * lo_num + lo_den) // (2 * lo_den)
        hi_nearest = (2 * hi_num + hi_den) // (2 * hi_den)
        if lo_nearest == hi_nearest:
            return lo_nearest
        num = num * (m + 1) + 1
        m += 1


@lru_cache(maxsize=None)
def r_derangement(n: int, r: int) -> int:
    """D_r(n): fixed-point-free permutations of n+r elements whose r
    distinguished elements sit in pairwise distinct cycles.

    Closed form sum_{j=r..n} (-1)^(n-j) C(j,r) n!/(n-j)!; the empty sum
    makes D_r(n) = 0 for n < r.
    """
    if n < 0 or r < 0:
        raise ValueError("r_derangement requires n >= 0 and r >= 0")
    if n < r:
        return 0
    fn = factorial(n)
    total = 0
    for j in range(r, n + 1):
        t = binomial(j, r) * (fn // factorial(n - j))
        total += -t if (n - j) & 1 else t
    return total


_RECURRENCE_CACHE: dict[tuple[int, int], int] = {}


def r_derangement_recurrence(n: int, r: int) -> int:
    """D_r(n) via the three-term recurrence
    r*D_{r-1}(n-1) + (n-1)*D_r(n-2) + (n+r-1)*D_r(n-1),
    with the closed form as base for n <= 2 or r = 0.
    """
    if n < 0 or r < 0:
        raise ValueError("r_derangement_recurrence requires n >= 0 and r >= 0")
    if r == 0 or n <= 2:
        return r_derangement(n, r)
    key = (n, r)
    cached = _RECURRENCE_CACHE.get(key)
    if cached is not None:
        return cached
    # Fill bottom-up in n so arbitrarily large grids need no deep recursion;
    # the inner calls only ever hit a base case or an already-filled entry.
    for m in range(3, n + 1):
        for s in range(1, r + 1):
            if (m, s) in _RECURRENCE_CACHE:
                continue
            _RECURRENCE_CACHE[(m, s)] = (
                s * r_derangement_recurrence(m - 1, s - 1)
                + (m - 1) * r_derangement_recurrence(m - 2, s)
                + (m + s - 1) * r_derangement_recurrence(m - 1, s)
            )
    return _RECURRENCE_CACHE[key]


@lru_cache(maxsize=None)
def b_derangement(n: int) -> int:
    """D^B(n): signed permutations of n elements with sigma(i) != i for
    all i, i.e. no positively-signed positional fixed point.

    Closed form n! * sum_{k=0..n} (-1)^k 2^(n-k) / k!, an integer term by
    term since n!/k! is an integer.
    """
    if n < 0:
        raise ValueError("b_derangement requires n >= 0")
    fn = factorial(n)
    total = 0
    for k in range(n + 1):
        t = (fn // factorial(k)) << (n - k)
        total += -t if k & 1 else t
    return total


def lah(n1: int, n2: int) -> int:
    """L(n1, n2): partitions of an n1-set into n2 nonempty linearly
    ordered blocks, via C(n1-1, n2-1) * n1!/n2!.

    Conventions: L(0,0) = 1, L(n1,0) = 0 for n1 >= 1, and 0 when n2 > n1.
    """
    if n1 < 0 or n2 < 0:
        raise ValueError("lah requires n1 >= 0 and n2 >= 0")
    if n1 == 0 and n2 == 0:
        return 1
    if n2 == 0 or n2 > n1:
        return 0
    return binomial(n1 - 1, n2 - 1) * (factorial(n1) // factorial(n2))


def b_stirling_k0(n: int, r: int) -> int:
    """k = 0 column of the B-type r-Stirling array:
    sum_{j=0..r} C(r,j) * 2^(n+r-j) * (r-j)! * L(n, r-j).
    """
    if n < 0 or r < 0:
        raise ValueError("b_stirling_k0 requires n >= 0 and r >= 0")
    return sum(
        binomial(r, j) * (1 << (n + r - j)) * factorial(r - j) * lah(n, r - j)
        for j in range(r + 1)
    )
