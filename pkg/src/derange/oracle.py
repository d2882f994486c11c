"""Brute-force ground truth by exhaustive enumeration.

Everything here counts objects straight from their definitions:
permutations with cycle constraints, signed permutations, and ordered set
partitions. The enumerations are lexicographic and deterministic, and they
refuse loudly once the factorial blowup passes a hard cap; blowing the
budget must be the caller's explicit decision, never a silent truncation.

Permutations are sequences over {1..m} with perm[i-1] = image of i.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterable, Sequence

UNSIGNED_CAP = 10
SIGNED_CAP = 8
PARTITION_CAP = 8


class EnumerationCapError(ValueError):
    """The requested enumeration exceeds the configured hard cap."""


@dataclass(frozen=True)
class OracleConfig:
    """Size of one enumeration: n free elements, r distinguished ones,
    optionally signed. Rejected at construction when beyond the cap."""

    n: int
    r: int = 0
    signed: bool = False
    unsigned_cap: int = UNSIGNED_CAP
    signed_cap: int = SIGNED_CAP

    def __post_init__(self) -> None:
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be nonnegative")
        total = self.n + self.r
        if self.signed and total > self.signed_cap:
            raise EnumerationCapError(
                f"signed enumeration of {total} elements needs "
                f"2^{total} * {total}! maps; the cap is n+r <= {self.signed_cap}"
            )
        if not self.signed and total > self.unsigned_cap:
            raise EnumerationCapError(
                f"enumeration of {total} elements needs {total}! permutations; "
                f"the cap is n+r <= {self.unsigned_cap}"
            )


def cycle_decomposition(perm: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """The canonical cycle partition of a permutation of {1..m}.

    Each cycle is reported starting from its smallest element; fixed
    points appear as 1-cycles. Non-bijective input is an error.
    """
    m = len(perm)
    if sorted(perm) != list(range(1, m + 1)):
        raise ValueError(f"not a bijection on 1..{m}: {perm!r}")
    seen = [False] * (m + 1)
    cycles = []
    for start in range(1, m + 1):
        if seen[start]:
            continue
        seen[start] = True
        cycle = [start]
        nxt = perm[start - 1]
        while nxt != start:
            seen[nxt] = True
            cycle.append(nxt)
            nxt = perm[nxt - 1]
        cycles.append(tuple(cycle))
    return frozenset(cycles)


def cycles_to_permutation(cycles: Iterable[Sequence[int]], m: int) -> tuple[int, ...]:
    """Rebuild the mapping on {1..m} from a cycle set (1-cycles included)."""
    image = [0] * m
    for cycle in cycles:
        for i, element in enumerate(cycle):
            if not 1 <= element <= m or image[element - 1] != 0:
                raise ValueError("cycles must cover 1..m exactly once")
            image[element - 1] = cycle[(i + 1) % len(cycle)]
    if 0 in image:
        raise ValueError("cycles must cover 1..m exactly once")
    return tuple(image)


def is_r_derangement(perm: Sequence[int], r: int) -> bool:
    """True when perm has no fixed point and the elements 1..r sit in
    pairwise distinct cycles. r <= 1 adds nothing beyond fixed-point-freeness."""
    for i, image in enumerate(perm, start=1):
        if image == i:
            return False
    if r >= 2:
        seen = [False] * (len(perm) + 1)
        for lead in range(1, r + 1):
            if seen[lead]:
                # lead already sits in an earlier distinguished cycle
                return False
            seen[lead] = True
            j = perm[lead - 1]
            while j != lead:
                seen[j] = True
                j = perm[j - 1]
    return True


def count_r_derangements(cfg: OracleConfig) -> int:
    """Count permutations of {1..n+r} with no fixed point and 1..r in
    pairwise distinct cycles, by checking every permutation."""
    if cfg.signed:
        raise ValueError("use count_signed_derangements for signed configs")
    m = cfg.n + cfg.r
    return sum(1 for p in permutations(range(1, m + 1)) if is_r_derangement(p, cfg.r))


def count_signed_derangements(cfg: OracleConfig) -> int:
    """Count pairs (pi, s) of a permutation of {1..n} and a sign vector
    such that no i has pi(i) = i with s_i = +1.

    A negative sign at a positional fixed point is not a fixed point of
    the signed map, so such pairs are counted.
    """
    if not cfg.signed:
        raise ValueError("count_signed_derangements needs a signed config")
    if cfg.r != 0:
        raise ValueError("the signed oracle is defined for r = 0 only")
    n = cfg.n
    count = 0
    for p in permutations(range(1, n + 1)):
        fixed = [i for i in range(n) if p[i] == i + 1]
        for signs in product((1, -1), repeat=n):
            if all(signs[i] == -1 for i in fixed):
                count += 1
    return count


def _set_partitions(elements: list[int], k: int):
    # All partitions of `elements` into exactly k nonempty blocks.
    n = len(elements)
    if k == 0:
        if n == 0:
            yield []
        return
    if k > n:
        return
    first, rest = elements[0], elements[1:]
    for part in _set_partitions(rest, k):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
    for part in _set_partitions(rest, k - 1):
        yield [[first]] + part


def count_ordered_partitions(n1: int, n2: int) -> int:
    """Count partitions of {1..n1} into exactly n2 nonempty blocks, each
    carrying a linear order, by generating every such object."""
    if n1 < 0 or n2 < 0:
        raise ValueError("n1 and n2 must be nonnegative")
    if n1 > PARTITION_CAP:
        raise EnumerationCapError(
            f"ordered-partition enumeration is capped at n1 <= {PARTITION_CAP}"
        )
    count = 0
    for blocks in _set_partitions(list(range(1, n1 + 1)), n2):
        for _ in product(*(permutations(block) for block in blocks)):
            count += 1
    return count
