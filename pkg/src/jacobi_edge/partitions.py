"""Integer partitions, hook lengths and Pochhammer symbols.

Partitions index every series used by the library.  They are stored as
tuples with trailing zeros stripped, so ``Partition((2, 1, 0)) ==
Partition((2, 1))``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional

__all__ = [
    "Partition",
    "enumerate_partitions",
    "partitions_up_to",
    "dominates",
    "conjugate",
    "hook_length",
    "pochhammer",
    "log_pochhammer",
    "gen_pochhammer",
    "log_gen_pochhammer",
    "rho_lambda",
]


class Partition(tuple):
    """Weakly decreasing tuple of nonnegative integers.

    Trailing zeros are dropped on construction.
    """

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be nonnegative: {parts}")
        while parts and parts[-1] == 0:
            parts.pop()
        return super().__new__(cls, parts)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def padded(self, n: int) -> tuple:
        if len(self) > n:
            raise ValueError(f"{self} has more than {n} parts")
        return tuple(self) + (0,) * (n - len(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"


def enumerate_partitions(
    weight: int, max_parts: int, max_part: Optional[int] = None
) -> list:
    """All partitions of ``weight`` with at most ``max_parts`` parts.

    Each part is at most ``max_part`` (unbounded when None).  The order is
    reverse-lexicographic, which is a linear extension of dominance order:
    a partition always precedes every partition it dominates.
    """
    if weight < 0 or max_parts < 0:
        raise ValueError("weight and max_parts must be nonnegative")
    cap = weight if max_part is None else min(max_part, weight)
    return [Partition(p) for p in _gen(weight, max_parts, cap)]


def _gen(weight: int, parts_left: int, cap: int) -> Iterator[tuple]:
    if weight == 0:
        yield ()
        return
    if parts_left == 0 or cap * parts_left < weight:
        return
    for first in range(min(cap, weight), 0, -1):
        for rest in _gen(weight - first, parts_left - 1, first):
            yield (first,) + rest


def partitions_up_to(
    max_weight: int, max_parts: int, max_part: Optional[int] = None
) -> Iterator[Partition]:
    for k in range(max_weight + 1):
        yield from enumerate_partitions(k, max_parts, max_part)


def dominates(lam: Iterable[int], mu: Iterable[int]) -> bool:
    """True when ``lam >= mu`` in dominance order (equal weights assumed)."""
    lam, mu = tuple(lam), tuple(mu)
    if sum(lam) != sum(mu):
        return False
    n = max(len(lam), len(mu))
    sl = sm = 0
    for i in range(n):
        sl += lam[i] if i < len(lam) else 0
        sm += mu[i] if i < len(mu) else 0
        if sl < sm:
            return False
    return True


def conjugate(lam: Iterable[int]) -> Partition:
    lam = Partition(lam)
    if not lam:
        return Partition()
    return Partition(sum(1 for p in lam if p > j) for j in range(lam[0]))


def hook_length(lam: Iterable[int]) -> int:
    """Product of hook lengths, as an exact integer.

    Uses prod_i (lam_i + l - i)! / prod_{i<j} (lam_i - lam_j - i + j).
    """
    lam = Partition(lam)
    ell = len(lam)
    num = 1
    for i, part in enumerate(lam, start=1):
        num *= math.factorial(part + ell - i)
    den = 1
    for i in range(ell):
        for j in range(i + 1, ell):
            den *= lam[i] - lam[j] - i + j
    value = Fraction(num, den)
    assert value.denominator == 1
    return int(value)


def pochhammer(a, n: int):
    """Rising factorial (a)_n; exact when ``a`` is an int or Fraction."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = 1
    for j in range(n):
        out *= a + j
    return out


def log_pochhammer(a: float, n: int) -> tuple:
    """(sign, log|(a)_n|) with sign 0 and log -inf when a factor vanishes."""
    sign = 1
    total = 0.0
    for j in range(n):
        f = a + j
        if f == 0:
            return 0, -math.inf
        if f < 0:
            sign = -sign
        total += math.log(abs(f))
    return sign, total


def gen_pochhammer(a, lam: Iterable[int], sigma):
    """Generalized Pochhammer symbol prod_i (a - (i-1)/sigma)_{lam_i}."""
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    out = 1
    for i, part in enumerate(Partition(lam)):
        out *= pochhammer(a - i / sigma, part)
    return out


def log_gen_pochhammer(a: float, lam: Iterable[int], sigma: float) -> tuple:
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    sign, total = 1, 0.0
    for i, part in enumerate(Partition(lam)):
        s, t = log_pochhammer(a - i / sigma, part)
        if s == 0:
            return 0, -math.inf
        sign *= s
        total += t
    return sign, total


def rho_lambda(lam: Iterable[int], sigma, n: int):
    """sum_i lam_i (lam_i - 1 - (2/sigma)(i-1)), the D2 eigenvalue offset."""
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    return sum(p * (p - 1 - 2 * i / sigma) for i, p in enumerate(lam))
