"""Farey sets, the distance function to them, and minimal interval denominators."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ParameterError


def totient(m: int) -> int:
    if m < 1:
        raise ParameterError("totient is defined for m >= 1")
    result, r, p = m, m, 2
    while p * p <= r:
        if r % p == 0:
            while r % p == 0:
                r //= p
            result -= result // p
        p += 1
    if r > 1:
        result -= result // r
    return result


@dataclass(frozen=True)
class FareySet:
    n: int
    num: np.ndarray
    den: np.ndarray

    def __len__(self) -> int:
        return len(self.num)

    @property
    def items(self) -> list[Fraction]:
        return [Fraction(int(p), int(q)) for p, q in zip(self.num, self.den)]

    @property
    def values(self) -> np.ndarray:
        return self.num / self.den


def farey_set(n: int) -> FareySet:
    """All reduced p/q in [0, 1] with q <= n, in increasing order.

    Built by enumerating coprime pairs; sorting by float value is exact here
    because distinct terms differ by at least 1/n^2.
    """
    if n < 1:
        raise ParameterError("order must be >= 1")
    q = np.repeat(np.arange(1, n + 1), np.arange(2, n + 2))
    p = np.concatenate([np.arange(d + 1) for d in range(1, n + 1)])
    keep = np.gcd(p, q) == 1
    p, q = p[keep], q[keep]
    order = np.argsort(p / q, kind="stable")
    num, den = p[order], q[order]
    num.setflags(write=False)
    den.setflags(write=False)
    return FareySet(n, num, den)


def farey_adjacent_check(f1: Fraction, f2: Fraction) -> bool:
    return abs(f1.numerator * f2.denominator - f2.numerator * f1.denominator) == 1


def rho(n: int | FareySet, x: float) -> float:
    """Distance from x to the Farey set of order n."""
    if not 0.0 <= x <= 1.0:
        raise ParameterError("x must lie in [0, 1]")
    values = (n if isinstance(n, FareySet) else farey_set(n)).values
    i = int(np.searchsorted(values, x))
    best = math.inf
    for j in (i - 1, i):
        if 0 <= j < len(values):
            best = min(best, abs(values[j] - x))
    return best


def integral_rho_exact(n: int) -> float:
    """∫_0^1 rho_n: rho is a tent of height g/2 over every gap g, so the
    integral is the sum of g^2/4."""
    fs = farey_set(n)
    p1, q1 = fs.num[:-1].astype(object), fs.den[:-1].astype(object)
    p2, q2 = fs.num[1:].astype(object), fs.den[1:].astype(object)
    gaps = [Fraction(int(a), int(b)) for a, b in zip(p2 * q1 - p1 * q2, q1 * q2)]
    return math.fsum(float(g * g) for g in gaps) / 4.0


def min_interval_denominators(k: int) -> list[int]:
    """For each closed interval [(i-1)/k, i/k], the least q with some p/q inside."""
    if k < 1:
        raise ParameterError("k must be >= 1")
    i = np.arange(1, k + 1, dtype=np.int64)
    result = np.zeros(k, dtype=np.int64)
    open_ = np.arange(k)
    for q in range(1, k + 1):
        lo = i[open_] - 1
        hi = i[open_]
        # some p with (i-1)/k <= p/q <= i/k  <=>  ceil((i-1)q/k) <= floor(iq/k)
        hit = -((-lo * q) // k) <= (hi * q) // k
        result[open_[hit]] = q
        open_ = open_[~hit]
        if not len(open_):
            break
    return result.tolist()


def lemma_num_sums(k: int) -> tuple[int, int]:
    if k < 2:
        raise ParameterError("k must be >= 2")
    qs = min_interval_denominators(k)
    return sum(qs), sum(q ** 3 for q in qs)
