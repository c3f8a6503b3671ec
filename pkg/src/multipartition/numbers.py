"""Exact special numbers: Bernoulli, unsigned Stirling (first kind), Moebius,
binomials, multinomials and rising factorials.

All values are ``int`` or :class:`fractions.Fraction`; nothing here rounds.
Bernoulli numbers use the convention B_1 = -1/2.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from functools import lru_cache, reduce
from math import comb, factorial, gcd, prod
from typing import Iterable, Sequence

__all__ = [
    "BERNOULLI_CONVENTION",
    "bernoulli_number",
    "bernoulli_numbers",
    "bernoulli_polynomial",
    "stirling_first_unsigned",
    "rising_factorial_coefficients",
    "moebius",
    "divisors",
    "binomial",
    "multinomial",
    "rising_factorial",
    "lcm_list",
    "compositions",
]

BERNOULLI_CONVENTION = "B_1 = -1/2"

_bernoulli: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def _extend_bernoulli(n: int) -> None:
    # Readers only index entries that are already complete; the list is
    # append-only and each append happens after the value is final.
    with _bernoulli_lock:
        table = _bernoulli
        for m in range(len(table), n + 1):
            # sum_{k=0}^{m} C(m+1, k) B_k = 0
            s = sum((comb(m + 1, k) * table[k] for k in range(m)), Fraction(0))
            table.append(-s / (m + 1))


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError(f"bernoulli_number needs n >= 0, got {n}")
    if n >= len(_bernoulli):
        _extend_bernoulli(n)
    return _bernoulli[n]


def bernoulli_numbers(n: int) -> list[Fraction]:
    """[B_0, ..., B_n]."""
    bernoulli_number(n)
    return _bernoulli[: n + 1]


def bernoulli_polynomial(n: int, x) -> Fraction:
    """B_n(x) = sum_k C(n, k) B_{n-k} x^k, evaluated exactly."""
    if n < 0:
        raise ValueError(f"bernoulli_polynomial needs n >= 0, got {n}")
    x = Fraction(x)
    B = bernoulli_numbers(n)
    # Horner in x
    acc = Fraction(0)
    for k in range(n, -1, -1):
        acc = acc * x + comb(n, k) * B[n - k]
    return acc


@lru_cache(maxsize=None)
def rising_factorial_coefficients(r: int) -> tuple[int, ...]:
    """Coefficients c[0..r-1] of (x+1)(x+2)...(x+r-1) = sum_i c[i] x^i."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    c = [1]
    for t in range(1, r):
        nxt = [0] * (len(c) + 1)
        for i, v in enumerate(c):
            nxt[i] += v * t
            nxt[i + 1] += v
        c = nxt
    return tuple(c)


def stirling_first_unsigned(r: int, k: int) -> int:
    """Unsigned Stirling number of the first kind [r, k].

    Defined as the coefficient of x^(k-1) in (x+1)(x+2)...(x+r-1), so that
    C(x+r-1, r-1) = sum_k [r, k] x^(k-1) / (r-1)!.
    """
    if r < 1 or not 1 <= k <= r:
        raise ValueError(f"stirling_first_unsigned needs 1 <= k <= r, got r={r}, k={k}")
    return rising_factorial_coefficients(r)[k - 1]


def moebius(n: int) -> int:
    if n < 1:
        raise ValueError(f"moebius needs n >= 1, got {n}")
    result = 1
    p = 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            result = -result
        p += 1
    if n > 1:
        result = -result
    return result


def divisors(n: int) -> list[int]:
    if n < 1:
        raise ValueError(f"divisors needs n >= 1, got {n}")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(n: int, parts: Sequence[int]) -> int:
    if any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def rising_factorial(x, r: int) -> Fraction:
    """x^(r) = (x+1)(x+2)...(x+r-1); the empty product (r in {0, 1}) is 1."""
    if r < 0:
        raise ValueError(f"rising_factorial needs r >= 0, got {r}")
    x = Fraction(x)
    return prod((x + t for t in range(1, r)), start=Fraction(1))


def lcm_list(a: Iterable[int]) -> int:
    a = list(a)
    if not a or any(v < 1 for v in a):
        raise ValueError(f"lcm_list needs positive integers, got {a}")
    return reduce(lambda x, y: x * y // gcd(x, y), a, 1)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest
