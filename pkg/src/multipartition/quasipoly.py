"""p_{a,k}(n) as a quasi-polynomial of period D and degree rk - 1.

Two constructors must agree exactly: the closed-form coefficient sums over the
index box C, and an interpolation of oracle counts inside each residue class.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod
from typing import Iterator

from .linalg import solve_exact
from .numbers import rising_factorial_coefficients, stirling_first_unsigned
from .oracle import PartitionSpec, count_series, f_coefficient_formula

__all__ = [
    "ConsistencyError",
    "QuasiPolynomial",
    "index_set_c",
    "index_set_c_size",
    "coeff_d",
    "build_quasipolynomial",
    "count_closed_form",
    "evaluate",
]


class ConsistencyError(ArithmeticError):
    """An identity that must hold exactly did not."""


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    coeffs: tuple[tuple[Fraction, ...], ...]  # coeffs[residue][power]

    @property
    def deg(self) -> int:
        return len(self.coeffs[0]) - 1

    @classmethod
    def from_rows(cls, rows) -> "QuasiPolynomial":
        rows = tuple(tuple(Fraction(c) for c in row) for row in rows)
        if not rows:
            raise ValueError("a quasi-polynomial needs at least one residue row")
        if len({len(row) for row in rows}) != 1:
            raise ValueError("all residue rows must have the same length")
        return cls(len(rows), rows)

    @classmethod
    def zero(cls, period: int = 1, deg: int = 0) -> "QuasiPolynomial":
        return cls(period, tuple((Fraction(0),) * (deg + 1) for _ in range(period)))

    def __call__(self, n: int) -> Fraction:
        return evaluate(self, n)

    def is_zero(self) -> bool:
        return all(c == 0 for row in self.coeffs for c in row)

    def minimal_period(self) -> int:
        P = self.period
        for e in range(1, P + 1):
            if P % e == 0 and all(self.coeffs[s] == self.coeffs[s % e] for s in range(P)):
                return e
        return P


def evaluate(qp: QuasiPolynomial, n: int) -> Fraction:
    row = qp.coeffs[n % qp.period]
    acc = Fraction(0)
    for c in reversed(row):
        acc = acc * n + c
    return acc


def index_set_c(spec: PartitionSpec) -> Iterator[tuple[int, ...]]:
    """Odometer over 0 <= l_s <= k(D/a_s - 1), last coordinate fastest."""
    D, k = spec.D, spec.k
    return itertools.product(*(range(k * (D // a - 1) + 1) for a in spec.a))


def index_set_c_size(spec: PartitionSpec) -> int:
    return prod(spec.k * (spec.D // a - 1) + 1 for a in spec.a)


@lru_cache(maxsize=64)
def _weighted_box(spec: PartitionSpec) -> tuple[tuple[int, int], ...]:
    """(a.l, prod_s f(D/a_s, k, l_s)) for every l in C, zero weights dropped."""
    D, k = spec.D, spec.k
    f_tables = [[f_coefficient_formula(D // a, k, l) for l in range(k * (D // a - 1) + 1)] for a in spec.a]
    out = []
    for ell in index_set_c(spec):
        w = 1
        for table, l in zip(f_tables, ell):
            w *= table[l]
        if w:
            out.append((sum(a * l for a, l in zip(spec.a, ell)), w))
    return tuple(out)


def coeff_d(spec: PartitionSpec, m: int, n: int, literal: bool = False) -> Fraction:
    """d_{k,a,m}(n), the coefficient of n^m on the residue class of n mod D.

    With ``literal=True`` the inner binomial is C(k, m) instead of C(t, m);
    that variant disagrees with the counts (e.g. a=(1), k=2 gives d_1 = 2).
    """
    rk, D = spec.rk, spec.D
    if not 0 <= m <= rk - 1:
        raise ValueError(f"m must lie in [0, {rk - 1}], got {m}")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    total = Fraction(0)
    for A, w in _weighted_box(spec):
        if (A - n) % D:
            continue
        inner = Fraction(0)
        for t in range(m, rk):
            binom = comb(spec.k, m) if literal else comb(t, m)
            # Python's 0**0 == 1, which is the convention wanted here
            inner += Fraction(stirling_first_unsigned(rk, t + 1) * (-1) ** (t - m) * binom * A ** (t - m), D**t)
        total += w * inner
    return total / factorial(rk - 1)


def _teo1_rows(spec: PartitionSpec, literal: bool) -> list[list[Fraction]]:
    rk, D = spec.rk, spec.D
    stir = rising_factorial_coefficients(rk)
    rows = [[Fraction(0)] * rk for _ in range(D)]
    for A, w in _weighted_box(spec):
        row = rows[A % D]
        for m in range(rk):
            inner = Fraction(0)
            for t in range(m, rk):
                binom = comb(spec.k, m) if literal else comb(t, m)
                inner += Fraction(stir[t] * (-1) ** (t - m) * binom * A ** (t - m), D**t)
            row[m] += w * inner
    fact = factorial(rk - 1)
    return [[c / fact for c in row] for row in rows]


def _fit_rows(spec: PartitionSpec) -> list[list[Fraction]]:
    rk, D = spec.rk, spec.D
    counts = count_series(spec, D * rk + D).values
    rows = []
    for s in range(D):
        xs = [s + t * D for t in range(rk)]
        vandermonde = [[x**p for p in range(rk)] for x in xs]
        rows.append(solve_exact(vandermonde, [counts[x] for x in xs]))
    return rows


def build_quasipolynomial(spec: PartitionSpec, method: str = "teo1", literal: bool = False) -> QuasiPolynomial:
    """Period-D quasi-polynomial of p_{a,k}.

    ``method="teo1"`` sums the closed-form coefficient formula over the box C;
    ``method="fit"`` interpolates oracle counts in each residue class.
    """
    if method == "teo1":
        rows = _teo1_rows(spec, literal)
    elif method == "fit":
        if literal:
            raise ValueError("literal mode only applies to method='teo1'")
        rows = _fit_rows(spec)
    else:
        raise ValueError(f"unknown method {method!r}")
    return QuasiPolynomial.from_rows(rows)


def count_closed_form(spec: PartitionSpec, n: int) -> int:
    """p_{a,k}(n) from the finite closed form over the box C.

    Each admissible l contributes its weight times (x+1)(x+2)...(x+rk-1) with
    x = (n - a.l)/D, all divided by (rk-1)!.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    rk, D = spec.rk, spec.D
    total = Fraction(0)
    for A, w in _weighted_box(spec):
        if (n - A) % D:
            continue
        x = (n - A) // D
        total += w * prod(x + t for t in range(1, rk))
    total /= factorial(rk - 1)
    if total.denominator != 1 or total < 0:
        raise ConsistencyError(f"closed form gave {total} for {spec}, n={n}")
    return int(total)
