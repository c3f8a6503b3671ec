"""Bernoulli-Barnes numbers, the Delta(r, k, D) determinant and the linear
system that would recover the coefficients d_{k,a,m} from Bernoulli data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Sequence

from .linalg import RationalMatrix, SingularMatrixError, determinant, solve_exact
from .numbers import bernoulli_numbers, bernoulli_polynomial, compositions, multinomial
from .oracle import PartitionSpec, expand_ak
from .quasipoly import coeff_d

__all__ = [
    "RationalMatrix",
    "solve_exact",
    "bernoulli_barnes",
    "bernoulli_barnes_grouped",
    "delta_matrix",
    "delta_determinant",
    "DetyReport",
    "dety_system",
    "dety_reconstruct",
]


def bernoulli_barnes(a: Sequence[int], j: int) -> Fraction:
    """B_j(a) = sum over i_1+...+i_r = j of multinomial(j; i) prod B_{i_s} a_s^{i_s}.

    Evaluated as j! times the t^j coefficient of prod_s sum_i B_i (a_s t)^i / i!,
    which is the same sum collected one factor at a time.
    """
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    B = bernoulli_numbers(j)
    series = [Fraction(1)] + [Fraction(0)] * j
    for a_s in a:
        factor = [B[i] * a_s**i / factorial(i) for i in range(j + 1)]
        series = [sum((series[p] * factor[q - p] for p in range(q + 1)), Fraction(0)) for q in range(j + 1)]
    return series[j] * factorial(j)


@lru_cache(maxsize=None)
def _block_sum(ell: int, k: int) -> Fraction:
    # sum over compositions i of ell into k parts of multinomial(ell; i) prod B_i
    B = bernoulli_numbers(ell)
    total = Fraction(0)
    for parts in compositions(ell, k):
        term = Fraction(multinomial(ell, parts))
        for i in parts:
            term *= B[i]
        total += term
    return total


def bernoulli_barnes_grouped(spec: PartitionSpec, j: int) -> Fraction:
    """B_j(a[k]) summed block by block: outer split of j over the r distinct
    parts, inner k-fold compositions inside each block."""
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    total = Fraction(0)
    for ells in compositions(j, spec.r):
        term = Fraction(multinomial(j, ells))
        for a_s, l in zip(spec.a, ells):
            term *= a_s**l * _block_sum(l, spec.k)
            if not term:
                break
        total += term
    return total


def _columns(spec: PartitionSpec) -> list[tuple[int, int]]:
    # (m, v) lexicographic, v fastest
    return [(m, v) for m in range(spec.rk) for v in range(1, spec.D + 1)]


def delta_matrix(spec: PartitionSpec, scaled: bool = False) -> RationalMatrix:
    """rkD x rkD matrix with entry B_{n+m+1}(v/D)/(n+m+1) at row n, column (m, v).

    ``scaled=True`` multiplies each entry by D^(n+m), giving the matrix of the
    reconstruction system.
    """
    D = spec.D
    size = spec.rk * D
    cols = _columns(spec)
    rows = []
    for n in range(size):
        row = []
        for m, v in cols:
            idx = n + m + 1
            entry = bernoulli_polynomial(idx, Fraction(v, D)) / idx
            if scaled:
                entry *= D ** (n + m)
            row.append(entry)
        rows.append(row)
    return RationalMatrix.from_rows(rows)


def delta_determinant(spec: PartitionSpec) -> Fraction:
    return determinant(delta_matrix(spec))


def dety_system(spec: PartitionSpec) -> tuple[RationalMatrix, list[Fraction]]:
    """Matrix and right-hand side of the rkD x rkD reconstruction system.

    Row n: sum_{m,v} D^(n+m) B_{n+m+1}(v/D)/(n+m+1) x_(m,v)
           = (-1)^rk n!/(n+rk)! B_{rk+n}(a[k]) - [n == 0].
    """
    rk = spec.rk
    ak = expand_ak(spec)
    M = delta_matrix(spec, scaled=True)
    rhs = []
    for n in range(M.rows):
        value = Fraction((-1) ** rk * factorial(n), factorial(n + rk)) * bernoulli_barnes(ak, rk + n)
        if n == 0:
            value -= 1
        rhs.append(value)
    return M, rhs


@dataclass
class DetyReport:
    delta: Fraction
    delta_scaled: Fraction
    singular: bool
    solution: list[Fraction] | None
    reference: list[Fraction]
    verdict: str
    columns: list[tuple[int, int]] = field(default_factory=list)
    residual_zero: bool | None = None

    def as_dict(self) -> dict:
        fmt = lambda v: str(v)  # noqa: E731
        return {
            "delta": fmt(self.delta),
            "delta_scaled": fmt(self.delta_scaled),
            "singular": self.singular,
            "solution": None if self.solution is None else [fmt(x) for x in self.solution],
            "reference": [fmt(x) for x in self.reference],
            "columns": [f"d{m}({v})" for m, v in self.columns],
            "residual_zero": self.residual_zero,
            "verdict": self.verdict,
        }


def dety_reconstruct(spec: PartitionSpec) -> DetyReport:
    """Solve the reconstruction system and compare with d_{k,a,m}(v mod D).

    The verdict reports agreement; a FAIL here documents the printed system,
    it is not a defect of this library.
    """
    cols = _columns(spec)
    M, rhs = dety_system(spec)
    reference = [coeff_d(spec, m, v % spec.D) for m, v in cols]
    delta = delta_determinant(spec)
    delta_scaled = determinant(M)
    try:
        x = solve_exact(M, rhs)
    except SingularMatrixError:
        return DetyReport(delta, delta_scaled, True, None, reference, "SINGULAR", cols)
    residual_zero = M.matvec(x) == rhs
    verdict = "PASS" if x == reference else "FAIL"
    return DetyReport(delta, delta_scaled, False, x, reference, verdict, cols, residual_zero)
