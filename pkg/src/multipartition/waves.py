"""Sylvester waves and the polynomial part of p_{a,k}.

The wave W_j collects the part of the period-D quasi-polynomial carried by
primitive j-th roots of unity. Instead of taking complex residues, each
coefficient sequence d_m is split by averaging over shifts (which keeps the
components of order dividing e) followed by Moebius inversion over divisors.
Every component is rational, so all of it stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath

from .numbers import (
    bernoulli_numbers,
    compositions,
    divisors,
    moebius,
    rising_factorial_coefficients,
)
from .oracle import PartitionSpec
from .quasipoly import (
    ConsistencyError,
    QuasiPolynomial,
    _weighted_box,
    build_quasipolynomial,
    evaluate,
)

__all__ = [
    "WaveSet",
    "wave_indices",
    "period_projection",
    "order_component",
    "decompose_waves",
    "polynomial_part_teo4",
    "polynomial_part_teo5",
    "evaluate_polynomial",
    "wave_formula_teo3",
]


@dataclass(frozen=True)
class WaveSet:
    spec: PartitionSpec
    waves: dict[int, QuasiPolynomial]

    @property
    def indices(self) -> list[int]:
        return sorted(self.waves)

    def total(self, n: int) -> Fraction:
        return sum((evaluate(w, n) for w in self.waves.values()), Fraction(0))


def wave_indices(spec: PartitionSpec) -> list[int]:
    """Every divisor of every a_i, ascending."""
    return sorted({d for a in spec.a for d in divisors(a)})


def period_projection(seq: list[Fraction], e: int) -> list[Fraction]:
    """Average of a period-P sequence over shifts by e, as a period-e sequence."""
    P = len(seq)
    if P % e:
        raise ValueError(f"{e} does not divide the period {P}")
    reps = P // e
    return [sum(seq[s + u * e] for u in range(reps)) / reps for s in range(e)]


def order_component(seq: list[Fraction], j: int) -> list[Fraction]:
    """Exact-order-j component (period j) of a period-P sequence, j | P."""
    out = [Fraction(0)] * j
    for e in divisors(j):
        mu = moebius(j // e)
        if mu == 0:
            continue
        proj = period_projection(seq, e)
        for s in range(j):
            out[s] += mu * proj[s % e]
    return out


def decompose_waves(spec: PartitionSpec) -> WaveSet:
    qp = build_quasipolynomial(spec, "teo1")
    D, rk = spec.D, spec.rk
    columns = [[qp.coeffs[s][m] for s in range(D)] for m in range(rk)]
    allowed = set(wave_indices(spec))
    waves = {}
    for j in divisors(D):
        comps = [order_component(col, j) for col in columns]
        wave = QuasiPolynomial.from_rows([[comps[m][s] for m in range(rk)] for s in range(j)])
        if j in allowed:
            waves[j] = wave
        elif not wave.is_zero():
            raise ConsistencyError(f"wave of order {j} is nonzero for {spec} but {j} divides no part")
    return WaveSet(spec, waves)


def _poly_mul(p: list[Fraction], q: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, x in enumerate(p):
        if x:
            for j, y in enumerate(q):
                out[i + j] += x * y
    return out


def polynomial_part_teo4(spec: PartitionSpec, literal: bool = False) -> list[Fraction]:
    """Polynomial part from the unfiltered sum over the box C.

    Coefficients are returned constant term first. The default divides the
    sum by D as well as by (rk-1)!, i.e. it averages the closed-form summand
    over the D residue classes; ``literal=True`` drops that 1/D.
    """
    rk, D = spec.rk, spec.D
    total = [Fraction(0)] * rk
    for A, w in _weighted_box(spec):
        poly = [Fraction(1)]
        for t in range(1, rk):
            # (n - A)/D + t
            poly = _poly_mul(poly, [Fraction(-A, D) + t, Fraction(1, D)])
        for i, c in enumerate(poly):
            total[i] += w * c
    scale = factorial(rk - 1) * (1 if literal else D)
    return [c / scale for c in total]


@lru_cache(maxsize=None)
def _block_exp(ell: int, k: int) -> Fraction:
    # sum over compositions i of ell into k parts of prod B_i / i!
    B = bernoulli_numbers(ell)
    total = Fraction(0)
    for parts in compositions(ell, k):
        term = Fraction(1)
        for i in parts:
            term *= B[i] / factorial(i)
        total += term
    return total


def polynomial_part_teo5(spec: PartitionSpec) -> list[Fraction]:
    """Polynomial part from Bernoulli numbers, constant term first."""
    rk = spec.rk
    norm = 1
    for a in spec.a:
        norm *= a**spec.k
    coeffs = [Fraction(0)] * rk
    for u in range(rk):
        inner = Fraction(0)
        for ells in compositions(u, spec.r):
            term = Fraction(1)
            for a, l in zip(spec.a, ells):
                term *= a**l * _block_exp(l, spec.k)
            inner += term
        coeffs[rk - 1 - u] = Fraction((-1) ** u, factorial(rk - 1 - u) * norm) * inner
    return coeffs


def evaluate_polynomial(coeffs: list[Fraction], n) -> Fraction:
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * n + c
    return acc


def wave_formula_teo3(spec: PartitionSpec, j: int, n: int, literal: bool = True, waves: WaveSet | None = None):
    """Evaluate the printed closed form for W_j(n) and compare with the wave.

    Returns ``(value, entry)``. The root-of-unity sum is evaluated in extended
    precision complex arithmetic; it is 1 for j = 1 and 0 otherwise, and the
    rest of the expression is exact. Only the literal reading is available.
    """
    if not literal:
        raise ValueError("only the literal reading of this wave formula is implemented")
    if j not in wave_indices(spec):
        raise ValueError(f"{j} is not a wave index of {spec}")
    rk, D, k = spec.rk, spec.D, spec.k
    stir = rising_factorial_coefficients(rk)
    rest = Fraction(0)
    for A, w in _weighted_box(spec):
        if (A - n) % D:
            continue
        for m in range(1, rk):
            inner = sum(
                (stir[t] * comb(t, m - 1) * A ** (t - m + 1) for t in range(m - 1, rk)),
            )
            rest += w * Fraction(inner, D**k) * n ** (m - 1)
    rest /= D * factorial(rk - 1)
    with mpmath.workprec(128):
        roots = mpmath.fsum(mpmath.expjpi(mpmath.mpf(2 * l) / j) for l in range(1, j + 1))
        value = roots * mpmath.mpf(rest.numerator) / rest.denominator
        if waves is None:
            waves = decompose_waves(spec)
        reference = evaluate(waves.waves[j], n)
        ref_mp = mpmath.mpf(reference.numerator) / reference.denominator
        agree = abs(value - ref_mp) <= mpmath.mpf(10) ** -20
        shown = mpmath.nstr(mpmath.chop(value, tol=mpmath.mpf(10) ** -30), 20)
    entry = {
        "j": j,
        "n": n,
        "literal_value": shown,
        "reference_value": str(reference),
        "verdict": "PASS" if agree else "FAIL",
    }
    return value, entry
