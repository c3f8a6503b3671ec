"""Floating-point checks of the Barnes/Hurwitz zeta layer.

Reals are mpmath ``mpf`` values computed at ``PREC`` bits. Every comparison
carries an explicit tolerance and every truncated series reports a bound on
what it dropped.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb, factorial, lcm
from typing import NamedTuple, Sequence

import mpmath

from .numbers import bernoulli_number, rising_factorial_coefficients
from .oracle import PartitionSpec, count_series

__all__ = [
    "PREC",
    "to_mpf",
    "residue_division",
    "residue_table",
    "hurwitz_zeta",
    "hurwitz_tail_bound",
    "BarnesSum",
    "barnes_zeta_direct",
    "barnes_tail_bound",
    "cutoff_for",
    "barnes_zeta_lemma",
    "remark_r1_check",
    "zak_product_check",
]

PREC = 96
_EM_TERMS = 8


def to_mpf(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    if isinstance(x, str) and "/" in x:
        return to_mpf(Fraction(x))
    return mpmath.mpf(x)


def residue_division(a: Sequence[int], j: Sequence[int]) -> tuple[int, int]:
    """(q, rem) with a.j = q*D + rem and 0 <= rem < D."""
    D = lcm(*a)
    if len(j) != len(a) or any(not 0 <= x <= D // y - 1 for x, y in zip(j, a)):
        raise ValueError(f"tuple {tuple(j)} outside the residue box of {tuple(a)}")
    return divmod(sum(x * y for x, y in zip(a, j)), D)


def residue_table(a: Sequence[int]) -> dict[tuple[int, ...], tuple[int, int]]:
    D = lcm(*a)
    return {j: residue_division(a, j) for j in itertools.product(*(range(D // x) for x in a))}


def _em_correction(s, x, p):
    # B_{2p}/(2p)! * s(s+1)...(s+2p-2) * x^(-s-2p+1)
    poch = mpmath.rf(s, 2 * p - 1)
    return to_mpf(bernoulli_number(2 * p) / factorial(2 * p)) * poch * x ** (-s - 2 * p + 1)


def hurwitz_tail_bound(s, w, N: int) -> mpmath.mpf:
    """Bound on the Euler-Maclaurin remainder after ``_EM_TERMS`` corrections."""
    with mpmath.workprec(PREC):
        return 2 * abs(_em_correction(to_mpf(s), to_mpf(w) + N, _EM_TERMS + 1))


def hurwitz_zeta(s, w, tol=1e-15) -> mpmath.mpf:
    """sum_{n>=0} (n+w)^(-s) for real s > 1, w > 0, to absolute error tol.

    Direct sum up to N, then the integral, the half endpoint term and
    ``_EM_TERMS`` Euler-Maclaurin derivative corrections at N.
    """
    with mpmath.workprec(PREC):
        s, w, tol = to_mpf(s), to_mpf(w), to_mpf(tol)
        if s <= 1:
            raise ValueError(f"hurwitz_zeta needs s > 1, got {s}")
        if w <= 0:
            raise ValueError(f"hurwitz_zeta needs w > 0, got {w}")
        if tol <= 0:
            raise ValueError("tol must be positive")
        N = 8
        while hurwitz_tail_bound(s, w, N) > tol / 2:
            N *= 2
        head = mpmath.fsum((n + w) ** -s for n in range(N))
        x = N + w
        tail = x ** (1 - s) / (s - 1) + x**-s / 2
        tail += mpmath.fsum(_em_correction(s, x, p) for p in range(1, _EM_TERMS + 1))
        return head + tail


class BarnesSum(NamedTuple):
    value: mpmath.mpf
    tail: mpmath.mpf  # upper bound on the omitted terms


def barnes_tail_bound(a: Sequence[int], s, w, start: int) -> mpmath.mpf:
    """Upper bound on sum_{n >= start} p_a(n) (n+w)^(-s), valid for s > r.

    Uses p_a(n) <= C(n+r-1, r-1) <= (n+r-1)^(r-1)/(r-1)!.
    """
    r = len(a)
    with mpmath.workprec(PREC):
        s, w = to_mpf(s), to_mpf(w)
        if s <= r:
            raise ValueError(f"tail bound needs s > r = {r}")
        x = start + w
        rho = max(mpmath.mpf(1), (start + r - 1) / x)
        return rho ** (r - 1) / factorial(r - 1) * (x ** (r - 1 - s) + x ** (r - s) / (s - r))


def cutoff_for(a: Sequence[int], s, w, tol) -> int:
    """Smallest power-of-two box size whose dropped mass is below tol."""
    c = 16
    while barnes_tail_bound(a, s, w, (c + 1) * min(a)) > to_mpf(tol):
        c *= 2
    return c


def barnes_zeta_direct(a: Sequence[int], s, w, cutoff: int) -> BarnesSum:
    """Partial sum of (a.u + w)^(-s) over the box u in [0, cutoff]^r.

    Box points are grouped by n = a.u, so the sum has cutoff*sum(a)+1 terms.
    """
    r = len(a)
    L = cutoff * sum(a)
    counts = [0] * (L + 1)
    counts[0] = 1
    for e in a:
        for n in range(e, L + 1):
            counts[n] += counts[n - e]
        cap = e * (cutoff + 1)
        for n in range(L, cap - 1, -1):
            counts[n] -= counts[n - cap]
    with mpmath.workprec(PREC):
        s, w = to_mpf(s), to_mpf(w)
        if s <= r:
            raise ValueError(f"Barnes zeta needs s > r = {r}, got {s}")
        value = mpmath.fsum(c * (n + w) ** -s for n, c in enumerate(counts) if c)
        tail = barnes_tail_bound(a, s, w, (cutoff + 1) * min(a))
        return BarnesSum(value, tail)


def barnes_zeta_lemma(a: Sequence[int], s, w, tol=1e-15) -> mpmath.mpf:
    """Barnes zeta as a finite combination of Hurwitz zeta values.

    zeta_a(s, w) = 1/(D^s (r-1)!) sum_{j in box} sum_{k<r} [r, k+1]
                   sum_{i<=k} (-1)^i C(k, i) ((a.j + w)/D)^i zeta(s-k+i, (rem(j)+w)/D)

    with the box 0 <= j_s <= D/a_s - 1 and rem from :func:`residue_division`.
    """
    r = len(a)
    D = lcm(*a)
    stir = rising_factorial_coefficients(r)
    with mpmath.workprec(PREC):
        s, w = to_mpf(s), to_mpf(w)
        if s <= r:
            raise ValueError(f"s must exceed r = {r} so every Hurwitz argument exceeds 1, got {s}")
        table = residue_table(a)
        inner_tol = to_mpf(tol) / (len(table) * 2**r * max(stir) * 10)
        total = mpmath.mpf(0)
        for j, (_, rem) in table.items():
            X = (sum(x * y for x, y in zip(a, j)) + w) / D
            y = (rem + w) / D
            for k in range(r):
                for i in range(k + 1):
                    total += stir[k] * (-1) ** i * comb(k, i) * X**i * hurwitz_zeta(s - k + i, y, inner_tol)
        return total / (mpmath.mpf(D) ** s * factorial(r - 1))


def remark_r1_check(a1: int, s, w, tol=1e-12) -> dict:
    """One-part Barnes zeta against a1^(-s) zeta(s, w/a1) and the printed
    variant a1^(-s) zeta(s, a1/w)."""
    with mpmath.workprec(PREC):
        s, w = to_mpf(s), to_mpf(w)
        reference = barnes_zeta_lemma((a1,), s, w, tol)
        corrected = mpmath.mpf(a1) ** -s * hurwitz_zeta(s, w / a1, tol)
        printed = mpmath.mpf(a1) ** -s * hurwitz_zeta(s, a1 / w, tol)
        return {
            "reference": reference,
            "corrected": corrected,
            "printed": printed,
            "corrected_ok": abs(corrected - reference) <= 10 * to_mpf(tol),
            "printed_ok": abs(printed - reference) <= 10 * to_mpf(tol),
        }


def _kronecker_convolve(vectors: list[list[mpmath.mpf]], bits: int) -> tuple[list[int], int]:
    """k-fold convolution of non-negative real vectors in fixed point.

    Each vector is rounded to integers at scale 2^bits, packed into one big
    integer with slots wide enough that no slot can overflow, and the packed
    integers are multiplied. Returns (slot values for indices < len, total scale
    exponent) so entry n of the convolution is slots[n] / 2^exponent.
    """
    length = len(vectors[0])
    k = len(vectors)
    ints = [[int(mpmath.floor(v * mpmath.mpf(2) ** bits)) for v in vec] for vec in vectors]
    max_bits = sum(max(1, max(iv).bit_length()) for iv in ints)
    width = max_bits + (k - 1) * length.bit_length() + 8
    nbytes = (width + 7) // 8
    product = 1
    for iv in ints:
        packed = int.from_bytes(b"".join(v.to_bytes(nbytes, "little") for v in iv), "little")
        product *= packed
    raw = product.to_bytes(max(1, (product.bit_length() + 7) // 8), "little")
    slots = [int.from_bytes(raw[n * nbytes : (n + 1) * nbytes], "little") for n in range(length)]
    return slots, k * bits


def _literal_p2(a: Sequence[int], s, ws, tol) -> mpmath.mpf:
    r = len(a)
    D = lcm(*a)
    stir = rising_factorial_coefficients(r)
    table = residue_table(a)
    total = mpmath.mpf(0)
    for m in range(r):
        for ell in range(m + 1):
            prod_i = mpmath.mpf(1)
            for w in ws:
                acc = mpmath.mpf(0)
                for j, (_, rem) in table.items():
                    X = (sum(x * y for x, y in zip(a, j)) + w) / D
                    acc += X**ell * hurwitz_zeta(s - m + ell, (rem + w) / D, tol)
                prod_i *= acc
            total += stir[m] * (-1) ** ell * comb(m, ell) * prod_i
    return total / (mpmath.mpf(D) ** s * factorial(r - 1))


def _entry(formula_id, verdict, **witness):
    return {"formula_id": formula_id, "verdict": verdict, "witness": witness}


def _show(x) -> str:
    return mpmath.nstr(x, 15)


def zak_product_check(spec: PartitionSpec, s, w_list: Sequence, cutoff: int, tol=1e-6) -> list[dict]:
    """Compare four evaluations of the k-fold product of Barnes zeta values.

    (i)   prod_i zeta_a(s, w_i) from the Hurwitz reduction;
    (ii)  the box sum over (n_1..n_k) in [0, cutoff]^k of prod_j p_a(n_j)/(n_j+w_j)^s;
    (iii) the printed series with p_{a,k}(n) in front of each inner sum;
    (iv)  the printed Hurwitz expansion of the product.
    Returns audit entries for p1 (ii vs i), p1-literal (iii) and p2-literal (iv).
    """
    a, k, r = spec.a, spec.k, spec.r
    if len(w_list) != k:
        raise ValueError(f"expected {k} shifts w, got {len(w_list)}")
    with mpmath.workprec(PREC):
        s = to_mpf(s)
        ws = [to_mpf(w) for w in w_list]
        if s <= r:
            raise ValueError(f"s must exceed r = {r}")
        if any(w <= 0 for w in ws):
            raise ValueError("every w must be positive")
        tol = to_mpf(tol)
        inner_tol = tol / 1000

        product = mpmath.fprod(barnes_zeta_lemma(a, s, w, inner_tol) for w in ws)

        p_a = count_series(PartitionSpec(a, 1), cutoff).values
        factors, tails = [], []
        for w in ws:
            factors.append(mpmath.fsum(p_a[n] * (n + w) ** -s for n in range(cutoff + 1)))
            tails.append(barnes_tail_bound(a, s, w, cutoff + 1))
        # the box sum factorises into one-dimensional sums
        corrected = mpmath.fprod(factors)
        drop = mpmath.fprod(f + t for f, t in zip(factors, tails)) - corrected
        ok = abs(corrected - product) <= tol
        entries = [
            _entry(
                "p1",
                "CORRECTED" if ok else "FAIL",
                product=_show(product),
                series=_show(corrected),
                truncation_bound=mpmath.nstr(drop, 3),
                cutoff=str(cutoff),
                tol=mpmath.nstr(tol, 3),
            )
        ]

        p_ak = count_series(spec, cutoff).values
        vectors = [[(n + w) ** -s for n in range(cutoff + 1)] for w in ws]
        slots, scale = _kronecker_convolve(vectors, PREC + 32)
        literal = to_mpf(sum(p * c for p, c in zip(p_ak, slots))) / mpmath.mpf(2) ** scale
        ok = abs(literal - product) <= tol
        entries.append(
            _entry(
                "p1-literal",
                "PASS" if ok else "FAIL",
                product=_show(product),
                literal_partial_sum=_show(literal),
                cutoff=str(cutoff),
                tol=mpmath.nstr(tol, 3),
            )
        )

        p2 = _literal_p2(a, s, ws, inner_tol)
        ok = abs(p2 - product) <= tol
        entries.append(
            _entry(
                "p2-literal",
                "PASS" if ok else "FAIL",
                product=_show(product),
                literal_value=_show(p2),
                tol=mpmath.nstr(tol, 3),
            )
        )
        return entries
