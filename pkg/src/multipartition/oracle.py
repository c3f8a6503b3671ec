"""Ground-truth counts from the generating function 1 / prod_i (1 - z^a_i)^k.

Everything downstream is checked against :func:`count_series`, which only
ever adds integers.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from functools import cached_property
from math import comb
from typing import Sequence

from .numbers import lcm_list

__all__ = [
    "PartitionSpec",
    "CountTable",
    "expand_ak",
    "count_series",
    "count_series_mod",
    "f_coefficients",
    "f_coefficient_formula",
    "OutOfRangeWarning",
]


class OutOfRangeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class PartitionSpec:
    """The parts ``a`` (order kept, repeats allowed) and the multiplicity ``k``."""

    a: tuple[int, ...]
    k: int = 1

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(v) for v in self.a))
        if not self.a:
            raise ValueError("a must contain at least one part")
        if any(v < 1 for v in self.a):
            raise ValueError(f"every part must be >= 1, got {self.a}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def rk(self) -> int:
        return len(self.a) * self.k

    @cached_property
    def D(self) -> int:
        return lcm_list(self.a)

    def __str__(self):
        return f"a=({','.join(map(str, self.a))}), k={self.k}"


@dataclass(frozen=True)
class CountTable:
    spec: PartitionSpec
    values: list[int] = field(repr=False)

    def __getitem__(self, n: int) -> int:
        return self.values[n]

    def __len__(self):
        return len(self.values)


def expand_ak(spec: PartitionSpec) -> tuple[int, ...]:
    """a[k]: each a_i repeated k times, in the original order."""
    return tuple(v for v in spec.a for _ in range(spec.k))


def _convolve_parts(parts: Sequence[int], n_max: int, modulus: int | None = None) -> list[int]:
    values = [0] * (n_max + 1)
    values[0] = 1 if modulus != 1 else 0
    for e in parts:
        # multiply by 1/(1 - z^e): prefix update in increasing n
        if modulus is None:
            for n in range(e, n_max + 1):
                values[n] += values[n - e]
        else:
            for n in range(e, n_max + 1):
                values[n] = (values[n] + values[n - e]) % modulus
    return values


def count_series(spec: PartitionSpec, n_max: int) -> CountTable:
    """p_{a,k}(n) for n = 0..n_max."""
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    return CountTable(spec, _convolve_parts(expand_ak(spec), n_max))


def count_series_mod(spec: PartitionSpec, n_max: int, modulus: int) -> list[int]:
    """p_{a,k}(n) mod ``modulus`` for n = 0..n_max, never holding big integers."""
    if modulus < 1:
        raise ValueError(f"modulus must be >= 1, got {modulus}")
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    return _convolve_parts(expand_ak(spec), n_max, modulus)


def f_coefficients(N: int, k: int) -> list[int]:
    """Coefficients of (1 + t + ... + t^(N-1))^k, constant term first."""
    if N < 1 or k < 1:
        raise ValueError(f"f_coefficients needs N >= 1 and k >= 1, got N={N}, k={k}")
    poly = [1]
    base = [1] * N
    for _ in range(k):
        out = [0] * (len(poly) + N - 1)
        for i, c in enumerate(poly):
            for j, b in enumerate(base):
                out[i + j] += c * b
        poly = out
    return poly


def f_coefficient_formula(N: int, k: int, ell: int) -> int:
    """sum over i*N + j = ell of (-1)^i C(k, i) C(j+k-1, j)."""
    if not 0 <= ell <= k * (N - 1):
        warnings.warn(
            f"ell={ell} outside [0, {k * (N - 1)}] for N={N}, k={k}", OutOfRangeWarning, stacklevel=2
        )
        return 0
    total = 0
    for i in range(min(k, ell // N) + 1):
        j = ell - i * N
        total += (-1) ** i * comb(k, i) * comb(j + k - 1, j)
    return total
