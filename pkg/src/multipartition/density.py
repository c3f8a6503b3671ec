"""Share of n <= N with p_{a,k}(n) not divisible by m, against 1/(k * sum a)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .oracle import PartitionSpec, count_series_mod

__all__ = ["DensityResult", "density_bound", "density_mod"]


@dataclass(frozen=True)
class DensityResult:
    spec: PartitionSpec
    m: int
    N: int
    hits: int

    @property
    def density(self) -> Fraction:
        """hits / (N + 1), counting n = 0..N."""
        return Fraction(self.hits, self.N + 1)

    @property
    def density_per_n(self) -> Fraction | None:
        """hits / N, the #{n <= N}/N normalisation; undefined for N = 0."""
        return Fraction(self.hits, self.N) if self.N else None

    @property
    def bound(self) -> Fraction:
        return density_bound(self.spec)

    @property
    def violation(self) -> bool:
        # informational only: the bound is asymptotic
        return self.density < self.bound


def density_bound(spec: PartitionSpec) -> Fraction:
    return Fraction(1, spec.k * sum(spec.a))


def density_mod(spec: PartitionSpec, m: int, N: int) -> DensityResult:
    if m < 2:
        raise ValueError(f"modulus must be >= 2, got {m}")
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    residues = count_series_mod(spec, N, m)
    return DensityResult(spec, m, N, sum(1 for v in residues if v))
