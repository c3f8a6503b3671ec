"""Restricted k-multipartition function p_{a,k}(n) in exact arithmetic."""

__version__ = "0.1.0"

from .oracle import PartitionSpec, count_series, expand_ak  # noqa: E402
from .quasipoly import QuasiPolynomial, build_quasipolynomial, count_closed_form, evaluate  # noqa: E402

__all__ = [
    "__version__",
    "PartitionSpec",
    "QuasiPolynomial",
    "build_quasipolynomial",
    "count_closed_form",
    "count_series",
    "evaluate",
    "expand_ak",
]
