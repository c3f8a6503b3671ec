from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from multipartition.oracle import (
    OutOfRangeWarning,
    PartitionSpec,
    count_series,
    count_series_mod,
    expand_ak,
    f_coefficient_formula,
    f_coefficients,
)

from conftest import BATTERY, brute_force_count


@pytest.mark.parametrize(
    "a, k, expected",
    [((1, 2), 2, (1, 1, 2, 2)), ((3,), 3, (3, 3, 3)), ((2, 3, 5), 1, (2, 3, 5))],
)
def test_expand_ak(a, k, expected):
    assert expand_ak(PartitionSpec(a, k)) == expected


def test_spec_validation():
    with pytest.raises(ValueError):
        PartitionSpec((), 1)
    with pytest.raises(ValueError):
        PartitionSpec((1, 0), 1)
    with pytest.raises(ValueError):
        PartitionSpec((1,), 0)
    spec = PartitionSpec([4, 6], 2)
    assert spec.a == (4, 6) and spec.D == 12 and spec.r == 2 and spec.rk == 4


def test_count_series_example():
    assert count_series(PartitionSpec((1, 2), 2), 5).values == [1, 2, 5, 8, 14, 20]


def test_stars_and_bars():
    assert count_series(PartitionSpec((1,), 3), 4)[4] == comb(4 + 3 - 1, 3 - 1) == 15


def test_zero_is_one(spec):
    assert count_series(spec, 0).values == [1]


def test_matches_enumeration(spec):
    table = count_series(spec, 14)
    for n in range(15):
        assert table[n] == brute_force_count(spec.a, spec.k, n)


def test_ak_equivalence(spec):
    flat = PartitionSpec(expand_ak(spec), 1)
    assert count_series(spec, 150).values == count_series(flat, 150).values


def test_monotone_when_one_is_a_part():
    for spec in BATTERY:
        if 1 not in spec.a:
            continue
        v = count_series(spec, 300).values
        assert all(x <= y for x, y in zip(v, v[1:]))


def test_mod_series_agrees(spec):
    full = count_series(spec, 500).values
    for m in (2, 3, 5):
        assert count_series_mod(spec, 500, m) == [v % m for v in full]


@pytest.mark.parametrize(
    "N, k, expected", [(2, 2, [1, 2, 1]), (3, 2, [1, 2, 3, 2, 1]), (1, 4, [1])]
)
def test_f_coefficients_examples(N, k, expected):
    assert f_coefficients(N, k) == expected


@given(st.integers(min_value=1, max_value=12), st.integers(min_value=1, max_value=6))
def test_f_coefficients_shape(N, k):
    coeffs = f_coefficients(N, k)
    assert len(coeffs) == k * (N - 1) + 1
    assert coeffs == coeffs[::-1]
    assert sum(coeffs) == N**k


def test_f_formula_examples():
    assert f_coefficient_formula(3, 2, 2) == 3
    assert f_coefficient_formula(2, 2, 1) == 2
    assert f_coefficient_formula(7, 3, 0) == 1


def test_f_formula_out_of_range_is_flagged():
    with pytest.warns(OutOfRangeWarning):
        assert f_coefficient_formula(3, 2, 5) == 0
    with pytest.warns(OutOfRangeWarning):
        assert f_coefficient_formula(3, 2, -1) == 0
