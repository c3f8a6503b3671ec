from fractions import Fraction
from math import comb, factorial

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from multipartition.numbers import (
    bernoulli_number,
    bernoulli_polynomial,
    binomial,
    compositions,
    divisors,
    lcm_list,
    moebius,
    multinomial,
    rising_factorial,
    stirling_first_unsigned,
)


@pytest.mark.parametrize("n, expected", [(0, Fraction(1)), (1, Fraction(-1, 2)), (3, Fraction(0))])
def test_bernoulli_examples(n, expected):
    assert bernoulli_number(n) == expected


def test_bernoulli_matches_sympy():
    # sympy uses B_1 = +1/2; every other index agrees
    for n in range(2, 41):
        assert bernoulli_number(n) == Fraction(str(sympy.bernoulli(n)))


@given(st.integers(min_value=1, max_value=60))
def test_bernoulli_recurrence(n):
    assert sum(comb(n + 1, k) * bernoulli_number(k) for k in range(n + 1)) == 0


def test_odd_bernoulli_vanish():
    assert all(bernoulli_number(n) == 0 for n in range(3, 60, 2))


@pytest.mark.parametrize(
    "n, x, expected",
    [(0, Fraction(7, 3), 1), (1, 1, Fraction(1, 2)), (2, Fraction(1, 2), Fraction(-1, 12))],
)
def test_bernoulli_polynomial_examples(n, x, expected):
    assert bernoulli_polynomial(n, x) == expected


def test_bernoulli_polynomial_at_zero():
    for n in range(31):
        assert bernoulli_polynomial(n, 0) == bernoulli_number(n)


def test_bernoulli_polynomial_difference():
    # B_n(x+1) - B_n(x) = n x^(n-1)
    x = Fraction(2, 7)
    for n in range(1, 15):
        assert bernoulli_polynomial(n, x + 1) - bernoulli_polynomial(n, x) == n * x ** (n - 1)


def test_stirling_examples():
    assert stirling_first_unsigned(3, 3) == 1
    assert stirling_first_unsigned(3, 2) == 3
    assert stirling_first_unsigned(3, 1) == 2


def test_stirling_matches_sympy_convention():
    # coefficient of x^(k-1) in (x+1)...(x+r-1) is the classical c(r, k)
    for r in range(1, 12):
        for k in range(1, r + 1):
            assert stirling_first_unsigned(r, k) == sympy.functions.combinatorial.numbers.stirling(
                r, k, kind=1, signed=False
            )


@pytest.mark.parametrize("r, k", [(0, 1), (3, 0), (3, 4)])
def test_stirling_rejects_out_of_range(r, k):
    with pytest.raises(ValueError):
        stirling_first_unsigned(r, k)


@settings(max_examples=60)
@given(
    st.integers(min_value=1, max_value=12),
    st.fractions(min_value=-5, max_value=5, max_denominator=20),
)
def test_rising_factorial_expansion(r, x):
    lhs = rising_factorial(x, r) / factorial(r - 1)
    rhs = sum(stirling_first_unsigned(r, k) * x ** (k - 1) for k in range(1, r + 1)) / factorial(r - 1)
    assert lhs == rhs


def test_binomial_identity_via_rising_factorial():
    for r in range(1, 8):
        for n in range(10):
            assert rising_factorial(n, r) / factorial(r - 1) == comb(n + r - 1, r - 1)


@pytest.mark.parametrize("n, expected", [(1, 1), (6, 1), (12, 0), (30, -1), (7, -1)])
def test_moebius_examples(n, expected):
    assert moebius(n) == expected


def test_moebius_divisor_sum():
    for n in range(1, 1001):
        assert sum(moebius(d) for d in divisors(n)) == (1 if n == 1 else 0)


def test_combinatorial_primitives():
    assert binomial(4, 2) == 6
    assert binomial(4, 5) == 0
    assert binomial(4, -1) == 0
    assert multinomial(4, (2, 1, 1)) == 12
    assert lcm_list((4, 6)) == 12
    assert rising_factorial(Fraction(5, 2), 0) == 1
    assert rising_factorial(Fraction(5, 2), 1) == 1
    assert rising_factorial(3, 3) == 20


def test_compositions_count():
    for total in range(6):
        for parts in range(1, 5):
            items = list(compositions(total, parts))
            assert len(items) == comb(total + parts - 1, parts - 1)
            assert len(set(items)) == len(items)
            assert all(sum(c) == total and len(c) == parts for c in items)


def test_bernoulli_cache_concurrent_readers():
    from concurrent.futures import ThreadPoolExecutor

    import multipartition.numbers as numbers

    numbers._bernoulli[:] = numbers._bernoulli[:1]
    with ThreadPoolExecutor(max_workers=8) as pool:
        results = list(pool.map(bernoulli_number, [80, 3, 60, 2, 80, 41, 10, 79] * 4))
    serial = [Fraction(str(sympy.bernoulli(n))) if n != 1 else Fraction(-1, 2) for n in [80, 3, 60, 2, 80, 41, 10, 79] * 4]
    assert results == serial
