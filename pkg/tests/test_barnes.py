from fractions import Fraction
from itertools import permutations

import pytest

from multipartition.barnes import (
    bernoulli_barnes,
    bernoulli_barnes_grouped,
    delta_determinant,
    delta_matrix,
    dety_reconstruct,
    dety_system,
)
from multipartition.numbers import bernoulli_number, compositions, multinomial
from multipartition.oracle import PartitionSpec, expand_ak

F = Fraction


def enumerate_barnes(a, j):
    total = F(0)
    for parts in compositions(j, len(a)):
        term = F(multinomial(j, parts))
        for i, x in zip(parts, a):
            term *= bernoulli_number(i) * x**i
        total += term
    return total


def test_bernoulli_barnes_examples():
    assert bernoulli_barnes((5, 7), 0) == 1
    assert bernoulli_barnes((1, 1), 1) == -1
    assert bernoulli_barnes((1, 2), 2) == F(11, 6)


@pytest.mark.parametrize("a", [(1, 2), (2, 3, 5), (1, 1, 2, 2), (4,)])
def test_bernoulli_barnes_matches_enumeration(a):
    for j in range(10):
        assert bernoulli_barnes(a, j) == enumerate_barnes(a, j)


def test_single_part_degenerates():
    for a1 in (1, 2, 5):
        for j in range(15):
            assert bernoulli_barnes((a1,), j) == bernoulli_number(j) * a1**j


def test_grouped_examples():
    assert bernoulli_barnes_grouped(PartitionSpec((1, 2), 2), 0) == 1
    assert bernoulli_barnes_grouped(PartitionSpec((1,), 2), 1) == -1
    assert bernoulli_barnes_grouped(PartitionSpec((1, 2), 2), 2) == enumerate_barnes((1, 1, 2, 2), 2)


def test_grouped_equals_direct(spec):
    ak = expand_ak(spec)
    for j in range(13):
        assert bernoulli_barnes_grouped(spec, j) == bernoulli_barnes(ak, j)


def test_delta_one_by_one():
    assert delta_determinant(PartitionSpec((1,), 1)) == F(1, 2)


def test_delta_size(spec):
    M = delta_matrix(spec)
    assert M.rows == M.cols == spec.rk * spec.D


def test_delta_is_exact(spec):
    assert isinstance(delta_determinant(spec), Fraction)


def test_delta_column_layout():
    M = delta_matrix(PartitionSpec((1, 2), 1))
    # row 0, block m=0: B_1(1/2)/1, B_1(1)/1; block m=1: B_2(1/2)/2, B_2(1)/2
    assert list(M.entries[0]) == [F(0), F(1, 2), F(-1, 24), F(1, 12)]


def test_delta_depends_only_on_rk_and_d():
    base = delta_determinant(PartitionSpec((1, 2, 3), 1))
    for perm in set(permutations((1, 2, 3))):
        assert delta_determinant(PartitionSpec(perm, 1)) == base
    assert delta_determinant(PartitionSpec((2, 3, 6), 1)) == base


def test_dety_one_by_one_witness():
    report = dety_reconstruct(PartitionSpec((1,), 1))
    assert not report.singular
    assert report.solution == [F(-1)]
    assert report.reference == [F(1)]
    assert report.verdict == "FAIL"
    M, rhs = dety_system(PartitionSpec((1,), 1))
    assert M.entries == ((F(1, 2),),) and rhs == [F(-1, 2)]


def test_dety_report_schema():
    d = dety_reconstruct(PartitionSpec((1, 2), 1)).as_dict()
    assert {"delta", "singular", "solution", "reference", "verdict"} <= set(d)


@pytest.mark.parametrize("spec", [PartitionSpec((1, 2), 1), PartitionSpec((1, 2), 2), PartitionSpec((2, 3), 1)], ids=str)
def test_dety_residual_zero(spec):
    report = dety_reconstruct(spec)
    if not report.singular:
        M, rhs = dety_system(spec)
        assert M.matvec(report.solution) == rhs
        assert report.residual_zero
