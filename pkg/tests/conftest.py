import itertools

import pytest

from multipartition.oracle import PartitionSpec

BATTERY = [
    PartitionSpec((1, 2), 1),
    PartitionSpec((1, 2), 2),
    PartitionSpec((2, 3), 2),
    PartitionSpec((1, 2, 3), 2),
    PartitionSpec((1, 2), 3),
    PartitionSpec((3, 4, 6), 1),
]


def battery_ids():
    return [str(s) for s in BATTERY]


@pytest.fixture(params=BATTERY, ids=battery_ids())
def spec(request):
    return request.param


def brute_force_count(a, k, n):
    """Number of (x^1..x^k) in (N^r)^k with sum_j sum_i a_i x^j_i = n, by enumeration."""
    parts = [v for v in a for _ in range(k)]
    ranges = [range(n // v + 1) for v in parts]
    return sum(1 for xs in itertools.product(*ranges) if sum(p * x for p, x in zip(parts, xs)) == n)


_acceptance_results = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {name}")
