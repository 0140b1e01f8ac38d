import itertools
from fractions import Fraction
from math import comb, prod

import pytest

_ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def acceptance_log():
    """Collects one PASS/FAIL line per acceptance criterion for the summary."""
    return _ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def brute_force_expectation(m, x, func):
    """E[func(counts)] by summing over all (d+1)^m trial outcome sequences.

    Independent of the lattice enumeration in the package: every trial picks a
    category 0..d-1 or the remainder d, and counts are tallied per sequence.
    """
    d = len(x)
    probs = list(x) + [1 - sum(x, Fraction(0))]
    total = Fraction(0)
    for seq in itertools.product(range(d + 1), repeat=m):
        weight = prod((probs[c] for c in seq), start=Fraction(1))
        if weight == 0:
            continue
        counts = [0] * d
        for c in seq:
            if c < d:
                counts[c] += 1
        total += weight * func(tuple(counts))
    return total


def brute_raw(m, x, indices):
    return brute_force_expectation(m, x, lambda k: prod(k[i - 1] for i in indices))


def brute_central(m, x, indices):
    mu = [m * Fraction(v) for v in x]
    return brute_force_expectation(m, x, lambda k: prod((k[i - 1] - mu[i - 1] for i in indices), start=Fraction(1)))


def binomial_sum(m, p, func):
    """E[func(K)] for K ~ Binomial(m, p), straight from the binomial pmf."""
    p = Fraction(p)
    return sum(comb(m, k) * p**k * (1 - p) ** (m - k) * func(k) for k in range(m + 1))
