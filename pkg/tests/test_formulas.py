import random
from collections import Counter
from fractions import Fraction as F
from itertools import permutations, product
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import binomial_sum, brute_central, brute_force_expectation, brute_raw
from multinomial_moments.errors import IndexOutOfRange, LengthMismatch
from multinomial_moments.formulas import (
    CENTRAL_ARMS,
    RAW_ARMS,
    central_moment,
    evaluate,
    factorial_moment,
    falling_factorial,
    raw_moment,
)
from multinomial_moments.model import MomentKind, MomentQuery, all_patterns, canonical_pattern, validate_params

P2 = validate_params(2, [F(1, 2), F(1, 4)])


@st.composite
def rational_params(draw, max_d=4, max_m=6, den=6):
    d = draw(st.integers(1, max_d))
    ks = draw(st.lists(st.integers(0, den), min_size=d, max_size=d).filter(lambda ks: sum(ks) <= den))
    m = draw(st.integers(1, max_m))
    return validate_params(m, [F(k, den) for k in ks])


@st.composite
def params_and_tuple(draw, max_len=4, **kw):
    p = draw(rational_params(**kw))
    t = draw(st.lists(st.integers(1, p.d), min_size=1, max_size=max_len))
    return p, tuple(t)


def test_falling_factorial():
    assert falling_factorial(5, 0) == 1
    assert falling_factorial(5, 2) == 20
    assert falling_factorial(5, 5) == 120
    assert falling_factorial(2, 3) == 0
    assert falling_factorial(0, 0) == 1


def test_arm_tables_cover_every_pattern():
    keys = {str(p) for k in range(1, 5) for p in all_patterns(k)}
    assert set(RAW_ARMS) == keys
    assert set(CENTRAL_ARMS) == keys
    assert len(keys) == 1 + 2 + 5 + 15


# -- worked examples ----------------------------------------------------------


def test_raw_examples():
    assert raw_moment(validate_params(3, [F(1, 2), F(1, 5)]), (1,)) == F(3, 2)
    assert raw_moment(P2, (1, 1)) == F(3, 2)
    # sum k^3 C(3,k) / 8 over the Binomial(3, 1/2) support
    assert raw_moment(validate_params(3, [F(1, 2)]), (1, 1, 1)) == binomial_sum(3, F(1, 2), lambda k: k**3) == F(27, 4)
    assert raw_moment(P2, (1, 1, 2, 2)) == brute_raw(2, P2.x, (1, 1, 2, 2))


def test_central_examples():
    assert central_moment(validate_params(7, [F(1, 3), F(1, 3)]), (2,)) == 0
    assert central_moment(P2, (1, 2)) == F(-1, 4)
    q = validate_params(2, [F(1, 3), F(1, 3)])
    assert brute_central(2, q.x, (1, 1, 2)) == F(-2, 27)
    assert central_moment(q, (1, 1, 2)) == F(-2, 27)
    # contributions 1/16 + 9/64 + 1/64 + 1/32 from outcomes (2,0), (0,2), (0,0), (0,1)
    assert F(1, 16) + F(9, 64) + F(1, 64) + F(1, 32) == F(1, 4) == brute_central(2, P2.x, (1, 1, 2, 2))
    assert central_moment(P2, (1, 1, 2, 2)) == F(1, 4)
    one = validate_params(2, [F(1, 2)])
    assert binomial_sum(2, F(1, 2), lambda k: (k - 1) ** 4) == F(1, 2)
    assert central_moment(one, (1, 1, 1, 1)) == F(1, 2)


def test_adjacent_only_chain_reading_is_the_right_one():
    # reading l != i = j != p as also forcing l != p drops the 2m^2 - 2m terms for
    # the two-pair pattern, which gives 5/8 instead of the enumerated 1/4
    m, a, b = 2, F(1, 2), F(1, 4)
    alternative = (3 * m * m - 6 * m) * a * a * b * b + m * m * (a * a * b + a * b * b) + (m * m - m) * a * b
    assert alternative == F(5, 8)
    assert central_moment(P2, (1, 1, 2, 2)) == F(1, 4) != alternative


def test_factorial_examples():
    assert factorial_moment(P2, (1, 1)) == F(1, 4) == raw_moment(P2, (1, 2))
    assert factorial_moment(P2, (2, 0)) == F(1, 2) == raw_moment(P2, (1, 1)) - raw_moment(P2, (1,))
    assert factorial_moment(P2, (0, 0)) == 1
    assert factorial_moment(P2, (3, 0)) == 0


def test_factorial_length_mismatch():
    with pytest.raises(LengthMismatch):
        factorial_moment(P2, (1,))
    with pytest.raises(ValueError):
        factorial_moment(P2, (1, -1))


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        raw_moment(P2, (1, 3))
    with pytest.raises(IndexOutOfRange):
        central_moment(P2, (0,))


def test_float_mode_matches_exact():
    pf = validate_params(2, [0.5, 0.25])
    assert central_moment(pf, (1, 1, 2, 2)) == pytest.approx(0.25, rel=1e-14)
    assert isinstance(raw_moment(pf, (1, 2)), float)
    assert isinstance(factorial_moment(pf, (0, 0)), float)


def test_evaluate_wraps_result():
    res = evaluate(P2, MomentQuery((1, 2), MomentKind.CENTRAL))
    assert res.value == F(-1, 4)
    assert res.mode == "exact"
    assert res.params_digest == P2.digest()


def test_coverage_counter():
    cov = Counter()
    raw_moment(P2, (1, 1, 2, 2), cov)
    central_moment(P2, (2, 1), cov)
    assert cov == Counter({("raw", "0011"): 1, ("central", "01"): 1})


# -- literal compound indicators of the order-4 raw formula -------------------

LITERAL_ORDER4 = [
    ("0012", lambda i, j, l, p: (i == j != l != i) and (i != p != l)),
    ("0112", lambda i, j, l, p: (i != j == l != i) and (i != p != j)),
    ("0102", lambda i, j, l, p: (i != j != l == i) and (j != p != l)),
    ("0010", lambda i, j, l, p: (i == j != l != i) and (i == p != l)),
    ("0111", lambda i, j, l, p: (i != j == l != i) and (i != p == j)),
    ("0100", lambda i, j, l, p: (i != j != l == i) and (j != p == l)),
    ("0120", lambda i, j, l, p: (p == i) and (j != l != p != j)),
    ("0121", lambda i, j, l, p: (p == j) and (i != l != p != i)),
    ("0122", lambda i, j, l, p: (p == l) and (i != j != p != i)),
    ("0011", lambda i, j, l, p: (i == j != l != i) and (i != p == l)),
    ("0110", lambda i, j, l, p: (i != j == l != i) and (i == p != j)),
    ("0101", lambda i, j, l, p: (i != j != l == i) and (j == p != l)),
    ("0001", lambda i, j, l, p: i == j == l != p),
    ("0000", lambda i, j, l, p: i == j == l == p),
]


def test_literal_conditions_select_exactly_one_arm():
    for t in product(range(1, 5), repeat=4):
        fired = [key for key, cond in LITERAL_ORDER4 if cond(*t)]
        pattern = str(canonical_pattern(t))
        if pattern == "0123":
            assert fired == []
        else:
            assert fired == [pattern], (t, fired)


# -- properties ---------------------------------------------------------------


@settings(max_examples=200, deadline=None)
@given(params_and_tuple())
def test_permutation_symmetry(case):
    p, t = case
    raw = raw_moment(p, t)
    cen = central_moment(p, t)
    for perm in set(permutations(t)):
        assert raw_moment(p, perm) == raw
        assert central_moment(p, perm) == cen


def test_permutation_symmetry_exhaustive():
    p = validate_params(3, [F(1, 7), F(2, 7), F(1, 5), F(1, 4)])
    for k in range(1, 5):
        for t in product(range(1, 5), repeat=k):
            s = tuple(sorted(t))
            assert raw_moment(p, t) == raw_moment(p, s)
            assert central_moment(p, t) == central_moment(p, s)


@settings(max_examples=100, deadline=None)
@given(params_and_tuple(max_len=4, max_m=3, max_d=3))
def test_against_brute_force(case):
    p, t = case
    assert raw_moment(p, t) == brute_raw(p.m, p.x, t)
    assert central_moment(p, t) == brute_central(p.m, p.x, t)


@settings(max_examples=100, deadline=None)
@given(params_and_tuple(max_len=3))
def test_sum_to_zero_on_full_simplex(case):
    p, t = case
    full = validate_params(p.m, list(p.x) + [p.remainder])
    assert sum(central_moment(full, t + (q,)) for q in range(1, full.d + 1)) == 0


@pytest.mark.parametrize("m", [1, 2, 5, 9])
@pytest.mark.parametrize("x", [F(0), F(1, 8), F(1, 3), F(1, 2), F(7, 8), F(1)])
def test_binomial_marginal(m, x):
    p = validate_params(m, [F(1, 9), x * F(8, 9)])
    i = 2
    v = x * F(8, 9)
    q = 1 - v
    assert central_moment(p, (i, i)) == m * v * q
    assert central_moment(p, (i, i, i)) == m * v * q * (1 - 2 * v)
    assert central_moment(p, (i, i, i, i)) == m * v * q * (1 + 3 * (m - 2) * v * q)
    assert central_moment(p, (i, i, i, i)) == binomial_sum(m, v, lambda k: (k - m * v) ** 4)


@settings(max_examples=100, deadline=None)
@given(params_and_tuple())
def test_zero_probability_category(case):
    p, t = case
    zeroed = list(p.x)
    zeroed[t[0] - 1] = F(0)
    z = validate_params(p.m, zeroed)
    assert raw_moment(z, t) == 0
    assert central_moment(z, t) == 0


@settings(max_examples=100, deadline=None)
@given(rational_params(), st.data())
def test_distinct_tuple_equals_factorial_moment(p, data):
    k = data.draw(st.integers(1, min(4, p.d)))
    t = tuple(data.draw(st.permutations(range(1, p.d + 1)))[:k])
    r = [1 if i in t else 0 for i in range(1, p.d + 1)]
    assert raw_moment(p, t) == factorial_moment(p, r)


@settings(max_examples=100, deadline=None)
@given(rational_params(max_d=3, max_m=3), st.data())
def test_factorial_against_brute_force(p, data):
    r = data.draw(st.lists(st.integers(0, 3), min_size=p.d, max_size=p.d))

    def falling(k):
        return prod(prod(v - s for s in range(ri)) for v, ri in zip(k, r))

    assert factorial_moment(p, r) == brute_force_expectation(p.m, p.x, falling)


def _interpolate(points, at):
    """Lagrange interpolation through exact (m, value) pairs."""
    total = F(0)
    for a, (ma, va) in enumerate(points):
        term = F(va)
        for b, (mb, _) in enumerate(points):
            if a != b:
                term *= F(at - mb, ma - mb)
        total += term
    return total


def test_central_moments_polynomial_degree_in_m():
    rng = random.Random(11)
    for _ in range(40):
        d = rng.randint(1, 4)
        ks = [rng.randint(0, 3) for _ in range(d)]
        den = max(sum(ks), 1) + rng.randint(0, 3)
        x = [F(k, den) for k in ks]
        t = tuple(rng.randint(1, d) for _ in range(4))
        pts = [(m, central_moment(validate_params(m, x), t)) for m in (1, 2, 3)]
        for m in (4, 5, 6, 10):
            assert _interpolate(pts, m) == central_moment(validate_params(m, x), t)
        pts3 = [(m, central_moment(validate_params(m, x), t[:3])) for m in (1, 2)]
        assert _interpolate(pts3, 7) == central_moment(validate_params(7, x), t[:3])
