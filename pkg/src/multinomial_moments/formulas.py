"""Closed-form joint raw, central and factorial moments of orders 1 to 4.

Raw and central moments are dispatched on the equality pattern of the index
tuple (see :func:`~multinomial_moments.model.canonical_pattern`). Each arm is
a polynomial in falling factorials of ``m`` (raw) or in ``m`` (central),
with probability factors read positionally from the query: ``x[q]`` is the
probability of the category at position ``q`` of the tuple.

The comment above each order-4 raw arm names the compound indicator it
realizes, with positions written ``i, j, l, p``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .model import (
    MomentKind,
    MomentQuery,
    MultinomialParams,
    Scalar,
    canonical_pattern,
    check_indices,
    check_orders,
)


def falling_factorial(m: int, k: int) -> int:
    """``m (m-1) ... (m-k+1)``; 1 for ``k == 0`` and 0 whenever ``k > m``."""
    if k < 0:
        raise ValueError("depth must be non-negative")
    out = 1
    for r in range(k):
        out *= m - r
        if out == 0:
            break
    return out


Arm = Callable[[int, Sequence], Scalar]


def _ff(m: int, k: int) -> int:
    return falling_factorial(m, k)


# -- raw moments --------------------------------------------------------------

RAW_ARMS: dict[str, Arm] = {
    "0": lambda m, x: m * x[0],
    "00": lambda m, x: _ff(m, 2) * x[0] * x[0] + m * x[0],
    "01": lambda m, x: _ff(m, 2) * x[0] * x[1],
    "000": lambda m, x: _ff(m, 3) * x[0] ** 3 + 3 * _ff(m, 2) * x[0] ** 2 + m * x[0],
    # i = j != l
    "001": lambda m, x: _ff(m, 3) * x[0] * x[1] * x[2] + _ff(m, 2) * x[0] * x[2],
    # i != j != l = i
    "010": lambda m, x: _ff(m, 3) * x[0] * x[1] * x[2] + _ff(m, 2) * x[1] * x[2],
    # i != j = l
    "011": lambda m, x: _ff(m, 3) * x[0] * x[1] * x[2] + _ff(m, 2) * x[0] * x[1],
    "012": lambda m, x: _ff(m, 3) * x[0] * x[1] * x[2],
    # i = j = l = p
    "0000": lambda m, x: (
        _ff(m, 4) * x[0] ** 4 + 6 * _ff(m, 3) * x[0] ** 3 + 7 * _ff(m, 2) * x[0] ** 2 + m * x[0]
    ),
    # i = j = l != p
    "0001": lambda m, x: (
        _ff(m, 4) * x[0] ** 3 * x[3] + 3 * _ff(m, 3) * x[0] ** 2 * x[3] + _ff(m, 2) * x[0] * x[3]
    ),
    # {i = j != l != i} and {i = p != l}
    "0010": lambda m, x: (
        _ff(m, 4) * x[0] ** 3 * x[2] + 3 * _ff(m, 3) * x[0] ** 2 * x[2] + _ff(m, 2) * x[0] * x[2]
    ),
    # {i = j != l != i} and {i != p = l}
    "0011": lambda m, x: (
        _ff(m, 4) * x[0] ** 2 * x[2] ** 2
        + _ff(m, 3) * (x[0] ** 2 * x[2] + x[0] * x[2] ** 2)
        + _ff(m, 2) * x[0] * x[2]
    ),
    # {i = j != l != i} and {i != p != l}
    "0012": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[0] * x[2] * x[3]
    ),
    # {i != j != l = i} and {j != p = l}
    "0100": lambda m, x: (
        _ff(m, 4) * x[0] ** 3 * x[1] + 3 * _ff(m, 3) * x[1] * x[2] ** 2 + _ff(m, 2) * x[1] * x[2]
    ),
    # {i != j != l = i} and {j = p != l}
    "0101": lambda m, x: (
        _ff(m, 4) * x[0] ** 2 * x[1] ** 2
        + _ff(m, 3) * (x[1] * x[2] ** 2 + x[1] ** 2 * x[2])
        + _ff(m, 2) * x[1] * x[2]
    ),
    # {i != j != l = i} and {j != p != l}
    "0102": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[1] * x[2] * x[3]
    ),
    # {i != j = l != i} and {i = p != j}
    "0110": lambda m, x: (
        _ff(m, 4) * x[0] ** 2 * x[1] ** 2
        + _ff(m, 3) * (x[0] * x[1] ** 2 + x[0] ** 2 * x[1])
        + _ff(m, 2) * x[0] * x[1]
    ),
    # {i != j = l != i} and {i != p = j}
    "0111": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] ** 3 + 3 * _ff(m, 3) * x[0] * x[1] ** 2 + _ff(m, 2) * x[0] * x[1]
    ),
    # {i != j = l != i} and {i != p != j}
    "0112": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[0] * x[1] * x[3]
    ),
    # {p = i} and {j != l != p != j}
    "0120": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[0] * x[1] * x[2]
    ),
    # {p = j} and {i != l != p != i}
    "0121": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[0] * x[1] * x[2]
    ),
    # {p = l} and {i != j != p != i}
    "0122": lambda m, x: (
        _ff(m, 4) * x[0] * x[1] * x[2] * x[3] + _ff(m, 3) * x[0] * x[1] * x[2]
    ),
    "0123": lambda m, x: _ff(m, 4) * x[0] * x[1] * x[2] * x[3],
}


# -- central moments ----------------------------------------------------------
#
# Order 4 arms group the contributions by the coefficient families
# 3m^2-6m (all positions), 12m^2-12m and 3m^2-7m (all equal), m^2 (pairwise
# equalities), 6m^2-6m and m (one triple), 2m^2-2m (an isolated pair with
# adjacent-only inequalities) and m^2-m (two pairs).


def _triple_single(m: int, a, b):
    # a: probability of the repeated category, b: the single one
    return (3 * m * m - 6 * m) * a ** 3 * b + 3 * m * m * a * a * b - (6 * m * m - 6 * m) * a * a * b - m * a * b


def _two_pairs(m: int, a, b):
    return (
        (3 * m * m - 6 * m) * a * a * b * b
        + m * m * (a * a * b + a * b * b)
        - (2 * m * m - 2 * m) * (a * a * b + a * b * b)
        + (m * m - m) * a * b
    )


def _one_pair(m: int, a, b, c):
    # a: probability of the paired category
    return (3 * m * m - 6 * m) * a * a * b * c + m * m * a * b * c - (2 * m * m - 2 * m) * a * b * c


CENTRAL_ARMS: dict[str, Arm] = {
    "0": lambda m, x: 0 * x[0],
    "00": lambda m, x: m * (x[0] - x[0] * x[0]),
    "01": lambda m, x: -m * x[0] * x[1],
    "000": lambda m, x: m * (2 * x[0] ** 3 - 3 * x[0] ** 2 + x[0]),
    "001": lambda m, x: m * (2 * x[0] * x[1] * x[2] - x[0] * x[2]),
    "010": lambda m, x: m * (2 * x[0] * x[1] * x[2] - x[1] * x[2]),
    "011": lambda m, x: m * (2 * x[0] * x[1] * x[2] - x[0] * x[1]),
    "012": lambda m, x: 2 * m * x[0] * x[1] * x[2],
    "0000": lambda m, x: (
        (3 * m * m - 6 * m) * x[0] ** 4
        - (12 * m * m - 12 * m) * x[0] ** 3
        + 6 * m * m * x[0] ** 3
        + (3 * m * m - 7 * m) * x[0] ** 2
        + m * x[0]
    ),
    "0001": lambda m, x: _triple_single(m, x[0], x[3]),
    "0010": lambda m, x: _triple_single(m, x[0], x[2]),
    "0100": lambda m, x: _triple_single(m, x[0], x[1]),
    "0111": lambda m, x: _triple_single(m, x[1], x[0]),
    "0011": lambda m, x: _two_pairs(m, x[0], x[2]),
    "0101": lambda m, x: _two_pairs(m, x[0], x[1]),
    "0110": lambda m, x: _two_pairs(m, x[0], x[1]),
    "0012": lambda m, x: _one_pair(m, x[0], x[2], x[3]),
    "0102": lambda m, x: _one_pair(m, x[0], x[1], x[3]),
    "0120": lambda m, x: _one_pair(m, x[0], x[1], x[2]),
    "0112": lambda m, x: _one_pair(m, x[1], x[0], x[3]),
    "0121": lambda m, x: _one_pair(m, x[1], x[0], x[2]),
    "0122": lambda m, x: _one_pair(m, x[2], x[0], x[1]),
    "0123": lambda m, x: (3 * m * m - 6 * m) * x[0] * x[1] * x[2] * x[3],
}


def _dispatch(arms: dict[str, Arm], tag: str, params: MultinomialParams, indices, coverage):
    idx = check_indices(params, indices)
    key = str(canonical_pattern(idx))
    if coverage is not None:
        coverage[(tag, key)] += 1
    probs = [params.x[i - 1] for i in idx]
    return arms[key](params.m, probs)


def raw_moment(params: MultinomialParams, indices: Sequence[int], coverage: Counter | None = None) -> Scalar:
    """``E[xi_i xi_j ...]`` over the (1-based) index tuple.

    If ``coverage`` is given, the arm key ``("raw", pattern)`` is counted in it.
    """
    return _dispatch(RAW_ARMS, "raw", params, indices, coverage)


def central_moment(params: MultinomialParams, indices: Sequence[int], coverage: Counter | None = None) -> Scalar:
    """Joint central moment ``E[prod (xi_q - E xi_q)]`` over the index tuple."""
    return _dispatch(CENTRAL_ARMS, "central", params, indices, coverage)


def factorial_moment(params: MultinomialParams, orders: Sequence[int]) -> Scalar:
    """``E[prod_i xi_i^(r_i)]`` with falling-factorial powers ``r``.

    Equal to ``m^(sum r) * prod x_i^r_i``; zero once ``sum r > m``.
    """
    r = check_orders(params, orders)
    one = Fraction(1) if params.exact else 1.0
    value = one * falling_factorial(params.m, sum(r))
    for xi, ri in zip(params.x, r):
        if ri:
            value *= xi ** ri
    return value


@dataclass(frozen=True)
class MomentResult:
    value: Scalar
    query: MomentQuery
    params_digest: str
    mode: str


def evaluate(params: MultinomialParams, query: MomentQuery) -> MomentResult:
    if query.kind is MomentKind.RAW:
        value = raw_moment(params, query.indices)
    else:
        value = central_moment(params, query.indices)
    return MomentResult(
        value=value,
        query=query,
        params_digest=params.digest(),
        mode="exact" if params.exact else "float",
    )
