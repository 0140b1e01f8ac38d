"""Ground-truth moments by summing over the whole lattice support.

In exact mode the weights are kept as integers over a common denominator:
with ``D`` the least common multiple of the denominators of ``x``, every
``x_i * D`` and ``(1 - sum x) * D`` is an integer, so ``pmf(k) * D**m`` is an
integer too. Expectations are accumulated in integers and divided once at
the end. Float mode runs the same code with ``D = 1``.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, lcm
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceeded, SupportViolation
from .model import MomentKind, MultinomialParams, Scalar, check_indices

DEFAULT_BUDGET = 10**7


def support_size(m: int, d: int) -> int:
    return comb(m + d, d)


def _lattice(m: int, d: int) -> Iterator[tuple[int, ...]]:
    # colexicographic: the first coordinate varies fastest
    if d == 0:
        yield ()
        return
    for last in range(m + 1):
        for head in _lattice(m - last, d - 1):
            yield head + (last,)


def support(params: MultinomialParams) -> Iterator[tuple[int, ...]]:
    """Every ``k`` in ``N_0^d`` with ``sum k <= m``, once each, in colex order."""
    return _lattice(params.m, params.d)


def pmf(params: MultinomialParams, k: Sequence[int]) -> Scalar:
    k = tuple(k)
    if len(k) != params.d or any(v < 0 for v in k) or sum(k) > params.m:
        raise SupportViolation("%r is not a lattice point of the support (m=%d, d=%d)" % (k, params.m, params.d))
    rest = params.m
    coef = 1
    for v in k:
        coef *= comb(rest, v)
        rest -= v
    value = coef * params.remainder ** rest
    for xi, v in zip(params.x, k):
        value *= xi ** v
    return value


def _scaled(params: MultinomialParams):
    """Common denominator and the probabilities scaled by it."""
    if params.exact:
        den = lcm(*(v.denominator for v in params.x))
        probs = [int(v * den) for v in params.x]
        rest = int(params.remainder * den)
        return den, probs, rest
    return 1, list(params.x), params.remainder


def weighted_support(params: MultinomialParams, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[tuple[int, ...], object]]:
    """Yield ``(k, w)`` with ``w = pmf(k) * D**m`` (an int in exact mode).

    The multinomial coefficient and the probability powers are updated
    incrementally along each coordinate loop, never from factorial tables.
    """
    size = support_size(params.m, params.d)
    if size > budget:
        raise BudgetExceeded("support has %d points, budget is %d" % (size, budget))
    _, probs, rest = _scaled(params)
    m, d = params.m, params.d
    one = 1 if params.exact else 1.0
    # rest ** r for every possible remainder count r
    rest_pow = [one]
    for _ in range(m):
        rest_pow.append(rest_pow[-1] * rest)

    def walk(pos: int, budget_left: int, weight, suffix: tuple) -> Iterator:
        if pos < 0:
            yield suffix, weight * rest_pow[budget_left]
            return
        p = probs[pos]
        binom = 1
        power = one
        for v in range(budget_left + 1):
            yield from walk(pos - 1, budget_left - v, weight * binom * power, (v,) + suffix)
            binom = binom * (budget_left - v) // (v + 1)
            power = power * p

    # walking from the last coordinate makes the first one vary fastest
    yield from walk(d - 1, m, one, ())


def expectation(params: MultinomialParams, func: Callable[[tuple[int, ...]], object], budget: int = DEFAULT_BUDGET) -> Scalar:
    """``E[func(xi)]`` for an integer- or rational-valued ``func``."""
    den, _, _ = _scaled(params)
    total = 0
    for k, w in weighted_support(params, budget):
        total += w * func(k)
    if params.exact:
        return Fraction(total) / Fraction(den) ** params.m
    return float(total)


def moment_via_enumeration(
    params: MultinomialParams,
    indices: Sequence[int],
    kind: MomentKind | str = MomentKind.RAW,
    budget: int = DEFAULT_BUDGET,
) -> Scalar:
    """Raw or central joint moment as an explicit sum over the support.

    Central moments subtract the exact means ``m x_i``. In exact mode the
    centered coordinates are scaled by ``D`` to stay integral.
    """
    cols = [i - 1 for i in check_indices(params, indices)]
    if MomentKind(kind) is MomentKind.RAW:

        def stat(k):
            out = 1
            for c in cols:
                out *= k[c]
            return out

        return expectation(params, stat, budget)

    den, probs, _ = _scaled(params)
    shift = [params.m * p for p in probs]

    def centered(k):
        out = 1
        for c in cols:
            out *= k[c] * den - shift[c]
        return out

    value = expectation(params, centered, budget)
    return value / Fraction(den) ** len(cols) if params.exact else value


class EnumerationTable:
    """Materialized weighted support for evaluating many queries on one ``params``."""

    def __init__(self, params: MultinomialParams, budget: int = DEFAULT_BUDGET):
        self.params = params
        self.den, self._probs, _ = _scaled(params)
        self.points = []
        self.weights = []
        for k, w in weighted_support(params, budget):
            self.points.append(k)
            self.weights.append(w)
        self._norm = Fraction(self.den) ** params.m if params.exact else 1.0

    def __len__(self) -> int:
        return len(self.points)

    def total_mass(self) -> Scalar:
        return self._finish(sum(self.weights), 0)

    def _finish(self, total, order: int) -> Scalar:
        if self.params.exact:
            return Fraction(total) / (self._norm * Fraction(self.den) ** order)
        return float(total)

    def raw(self, indices: Sequence[int]) -> Scalar:
        cols = [i - 1 for i in check_indices(self.params, indices)]
        total = 0
        for k, w in zip(self.points, self.weights):
            term = w
            for c in cols:
                term *= k[c]
            total += term
        return self._finish(total, 0)

    def central(self, indices: Sequence[int]) -> Scalar:
        cols = [i - 1 for i in check_indices(self.params, indices)]
        m, den = self.params.m, self.den
        # D * (k_c - m x_c), integral in exact mode
        shift = {c: m * self._probs[c] for c in set(cols)}
        total = 0
        for k, w in zip(self.points, self.weights):
            term = w
            for c in cols:
                term *= k[c] * den - shift[c]
            total += term
        return self._finish(total, len(cols))

    def moment(self, indices: Sequence[int], kind: MomentKind | str) -> Scalar:
        if MomentKind(kind) is MomentKind.RAW:
            return self.raw(indices)
        return self.central(indices)

    def expect(self, func: Callable[[tuple[int, ...]], object]) -> Scalar:
        total = 0
        for k, w in zip(self.points, self.weights):
            total += w * func(k)
        return self._finish(total, 0)


def factorial_moment_via_enumeration(params: MultinomialParams, orders: Sequence[int], budget: int = DEFAULT_BUDGET) -> Scalar:
    """``E[prod_i xi_i (xi_i - 1) ... (xi_i - r_i + 1)]`` by direct summation."""
    r = tuple(orders)

    def falling(k):
        out = 1
        for v, ri in zip(k, r):
            for s in range(ri):
                out *= v - s
        return out

    return expectation(params, falling, budget)
