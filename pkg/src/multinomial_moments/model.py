"""Parameter objects, moment queries and index equality patterns.

Probabilities are held either as :class:`fractions.Fraction` (exact mode) or
as ``float`` (float mode). Every formula and oracle in the package is written
once against plain arithmetic operators, so both realizations flow through
the same code.

Category indices are 1-based everywhere in the public API.
"""

from __future__ import annotations

import enum
import hashlib
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Sequence, Union

from .errors import (
    BadQueryLength,
    BadTrialCount,
    EmptyDimension,
    IndexOutOfRange,
    LengthMismatch,
    SimplexViolation,
)

Scalar = Union[Fraction, float]

MAX_ORDER = 4
FLOAT_SLACK = 1e-12


class MomentKind(str, enum.Enum):
    RAW = "raw"
    CENTRAL = "central"


@dataclass(frozen=True)
class MultinomialParams:
    """Trial count ``m`` and category probabilities ``x`` on the closed simplex.

    Build instances through :func:`validate_params`; the constructor itself
    does not check anything.
    """

    m: int
    x: tuple
    exact: bool

    @property
    def d(self) -> int:
        return len(self.x)

    @property
    def remainder(self) -> Scalar:
        """Probability of the implicit (d+1)-th category."""
        rest = 1 - sum(self.x)
        if not self.exact and rest < 0:
            # within the float slack accepted by validate_params
            return 0.0
        return rest

    def mean(self, i: int) -> Scalar:
        return self.m * self.x[i - 1]

    def digest(self) -> str:
        text = "%d;%s;%s" % (self.m, ",".join(format_scalar(v) for v in self.x), self.exact)
        return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass(frozen=True)
class MomentQuery:
    indices: tuple
    kind: MomentKind = MomentKind.RAW


@dataclass(frozen=True)
class EqualityPattern:
    """Set partition of tuple positions, stored as a restricted-growth string.

    ``labels[q]`` is the block of position ``q``; block labels appear in
    increasing order of first occurrence, so ``(1, 1, 2, 2)`` and ``(7, 7, 3, 3)``
    share the pattern ``0011``.
    """

    labels: tuple

    def __str__(self) -> str:
        return "".join(str(b) for b in self.labels)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def n_blocks(self) -> int:
        return max(self.labels) + 1 if self.labels else 0

    def blocks(self) -> list[tuple[int, ...]]:
        out: list[list[int]] = [[] for _ in range(self.n_blocks)]
        for pos, b in enumerate(self.labels):
            out[b].append(pos)
        return [tuple(b) for b in out]


def parse_scalar(text: str, exact: bool) -> Scalar:
    """Parse ``"p/q"``, ``"p"`` or a decimal literal."""
    text = text.strip()
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError("not a rational or decimal literal: %r" % text) from exc
    return value if exact else float(value)


def format_scalar(value: Scalar) -> str:
    """Render a scalar for text interfaces.

    Exact values always use the ``p/q`` form with ``q > 0`` in lowest terms;
    floats use the shortest round-tripping decimal.
    """
    if isinstance(value, Rational):
        value = Fraction(value)
        return "%d/%d" % (value.numerator, value.denominator)
    return repr(float(value))


def validate_params(m: int, x: Iterable, exact: bool | None = None) -> MultinomialParams:
    """Check ``m`` and ``x`` against the simplex constraints.

    When ``exact`` is None the mode is inferred: exact if every entry of ``x``
    is an integer or a Fraction, float otherwise. Nothing is ever clamped.
    """
    if isinstance(m, bool) or not isinstance(m, int) or m < 1:
        raise BadTrialCount("trial count must be a positive integer, got %r" % (m,))
    raw = list(x)
    if not raw:
        raise EmptyDimension("probability vector is empty")
    if exact is None:
        exact = all(isinstance(v, Rational) for v in raw)
    if exact:
        probs = tuple(Fraction(v) for v in raw)
        total = sum(probs, Fraction(0))
        bad = [v for v in probs if v < 0 or v > 1]
        if bad or total > 1:
            raise SimplexViolation(_simplex_msg(probs, total))
    else:
        probs = tuple(float(v) for v in raw)
        total = sum(probs)
        bad = [v for v in probs if not 0.0 <= v <= 1.0]
        if bad or total > 1.0 + FLOAT_SLACK:
            raise SimplexViolation(_simplex_msg(probs, total))
    return MultinomialParams(m=m, x=probs, exact=exact)


def _simplex_msg(probs: Sequence, total) -> str:
    shown = ", ".join(format_scalar(v) for v in probs)
    return "x = (%s) is not in the simplex (sum = %s)" % (shown, format_scalar(total))


def check_indices(params: MultinomialParams, indices: Sequence[int]) -> tuple:
    """Validate a 1-based index tuple of length 1..4 against ``params.d``."""
    idx = tuple(indices)
    if not 1 <= len(idx) <= MAX_ORDER:
        raise BadQueryLength("index tuples must have length 1..%d, got %d" % (MAX_ORDER, len(idx)))
    for i in idx:
        if isinstance(i, bool) or not isinstance(i, int) or not 1 <= i <= params.d:
            raise IndexOutOfRange("index %r outside 1..%d" % (i, params.d))
    return idx


def check_orders(params: MultinomialParams, orders: Sequence[int]) -> tuple:
    r = tuple(orders)
    if len(r) != params.d:
        raise LengthMismatch("expected %d factorial orders, got %d" % (params.d, len(r)))
    if any(isinstance(v, bool) or not isinstance(v, int) or v < 0 for v in r):
        raise ValueError("factorial orders must be non-negative integers: %r" % (r,))
    return r


def canonical_pattern(indices: Sequence) -> EqualityPattern:
    seen: dict = {}
    labels = []
    for i in indices:
        if i not in seen:
            seen[i] = len(seen)
        labels.append(seen[i])
    return EqualityPattern(tuple(labels))


def all_patterns(order: int) -> Iterator[EqualityPattern]:
    """Every restricted-growth string of the given length, in lexicographic order."""
    if order == 0:
        return

    def grow(prefix: list[int], top: int) -> Iterator[tuple]:
        if len(prefix) == order:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from grow(prefix, max(top, b))
            prefix.pop()

    for labels in grow([0], 0):
        yield EqualityPattern(labels)
