"""Central moments rebuilt from raw moments by expanding the centered product.

``prod_q (xi_q - mu_q)`` is expanded over every subset ``S`` of tuple
positions: the term for ``S`` is ``(-1)^(k-|S|) E[prod_{q in S} xi_q]
prod_{q not in S} mu_q``. Subsets are taken over positions rather than
distinct categories, so repeated indices need no special handling, and no
cancellation is done by hand.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .formulas import raw_moment
from .model import MultinomialParams, Scalar, check_indices


def expansion_terms(k: int) -> Iterator[tuple[int, tuple[int, ...], tuple[int, ...]]]:
    """Yield ``(sign, kept, centered)`` position subsets; ``2**k`` in total."""
    positions = range(k)
    for size in range(k + 1):
        for kept in combinations(positions, size):
            rest = tuple(q for q in positions if q not in kept)
            yield (-1) ** (k - size), kept, rest


def central_from_raw(params: MultinomialParams, indices: Sequence[int]) -> Scalar:
    idx = check_indices(params, indices)
    total = 0
    for sign, kept, rest in expansion_terms(len(idx)):
        if kept:
            term = raw_moment(params, [idx[q] for q in kept])
        else:
            term = 1
        for q in rest:
            term = term * params.mean(idx[q])
        total = total + sign * term
    return Fraction(total) if params.exact else float(total)
