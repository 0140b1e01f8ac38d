"""Raw moments from truncated Taylor expansion of the moment generating function.

The MGF of the multinomial is ``(1 - sum x + sum x_i e^{t_i})^m``. Raw moments
are its mixed partial derivatives at ``t = 0``, i.e. Taylor coefficients
scaled by the factorials of the exponents. We never differentiate by hand:
the base is assembled from truncated exponential series and raised to the
``m``-th power inside a ring of polynomials truncated at total degree ``D``.

Only ring operations are used (no series division, exp or log), so exact
rational coefficients stay exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Sequence

from .model import MAX_ORDER, MultinomialParams, Scalar, check_indices

MAX_VARS = 4


@lru_cache(maxsize=None)
def _monomials(nvars: int, degree: int) -> tuple[tuple[int, ...], ...]:
    """Exponent vectors of total degree <= ``degree``, graded then lexicographic."""
    exps = [e for e in product(range(degree + 1), repeat=nvars) if sum(e) <= degree]
    exps.sort(key=lambda e: (sum(e), e))
    return tuple(exps)


@lru_cache(maxsize=None)
def _index(nvars: int, degree: int) -> dict[tuple[int, ...], int]:
    return {e: n for n, e in enumerate(_monomials(nvars, degree))}


@lru_cache(maxsize=None)
def _product_table(nvars: int, degree: int) -> tuple[tuple[int, int, int], ...]:
    # (slot a, slot b, slot of a*b) for every pair whose product survives truncation
    mons = _monomials(nvars, degree)
    where = _index(nvars, degree)
    table = []
    for a, ea in enumerate(mons):
        for b, eb in enumerate(mons):
            if sum(ea) + sum(eb) <= degree:
                table.append((a, b, where[tuple(u + v for u, v in zip(ea, eb))]))
    return tuple(table)


class TruncatedSeries:
    """Polynomial in ``nvars`` formal variables, truncated above total degree ``degree``.

    Coefficients are stored densely, one slot per exponent vector of
    :func:`_monomials`. Instances are treated as immutable.
    """

    __slots__ = ("nvars", "degree", "coeffs")

    def __init__(self, nvars: int, degree: int, coeffs: Sequence):
        if not 1 <= nvars <= MAX_VARS:
            raise ValueError("between 1 and %d variables are supported" % MAX_VARS)
        if not 0 <= degree <= MAX_ORDER:
            raise ValueError("degree bound must lie in 0..%d" % MAX_ORDER)
        size = len(_monomials(nvars, degree))
        if len(coeffs) != size:
            raise ValueError("expected %d coefficients, got %d" % (size, len(coeffs)))
        self.nvars = nvars
        self.degree = degree
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, value, nvars: int, degree: int) -> "TruncatedSeries":
        size = len(_monomials(nvars, degree))
        zero = value * 0
        return cls(nvars, degree, (value,) + (zero,) * (size - 1))

    @classmethod
    def from_terms(cls, terms: dict, nvars: int, degree: int, zero=Fraction(0)) -> "TruncatedSeries":
        where = _index(nvars, degree)
        coeffs = [zero] * len(where)
        for exps, c in terms.items():
            if sum(exps) <= degree:
                coeffs[where[tuple(exps)]] += c
        return cls(nvars, degree, coeffs)

    def exponents(self) -> tuple[tuple[int, ...], ...]:
        return _monomials(self.nvars, self.degree)

    def coefficient(self, exps: Sequence[int]):
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("exponent vector has the wrong length")
        if sum(exps) > self.degree:
            raise ValueError("monomial lies above the truncation degree")
        return self.coeffs[_index(self.nvars, self.degree)[exps]]

    def _check(self, other: "TruncatedSeries") -> None:
        if (self.nvars, self.degree) != (other.nvars, other.degree):
            raise ValueError("series live in different truncated rings")

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.nvars, self.degree, (self.coeffs[0] + other,) + self.coeffs[1:])
        self._check(other)
        return TruncatedSeries(self.nvars, self.degree, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(self.nvars, self.degree, [c * other for c in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        out = [a[0] * 0] * len(a)
        for ia, ib, ic in _product_table(self.nvars, self.degree):
            out[ic] += a[ia] * b[ib]
        return TruncatedSeries(self.nvars, self.degree, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedSeries":
        """Integer power by repeated squaring, truncating after every product."""
        if n < 0:
            raise ValueError("negative powers need series division")
        result = TruncatedSeries.constant(self.coeffs[0] ** 0, self.nvars, self.degree)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (self.nvars, self.degree, self.coeffs) == (other.nvars, other.degree, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.nvars, self.degree, self.coeffs))

    def __repr__(self) -> str:
        terms = [
            "%s*t^%s" % (c, "".join(map(str, e)))
            for e, c in zip(self.exponents(), self.coeffs)
            if c != 0
        ]
        return "TruncatedSeries(%d, %d, %s)" % (self.nvars, self.degree, " + ".join(terms) or "0")


def exp_jet(var: int, degree_bound: int, nvars: int | None = None) -> TruncatedSeries:
    """Taylor polynomial ``sum_{k<=D} t_var^k / k!`` with exact coefficients.

    ``var`` is a 0-based variable slot; ``nvars`` defaults to ``var + 1``.
    """
    if nvars is None:
        nvars = var + 1
    if not 0 <= var < nvars:
        raise ValueError("variable slot out of range")
    terms = {}
    for k in range(degree_bound + 1):
        exps = [0] * nvars
        exps[var] = k
        terms[tuple(exps)] = Fraction(1, factorial(k))
    return TruncatedSeries.from_terms(terms, nvars, degree_bound)


@lru_cache(maxsize=4096)
def _mgf_jet(params: MultinomialParams, categories: tuple[int, ...], degree: int) -> TruncatedSeries:
    nvars = len(categories)
    chosen = set(categories)
    # categories without a formal variable sit at t = 0, where e^0 = 1
    const = 1 - sum(params.x) + sum(params.x[i - 1] for i in range(1, params.d + 1) if i not in chosen)
    base = TruncatedSeries.constant(const, nvars, degree)
    for slot, i in enumerate(categories):
        base = base + exp_jet(slot, degree, nvars) * params.x[i - 1]
    if not params.exact:
        base = TruncatedSeries(nvars, degree, [float(c) for c in base.coeffs])
    return base ** params.m


def _variables(indices: Sequence[int]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    categories = tuple(sorted(set(indices)))
    mults = tuple(sum(1 for i in indices if i == c) for c in categories)
    return categories, mults


def mgf_jet(params: MultinomialParams, query_indices: Sequence[int]) -> TruncatedSeries:
    """Truncated MGF in one formal variable per distinct category of the query.

    Variables are assigned to the distinct categories in increasing order and
    the degree bound is the length of the query.
    """
    idx = check_indices(params, query_indices)
    categories, _ = _variables(idx)
    return _mgf_jet(params, categories, len(idx))


def raw_moment_via_mgf(params: MultinomialParams, indices: Sequence[int]) -> Scalar:
    idx = check_indices(params, indices)
    categories, mults = _variables(idx)
    jet = _mgf_jet(params, categories, len(idx))
    scale = 1
    for a in mults:
        scale *= factorial(a)
    return jet.coefficient(mults) * scale
