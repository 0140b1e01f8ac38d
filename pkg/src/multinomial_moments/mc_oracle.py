"""Monte Carlo moment estimates with standard errors.

Draws use the sequential conditional-binomial construction on numpy's PCG64
generator. Independent streams for grid sweeps come from
:class:`numpy.random.SeedSequence` spawn keys, so a run is reproducible from
its master seed alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import MomentKind, MultinomialParams, check_indices


@dataclass(frozen=True)
class McEstimate:
    estimate: float
    std_error: float
    n_samples: int
    seed: int

    def within(self, truth: float, n_sigma: float = 4.0, slack: float = 1e-9) -> bool:
        """Whether ``truth`` lies inside ``estimate +- n_sigma * std_error``.

        ``slack`` (relative to ``max(1, |truth|)``) absorbs float rounding when
        the statistic is degenerate and the standard error is zero.
        """
        band = n_sigma * self.std_error + slack * max(1.0, abs(truth))
        return abs(self.estimate - float(truth)) <= band


def make_rng(seed: int, stream: int | None = None) -> np.random.Generator:
    """Generator for ``seed``; ``stream`` selects an independent child stream."""
    if stream is None:
        ss = np.random.SeedSequence(seed)
    else:
        ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_many(params: MultinomialParams, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` draws as an ``(n, d)`` int64 array.

    ``xi_1 ~ Bin(m, x_1)``, then ``xi_i ~ Bin(m - sum_{<i} xi, x_i / (1 - sum_{<i} x))``.
    Once the residual probability is exhausted the remaining counts are zero.
    """
    out = np.zeros((n, params.d), dtype=np.int64)
    left = np.full(n, params.m, dtype=np.int64)
    # exact residuals in exact mode, so x = (1/3, 2/3) gives q = 1 exactly
    residual = params.x[0] * 0 + 1
    for i, p in enumerate(params.x):
        if residual <= 0:
            break
        q = min(max(float(p / residual), 0.0), 1.0)
        draw = rng.binomial(left, q)
        out[:, i] = draw
        left -= draw
        residual -= p
    return out


def sample(params: MultinomialParams, rng: np.random.Generator) -> np.ndarray:
    """One count vector ``(xi_1, ..., xi_d)``."""
    return sample_many(params, 1, rng)[0]


def product_statistic(draws: np.ndarray, params: MultinomialParams, indices: Sequence[int], kind) -> np.ndarray:
    cols = [i - 1 for i in indices]
    stat = np.ones(draws.shape[0])
    central = MomentKind(kind) is MomentKind.CENTRAL
    for c in cols:
        col = draws[:, c].astype(np.float64)
        if central:
            # exact mean, not the sample mean
            col = col - params.m * float(params.x[c])
        stat = stat * col
    return stat


def estimate_from_draws(draws: np.ndarray, params: MultinomialParams, indices: Sequence[int], kind, seed: int) -> McEstimate:
    stat = product_statistic(draws, params, indices, kind)
    n = stat.shape[0]
    return McEstimate(
        estimate=float(stat.mean()),
        std_error=float(stat.std(ddof=1) / np.sqrt(n)),
        n_samples=n,
        seed=seed,
    )


def moment_via_mc(
    params: MultinomialParams,
    indices: Sequence[int],
    kind: MomentKind | str = MomentKind.RAW,
    n_samples: int = 100_000,
    seed: int = 0,
) -> McEstimate:
    if n_samples < 2:
        raise ValueError("need at least two samples for a standard error")
    idx = check_indices(params, indices)
    draws = sample_many(params, n_samples, make_rng(seed))
    return estimate_from_draws(draws, params, idx, kind, seed)
