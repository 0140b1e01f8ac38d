"""Cross-oracle conformance sweep behind ``multinomial-moments verify``.

A *case* is one ``(params, index tuple)`` pair. For every case the closed
forms are computed once and compared with each selected oracle:

* ``enum``: raw and central moments by exact enumeration,
* ``mgf``: raw moments from the truncated MGF,
* ``expansion``: central moments rebuilt from raw ones,
* ``mc``: raw and central Monte Carlo estimates, accepted inside 4 standard
  errors; the sweep fails only if fewer than 95% of the cases land inside.
"""

from __future__ import annotations

import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence

from . import enum_oracle, mc_oracle
from .errors import MomentError
from .expansion import central_from_raw
from .formulas import CENTRAL_ARMS, RAW_ARMS, central_moment, raw_moment
from .mgf_oracle import raw_moment_via_mgf
from .model import MAX_ORDER, MultinomialParams, format_scalar, validate_params

ORACLES = ("enum", "mgf", "expansion", "mc")
FLOAT_RTOL = 1e-12
MC_SIGMAS = 4.0
MC_COVERAGE = 0.95

CSV_COLUMNS = (
    "d", "m", "x", "indices", "raw", "central",
    "enum_raw", "enum_central", "mgf_raw", "expansion_central",
    "mc_raw", "mc_raw_se", "mc_central", "mc_central_se", "ok",
)


class ConfigError(MomentError):
    pass


@dataclass(frozen=True)
class VerifyConfig:
    oracles: tuple = ("enum", "mgf", "expansion")
    dims: tuple = (1, 2, 3)
    ms: tuple = (1, 2, 3, 4, 5)
    grid: int = 4
    exact: bool = False
    samples: int = 100_000
    seed: int = 0
    budget: int = enum_oracle.DEFAULT_BUDGET

    def check(self) -> None:
        unknown = [o for o in self.oracles if o not in ORACLES]
        if unknown or not self.oracles:
            raise ConfigError("oracles must be a non-empty subset of %s, got %s" % (",".join(ORACLES), ",".join(self.oracles)))
        if not self.dims or min(self.dims) < 1:
            raise ConfigError("dimensions must be positive")
        if not self.ms or min(self.ms) < 1:
            raise ConfigError("trial counts must be positive")
        if self.grid < 1:
            raise ConfigError("grid resolution must be positive")
        if "mc" in self.oracles and self.samples < 2:
            raise ConfigError("need at least 2 Monte Carlo samples")
        if "enum" in self.oracles:
            biggest = enum_oracle.support_size(max(self.ms), max(self.dims))
            if biggest > self.budget:
                raise ConfigError("enumeration needs %d points, budget is %d" % (biggest, self.budget))


@dataclass
class Mismatch:
    oracle: str
    kind: str
    indices: tuple
    m: int
    x: tuple
    closed_form: object
    oracle_value: object
    std_error: float | None = None

    def to_dict(self) -> dict:
        return {
            "query": {"indices": list(self.indices), "kind": self.kind},
            "params": {"m": self.m, "x": [format_scalar(v) for v in self.x]},
            "oracle": self.oracle,
            "closed_form": format_scalar(self.closed_form),
            "oracle_value": format_scalar(self.oracle_value),
            "std_error": self.std_error,
        }


@dataclass
class VerifyReport:
    cases_run: int
    mismatches: list
    wall_time: float
    mode: str
    oracles: tuple
    arm_coverage: Counter
    mc_cases: int = 0
    mc_inside: int = 0
    rows: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    @property
    def mc_coverage(self) -> float:
        return self.mc_inside / self.mc_cases if self.mc_cases else 1.0

    def arms_hit(self) -> dict:
        out = {}
        for tag, arms in (("raw", RAW_ARMS), ("central", CENTRAL_ARMS)):
            for key in sorted(arms):
                out["%s:%s" % (tag, key)] = self.arm_coverage[(tag, key)]
        return out

    def to_dict(self) -> dict:
        return {
            "cases_run": self.cases_run,
            "mismatches": [mm.to_dict() for mm in self.mismatches],
            "wall_time": self.wall_time,
            "mode": self.mode,
            "oracles": list(self.oracles),
            "arm_coverage": self.arms_hit(),
            "mc": {"cases": self.mc_cases, "inside": self.mc_inside, "coverage": self.mc_coverage},
        }


def simplex_grid(d: int, resolution: int, exact: bool = True) -> Iterator[tuple]:
    """Points ``k / g`` of the closed simplex, boundary included, in lexicographic order."""
    for ks in product(range(resolution + 1), repeat=d):
        if sum(ks) <= resolution:
            point = tuple(Fraction(k, resolution) for k in ks)
            yield point if exact else tuple(float(v) for v in point)


def index_tuples(d: int, max_order: int = MAX_ORDER) -> list[tuple]:
    out = []
    for k in range(1, max_order + 1):
        out.extend(product(range(1, d + 1), repeat=k))
    return out


def _agree(a, b, exact: bool, scale: float) -> bool:
    if exact:
        return a == b
    return math.isclose(a, b, rel_tol=FLOAT_RTOL, abs_tol=FLOAT_RTOL * scale)


def run_verify(config: VerifyConfig, collect_rows: bool = False) -> VerifyReport:
    config.check()
    start = time.perf_counter()
    coverage: Counter = Counter()
    mismatches: list = []
    mc_failures: list = []
    rows: list = []
    cases = mc_cases = mc_inside = 0
    cell = 0
    use = set(config.oracles)

    for d in config.dims:
        tuples = index_tuples(d)
        for m in config.ms:
            for x in simplex_grid(d, config.grid, config.exact):
                params = validate_params(m, x, exact=config.exact)
                table = enum_oracle.EnumerationTable(params, config.budget) if "enum" in use else None
                draws = None
                if "mc" in use:
                    draws = mc_oracle.sample_many(params, config.samples, mc_oracle.make_rng(config.seed, cell))
                cell += 1
                for t in tuples:
                    cases += 1
                    found = _check_case(params, t, table, draws, config, coverage)
                    case_bad, mc_result, row = found
                    mismatches.extend(case_bad)
                    if mc_result is not None:
                        mc_cases += 1
                        inside, outliers = mc_result
                        if inside:
                            mc_inside += 1
                        else:
                            mc_failures.extend(outliers)
                    if collect_rows:
                        rows.append(row)

    if mc_cases and mc_inside / mc_cases < MC_COVERAGE:
        mismatches.extend(mc_failures)
    return VerifyReport(
        cases_run=cases,
        mismatches=mismatches,
        wall_time=time.perf_counter() - start,
        mode="exact" if config.exact else "float",
        oracles=tuple(config.oracles),
        arm_coverage=coverage,
        mc_cases=mc_cases,
        mc_inside=mc_inside,
        rows=rows,
    )


def _check_case(params: MultinomialParams, t: Sequence[int], table, draws, config: VerifyConfig, coverage: Counter):
    exact = config.exact
    raw = raw_moment(params, t, coverage)
    cen = central_moment(params, t, coverage)
    scale = float(max(1, params.m)) ** len(t)
    bad = []
    row = dict.fromkeys(CSV_COLUMNS, "")
    row.update(d=params.d, m=params.m, x=",".join(format_scalar(v) for v in params.x),
               indices=",".join(map(str, t)), raw=format_scalar(raw), central=format_scalar(cen))

    def compare(oracle, kind, closed, value):
        row["%s_%s" % (oracle, kind)] = format_scalar(value)
        if not _agree(closed, value, exact, scale):
            bad.append(Mismatch(oracle, kind, tuple(t), params.m, params.x, closed, value))

    if table is not None:
        compare("enum", "raw", raw, table.raw(t))
        compare("enum", "central", cen, table.central(t))
    if "mgf" in config.oracles:
        compare("mgf", "raw", raw, raw_moment_via_mgf(params, t))
    if "expansion" in config.oracles:
        compare("expansion", "central", cen, central_from_raw(params, t))

    mc_result = None
    if draws is not None:
        inside = True
        outliers = []
        for kind, closed in (("raw", raw), ("central", cen)):
            est = mc_oracle.estimate_from_draws(draws, params, t, kind, config.seed)
            row["mc_%s" % kind] = format_scalar(est.estimate)
            row["mc_%s_se" % kind] = format_scalar(est.std_error)
            if not est.within(float(closed), MC_SIGMAS):
                inside = False
                outliers.append(Mismatch("mc", kind, tuple(t), params.m, params.x, closed, est.estimate, est.std_error))
        mc_result = (inside, outliers)

    row["ok"] = "true" if not bad and (mc_result is None or mc_result[0]) else "false"
    return bad, mc_result, row
