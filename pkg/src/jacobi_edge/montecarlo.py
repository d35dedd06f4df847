"""Empirical CDFs, Kolmogorov-Smirnov distances and the experiment runner."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import edge_laws
from .sampling import SamplerConfig, sample

__all__ = [
    "KS_COEFF",
    "EmpiricalCdf",
    "ExperimentResult",
    "empirical_cdf",
    "evaluate",
    "ks_distance",
    "ks_two_sample",
    "ks_critical",
    "ks_critical_two_sample",
    "hard_edge_samples",
    "run_experiment",
    "median_ks",
    "lag1_autocorrelation",
]

KS_COEFF = 1.358


def ks_critical(n: int) -> float:
    """Asymptotic 5% one-sample KS critical value."""
    return KS_COEFF / math.sqrt(n)


def ks_critical_two_sample(n: int, m: Optional[int] = None) -> float:
    m = n if m is None else m
    return KS_COEFF * math.sqrt((n + m) / (n * m))


@dataclass(frozen=True)
class EmpiricalCdf:
    values: np.ndarray
    n: int

    def __call__(self, x):
        return evaluate(self, x)


def empirical_cdf(samples) -> EmpiricalCdf:
    v = np.sort(np.asarray(samples, dtype=float).ravel())
    if v.size == 0:
        raise ValueError("empirical CDF of an empty sample")
    if np.any(np.isnan(v)):
        raise ValueError("samples contain NaN")
    v.setflags(write=False)
    return EmpiricalCdf(v, int(v.size))


def evaluate(ecdf: EmpiricalCdf, x):
    """Right-continuous step function (#samples <= x)/n."""
    out = np.searchsorted(ecdf.values, x, side="right") / ecdf.n
    return float(out) if np.ndim(out) == 0 else out


def ks_distance(ecdf: EmpiricalCdf, cdf: Callable[[float], float], continuous: bool = True) -> float:
    """sup_x |F_n(x) - F(x)| taken over both sides of every jump.

    With ``continuous=False`` the left side compares against F just below the
    jump, which is needed when F itself has atoms.
    """
    xs, counts = np.unique(ecdf.values, return_counts=True)
    cum = np.cumsum(counts)
    upper = cum / ecdf.n
    lower = (cum - counts) / ecdf.n
    f = np.array([cdf(float(x)) for x in xs])
    f_left = f if continuous else np.array([cdf(float(np.nextafter(x, -np.inf))) for x in xs])
    return float(max(np.max(np.abs(upper - f)), np.max(np.abs(lower - f_left))))


def ks_two_sample(a, b) -> float:
    ea, eb = empirical_cdf(a), empirical_cdf(b)
    pts = np.concatenate([ea.values, eb.values])
    return float(np.max(np.abs(evaluate(ea, pts) - evaluate(eb, pts))))


def lag1_autocorrelation(x) -> float:
    x = np.asarray(x, dtype=float)
    x = x - x.mean()
    den = float(np.dot(x, x))
    return float(np.dot(x[:-1], x[1:]) / den) if den > 0 else 0.0


def hard_edge_samples(config: SamplerConfig, count: int, edge: str = "smallest") -> np.ndarray:
    """N^2 phi_1 (smallest) or N^2 (1 - phi_N) (largest) for ``count`` draws."""
    N = config.params.N
    if edge == "smallest":
        vals = sample(config, count).values
        if vals.ndim == 2:
            vals = vals[:, 0]
        return N * N * vals
    if edge != "largest":
        raise ValueError(f"unknown edge {edge!r}")
    cfg = SamplerConfig(config.params, config.method, config.seed, config.batch_size, "all_eigenvalues")
    vals = sample(cfg, count).values
    return N * N * (1.0 - vals[:, -1])


@dataclass
class ExperimentResult:
    config: SamplerConfig
    count: int
    edge: str
    samples: np.ndarray
    curve: edge_laws.EdgeCurve
    empirical: np.ndarray
    ks: dict = field(default_factory=dict)

    def report(self) -> dict:
        p = self.config.params
        return {
            "params": {"N": p.N, "beta": p.beta, "alpha1": p.alpha1, "alpha2": p.alpha2},
            "method": self.config.method,
            "seed": int(self.config.seed),
            "batch_size": self.config.batch_size,
            "count": self.count,
            "edge": self.edge,
            "ks": {k: float(v) for k, v in sorted(self.ks.items())},
            "ks_critical": ks_critical(self.count),
            "grid": [row[0] for row in self.curve.points],
            "leading": [row[1] for row in self.curve.points],
            "total": [row[3] for row in self.curve.points],
            "empirical": [float(v) for v in self.empirical],
        }

    def report_json(self) -> str:
        return json.dumps(self.report(), sort_keys=True, separators=(",", ":"))


def _predictors(q, edge):
    """Leading and two-term CDFs of the hard-edge variable for the chosen edge."""
    a1 = int(q.alpha1)

    def leading(x):
        return edge_laws.cdf_limit(a1, q.beta, x)

    def two_term(x):
        return edge_laws.cdf_two_term(q, x).total

    return leading, two_term


def run_experiment(
    config: SamplerConfig,
    count: int = 1000,
    grid: Optional[Sequence[float]] = None,
    edge: str = "smallest",
) -> ExperimentResult:
    """Draw samples, compare their empirical CDF with the limit and two-term laws.

    For the largest edge the variable N^2 (1 - phi_N) is compared with the
    smallest-edge laws of the mirrored ensemble.
    """
    q = config.params if edge == "smallest" else config.params.swapped()
    name = "alpha1" if edge == "smallest" else "alpha2"
    edge_laws._require_int(q.alpha1, name, "the hard-edge predictions")
    xs = hard_edge_samples(config, count, edge)
    ecdf = empirical_cdf(xs)
    curve = edge_laws.tabulate_curve(q, "two-term", grid)
    emp = evaluate(ecdf, np.array([row[0] for row in curve.points]))
    leading, two_term = _predictors(q, edge)
    ks = {"leading": ks_distance(ecdf, leading), "two_term": ks_distance(ecdf, two_term)}
    return ExperimentResult(config, count, edge, xs, curve, np.atleast_1d(emp), ks)


def median_ks(config: SamplerConfig, count: int, seeds: Sequence[int], edge: str = "smallest") -> dict:
    """Median KS distances over independent seeds."""
    runs = []
    for s in seeds:
        cfg = SamplerConfig(config.params, config.method, int(s), config.batch_size, config.want)
        runs.append(run_experiment(cfg, count, grid=[0.0], edge=edge).ks)
    return {k: float(np.median([r[k] for r in runs])) for k in runs[0]} | {
        "per_seed": [dict(r) for r in runs]
    }
