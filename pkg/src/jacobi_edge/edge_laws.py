"""Distribution of the smallest and largest eigenvalue of the Jacobi beta-ensemble.

Finite-N laws are evaluated from terminating 2F1^(beta/2) series in alpha1
variables; hard-edge laws (scale x = N^2 xi) from 0F1^(beta/2) series and,
at beta = 2, from Bessel determinants.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .hypergeom import (
    HypergeomSpec,
    classical_hyp,
    mhg_equal_args_log,
)
from .partitions import log_gen_pochhammer, log_pochhammer
from .selberg import EnsembleParams, log_z_n
from .special import bessel_i, monic_jacobi

__all__ = [
    "MAX_EXACT_N",
    "MAX_EXACT_ALPHA1",
    "EnvelopeError",
    "ModeMismatchError",
    "TwoTerm",
    "EdgeCurve",
    "survival_exact",
    "cdf_exact",
    "cdf_exact_scaled",
    "density_exact",
    "density_rhs",
    "cdf_limit",
    "cdf_two_term",
    "largest_cdf_two_term",
    "largest_exact",
    "cdf_exact_jue_determinant",
    "cdf_two_term_jue_bessel",
    "cdf_alpha1_zero",
    "cdf_alpha1_zero_exact",
    "cdf_alpha1_one_bessel",
    "survival_alpha1_one_jacobi",
    "survival_alpha1_one_classical",
    "jacobi_poly_representation",
    "log_jacobi_value_at_zero",
    "log_jacobi_value_at_zero_jue",
    "recentred_form",
    "tabulate_curve",
]

MAX_EXACT_N = 64
MAX_EXACT_ALPHA1 = 6


class ModeMismatchError(ValueError):
    """The parameters do not meet the requirements of the requested formula."""


class EnvelopeError(ModeMismatchError):
    """Exact evaluation requested outside the supported size envelope."""


class TwoTerm(NamedTuple):
    leading: float
    correction: float
    total: float
    raw_total: float


def _require_int(value, name, mode="exact mode"):
    if not (float(value).is_integer() and value >= 0):
        raise ModeMismatchError(f"{name} must be a nonnegative integer for {mode}")
    return int(value)


def _check_exact(p: EnsembleParams, which="alpha1") -> int:
    k = _require_int(getattr(p, which), which)
    if p.N > MAX_EXACT_N or k > MAX_EXACT_ALPHA1:
        raise EnvelopeError(
            f"exact evaluation supports N <= {MAX_EXACT_N} and {which} <= "
            f"{MAX_EXACT_ALPHA1}; use the two-term mode for N={p.N}, {which}={k}"
        )
    return k


def _log_survival(p: EnsembleParams, xi: float):
    """(sign, log) of P(phi_1 > xi) for 0 < xi < 1."""
    n = _check_exact(p)
    head = p.survival_exponent * math.log1p(-xi)
    if n == 0:
        return 1, head
    sigma = p.beta / 2
    spec = HypergeomSpec(
        (-p.N, 1 - p.N - 2 * (p.alpha2 + 1) / p.beta), (2 * n / p.beta,), sigma, n
    )
    s, lv, diag = mhg_equal_args_log(spec, xi)
    if diag.n_negative:
        raise ArithmeticError("negative term in a series whose terms are all nonnegative")
    return s, head + lv


def survival_exact(p: EnsembleParams, xi: float) -> float:
    """P(phi_1 > xi) at finite N; alpha1 must be a nonnegative integer."""
    _check_exact(p)
    if xi <= 0:
        return 1.0
    if xi >= 1:
        return 0.0
    s, lv = _log_survival(p, xi)
    return s * math.exp(lv)


def cdf_exact(p: EnsembleParams, xi: float) -> float:
    """P(phi_1 <= xi) at finite N."""
    return 1.0 - survival_exact(p, xi)


def cdf_exact_scaled(p: EnsembleParams, x: float) -> float:
    """P(N^2 phi_1 <= x)."""
    return cdf_exact(p, x / p.N ** 2)


def density_exact(p: EnsembleParams, phi: float) -> float:
    """Density of phi_1 on [0, 1]:

    Z_N phi^alpha1 (1-phi)^{alpha2 + (N-1)(1+alpha2+N beta/2)}
    * 2F1^(beta/2)(1-N, 2-N-2(alpha2+1)/beta; 2 alpha1/beta + 2; phi 1^alpha1).
    """
    n = _check_exact(p)
    if phi < 0 or phi > 1:
        return 0.0
    expo = p.alpha2 + (p.N - 1) * (1 + p.alpha2 + p.N * p.beta / 2)
    if phi == 1:
        return 0.0 if expo > 0 else (math.inf if expo < 0 else _density_core(p, n, phi, 0.0))
    if phi == 0:
        if n > 0:
            return 0.0
        return math.exp(log_z_n(p))
    return _density_core(p, n, phi, expo * math.log1p(-phi))


def _density_core(p, n, phi, log_tail):
    lz = log_z_n(p)
    if n == 0:
        return math.exp(lz + log_tail)
    spec = HypergeomSpec(
        (1 - p.N, 2 - p.N - 2 * (p.alpha2 + 1) / p.beta), (2 * n / p.beta + 2,), p.beta / 2, n
    )
    s, lv, _ = mhg_equal_args_log(spec, phi)
    return s * math.exp(lz + n * math.log(phi) + log_tail + lv)


def density_rhs(p: EnsembleParams, xi: float) -> float:
    """Closed form of -d/dxi P(phi_1 > xi) written with exponent N(1+alpha2+(N-1)beta/2) - 1."""
    n = _check_exact(p)
    lz = log_z_n(p)
    tail = (p.survival_exponent - 1) * math.log1p(-xi)
    if n == 0:
        return math.exp(lz + tail)
    spec = HypergeomSpec(
        (1 - p.N, 2 - p.N - 2 * (p.alpha2 + 1) / p.beta), (2 * n / p.beta + 2,), p.beta / 2, n
    )
    s, lv, _ = mhg_equal_args_log(spec, xi)
    return s * math.exp(lz + n * math.log(xi) + tail + lv)


def _hyp0f1_log(c, x, sigma, n):
    return mhg_equal_args_log(HypergeomSpec((), (c,), sigma, n), x)


def _leading_tail(alpha1: int, beta: float, x: float) -> float:
    """exp(-beta x/2) 0F1^(beta/2)(; 2 alpha1/beta; x 1^alpha1)."""
    if alpha1 == 0:
        return math.exp(-beta * x / 2)
    s, lv, _ = _hyp0f1_log(2 * alpha1 / beta, x, beta / 2, alpha1)
    return s * math.exp(lv - beta * x / 2)


def _correction_shape(alpha1: int, beta: float, x: float) -> float:
    """x^{1+alpha1} (beta/2)^{2 alpha1} Gamma(1+beta/2) / (Gamma(1+alpha1) Gamma(1+alpha1+beta/2))
    * exp(-beta x/2) 0F1^(beta/2)(; 2 alpha1/beta + 2; x 1^alpha1)."""
    b2 = beta / 2
    lc = (
        (1 + alpha1) * math.log(x)
        + 2 * alpha1 * math.log(b2)
        + math.lgamma(1 + b2)
        - math.lgamma(1 + alpha1)
        - math.lgamma(1 + alpha1 + b2)
        - b2 * x
    )
    if alpha1 == 0:
        return math.exp(lc)
    s, lv, _ = _hyp0f1_log(2 * alpha1 / beta + 2, x, b2, alpha1)
    return s * math.exp(lc + lv)


def cdf_limit(alpha1, beta: float, x: float) -> float:
    """N -> infinity law of N^2 phi_1: 1 - exp(-beta x/2) 0F1^(beta/2)(; 2 alpha1/beta; x 1^alpha1)."""
    a1 = _require_int(alpha1, "alpha1", "the hard-edge law")
    if not beta > 0:
        raise ValueError("beta must be positive")
    if x <= 0:
        return 0.0
    return 1.0 - _leading_tail(a1, beta, x)


def _clamp(v: float) -> float:
    return min(1.0, max(0.0, v))


def cdf_two_term(p: EnsembleParams, x: float) -> TwoTerm:
    """Limit law plus the 1/N correction for P(N^2 phi_1 <= x)."""
    a1 = _require_int(p.alpha1, "alpha1", "the two-term law")
    if x <= 0:
        return TwoTerm(0.0, 0.0, 0.0, 0.0)
    lead = 1.0 - _leading_tail(a1, p.beta, x)
    corr = ((a1 + p.alpha2 + 1) - p.beta / 2) / p.N * _correction_shape(a1, p.beta, x)
    raw = lead + corr
    return TwoTerm(lead, corr, _clamp(raw), raw)


def largest_cdf_two_term(p: EnsembleParams, x: float) -> TwoTerm:
    """P(phi_N <= 1 - x/N^2) to order 1/N; needs alpha2 a nonnegative integer."""
    _require_int(p.alpha2, "alpha2", "the largest-eigenvalue two-term law")
    t = cdf_two_term(p.swapped(), x)
    raw = 1.0 - t.raw_total
    return TwoTerm(1.0 - t.leading, -t.correction, _clamp(raw), raw)


def largest_exact(p: EnsembleParams, xi: float) -> float:
    """P(phi_N <= 1 - xi) at finite N; needs alpha2 a nonnegative integer."""
    _require_int(p.alpha2, "alpha2", "exact mode")
    return survival_exact(p.swapped(), xi)


def cdf_exact_jue_determinant(p: EnsembleParams, xi: float) -> float:
    """P(phi_1 <= xi) at beta = 2 from an alpha1 x alpha1 determinant of monic Jacobi polynomials."""
    if p.beta != 2:
        raise ModeMismatchError("the determinant formula needs beta = 2")
    n = _check_exact(p)
    if xi <= 0:
        return 0.0
    if xi >= 1:
        return 1.0
    N, a2 = p.N, p.alpha2
    head = N * (n + a2 + N) * math.log1p(-xi)
    if n == 0:
        return 1.0 - math.exp(head)
    y = -xi / (1 - xi)
    mat = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            m = N + i - j
            if m < 0:
                continue
            mat[i - 1, j - 1] = monic_jacobi(m, y, j - 1, a2 + j - 1) / math.factorial(m)
    ds, dl = np.linalg.slogdet(mat)
    lp, sp = 0.0, 1
    for i in range(1, n + 1):
        s, v = log_pochhammer(N + a2 + i, N)
        lp += v
        sp *= s
    sign = (-1) ** (N * n) * sp * ds
    return 1.0 - sign * math.exp(head + lp + dl)


def cdf_two_term_jue_bessel(alpha1, alpha2: float, N: int, x: float) -> TwoTerm:
    """beta = 2 two-term law with Bessel determinants det(I_{j-i}) and det(I_{2+j-i})."""
    n = _require_int(alpha1, "alpha1", "the Bessel-determinant law")
    if x <= 0:
        return TwoTerm(0.0, 0.0, 0.0, 0.0)
    z = 2 * math.sqrt(x)
    if n == 0:
        d0 = d2 = 1.0
    else:
        m0 = np.array([[bessel_i(j - i, z) for j in range(n)] for i in range(n)])
        m2 = np.array([[bessel_i(2 + j - i, z) for j in range(n)] for i in range(n)])
        d0, d2 = float(np.linalg.det(m0)), float(np.linalg.det(m2))
    lead = 1.0 - math.exp(-x) * d0
    corr = x / N * (n + alpha2) * math.exp(-x) * d2
    raw = lead + corr
    return TwoTerm(lead, corr, _clamp(raw), raw)


def cdf_alpha1_zero(beta: float, alpha2: float, N: int, x: float) -> TwoTerm:
    """alpha1 = 0: 1 - exp(-beta x/2) + (1 + alpha2 - beta/2)(x/N) exp(-beta x/2)."""
    if x <= 0:
        return TwoTerm(0.0, 0.0, 0.0, 0.0)
    e = math.exp(-beta * x / 2)
    lead = 1.0 - e
    corr = (1 + alpha2 - beta / 2) * x / N * e
    raw = lead + corr
    return TwoTerm(lead, corr, _clamp(raw), raw)


def cdf_alpha1_zero_exact(beta: float, alpha2: float, N: int, x: float) -> float:
    """alpha1 = 0 finite-N law 1 - (1 - x/N^2)^{N(1+alpha2+(N-1)beta/2)} on the hard-edge scale."""
    if x <= 0:
        return 0.0
    if x >= N * N:
        return 1.0
    expo = N * (1 + alpha2 + (N - 1) * beta / 2)
    return -math.expm1(expo * math.log1p(-x / N ** 2))


def cdf_alpha1_one_bessel(beta: float, alpha2: float, N: int, x: float) -> TwoTerm:
    """alpha1 = 1 two-term law written with I_{2/beta - 1} and I_{2/beta + 1}."""
    if x <= 0:
        return TwoTerm(0.0, 0.0, 0.0, 0.0)
    z = 2 * math.sqrt(x)
    g = math.gamma(2 / beta)
    e = math.exp(-beta * x / 2)
    lead = 1.0 - e * g * x ** (0.5 - 1 / beta) * bessel_i(2 / beta - 1, z)
    corr = x ** (1.5 - 1 / beta) / N * e * (2 + alpha2 - beta / 2) * g * bessel_i(2 / beta + 1, z)
    raw = lead + corr
    return TwoTerm(lead, corr, _clamp(raw), raw)


def survival_alpha1_one_jacobi(beta: float, alpha2: float, N: int, xi: float) -> float:
    """alpha1 = 1 survival P(phi_1 > xi) through a single monic Jacobi polynomial of degree N."""
    if xi <= 0:
        return 1.0
    if xi >= 1:
        return 0.0
    y = -xi / (1 - xi)
    head = N * (2 + alpha2 + (N - 1) * beta / 2) * math.log1p(-xi)
    s1, l1 = log_pochhammer(N + 2 * (alpha2 + 2) / beta - 1, N)
    s2, l2 = log_pochhammer(2 / beta, N)
    pj = monic_jacobi(N, y, 2 / beta - 1, 2 * (alpha2 + 1) / beta - 1)
    return (-1) ** N * s1 * s2 * math.exp(head + l1 - l2) * pj


def survival_alpha1_one_classical(beta: float, alpha2: float, N: int, xi: float) -> float:
    """alpha1 = 1 survival from the one-variable terminating 2F1."""
    if xi <= 0:
        return 1.0
    if xi >= 1:
        return 0.0
    head = N * (1 + alpha2 + (N - 1) * beta / 2) * math.log1p(-xi)
    f = classical_hyp(2, 1, [-N, 1 - N - 2 * (alpha2 + 1) / beta], [2 / beta], xi)
    return math.exp(head) * f


def log_jacobi_value_at_zero(p: EnsembleParams):
    """(sign, log|P_{(N^alpha1)}(0)|) for the multivariate Jacobi polynomial, product form."""
    n = _require_int(p.alpha1, "alpha1")
    N, beta, a2 = p.N, p.beta, p.alpha2
    sign = (-1) ** (N * n)
    lv = math.lgamma(n + 1) + math.lgamma(N * n + 1) - math.lgamma(N)
    s, v = log_pochhammer(1 + 2 * n / beta, N - 1)
    sign *= s
    lv += v
    s, v = log_pochhammer(N * beta / 2, n)
    sign *= s
    lv -= v
    for i in range(1, n + 1):
        s, v = log_pochhammer(N - 1 + 2 * (a2 + 1 + i) / beta, N)
        sign *= s
        lv -= v
    return sign, lv


def log_jacobi_value_at_zero_jue(N: int, alpha1, alpha2: float):
    """beta = 2 simplification (-1)^{N alpha1} (N alpha1)! / prod_i (N+alpha2+i)_N."""
    n = _require_int(alpha1, "alpha1")
    sign = (-1) ** (N * n)
    lv = math.lgamma(N * n + 1)
    for i in range(1, n + 1):
        s, v = log_pochhammer(N + alpha2 + i, N)
        sign *= s
        lv -= v
    return sign, lv


def jacobi_poly_representation(p: EnsembleParams, xi: float) -> float:
    """P(phi_1 > xi) as a ratio P_{(N^alpha1)}(-xi/(1-xi)) / P_{(N^alpha1)}(0).

    The numerator is the un-transformed 2F1^(beta/2)(-N, 2(alpha1+alpha2+1)/beta + N - 1;
    2 alpha1/beta; y 1^alpha1) at y = -xi/(1-xi), scaled to the Jacobi
    polynomial by generalised Pochhammer symbols of the rectangle (N^alpha1);
    the denominator uses the closed product form.
    """
    n = _check_exact(p)
    if xi <= 0:
        return 1.0
    if xi >= 1:
        return 0.0
    N, beta, sigma = p.N, p.beta, p.beta / 2
    head = N * (1 + n + p.alpha2 + (N - 1) * beta / 2) * math.log1p(-xi)
    if n == 0:
        return math.exp(head)
    upper_b = 2 * (n + p.alpha2 + 1) / beta + N - 1
    lower = 2 * n / beta
    y = -xi / (1 - xi)
    s_f, l_f, _ = mhg_equal_args_log(HypergeomSpec((-N, upper_b), (lower,), sigma, n), y)
    rect = [N] * n
    s1, l1 = log_gen_pochhammer(lower, rect, sigma)
    s2, l2 = log_gen_pochhammer(-N, rect, sigma)
    s3, l3 = log_gen_pochhammer(upper_b, rect, sigma)
    l_poly = l_f + l1 + math.lgamma(N * n + 1) - l2 - l3
    s_poly = s_f * s1 * s2 * s3
    s0, l0 = log_jacobi_value_at_zero(p)
    return s_poly * s0 * math.exp(head + l_poly - l0)


def recentred_form(p: EnsembleParams, x: float) -> float:
    """Limit law evaluated at x (1 + ((2/beta)(alpha1+alpha2+1) - 1)/N)."""
    a1 = _require_int(p.alpha1, "alpha1", "the recentred law")
    shift = 1 + ((2 / p.beta) * (a1 + p.alpha2 + 1) - 1) / p.N
    return cdf_limit(a1, p.beta, x * shift)


def _thread_count() -> int:
    env = os.environ.get("JACOBI_EDGE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


@dataclass
class EdgeCurve:
    """Tabulated CDF; each row is (abscissa, leading, correction, total, exact)."""

    params: EnsembleParams
    which_edge: str
    scale: str
    mode: str
    points: list = field(default_factory=list)

    COLUMNS = ("x_or_xi", "leading", "correction", "total", "exact")

    def as_array(self) -> np.ndarray:
        return np.array([[np.nan if v is None else v for v in row] for row in self.points], dtype=float)

    def column(self, name: str) -> np.ndarray:
        return self.as_array()[:, self.COLUMNS.index(name)]


MODES = ("exact", "two-term", "limit", "jue-det", "recentred")


def _validate_mode(p: EnsembleParams, mode: str, edge: str):
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if edge not in ("smallest", "largest"):
        raise ValueError(f"unknown edge {edge!r}")
    q = p if edge == "smallest" else p.swapped()
    name = "alpha1" if edge == "smallest" else "alpha2"
    if mode in ("exact", "jue-det"):
        _require_int(q.alpha1, name, f"{mode} mode")
        if q.N > MAX_EXACT_N or q.alpha1 > MAX_EXACT_ALPHA1:
            raise EnvelopeError(
                f"{mode} mode supports N <= {MAX_EXACT_N} and {name} <= {MAX_EXACT_ALPHA1}; "
                "use the two-term mode for larger sizes"
            )
    else:
        _require_int(q.alpha1, name, f"{mode} mode")
    if mode == "jue-det" and p.beta != 2:
        raise ModeMismatchError("jue-det mode needs beta = 2")
    return q


def _row(q: EnsembleParams, mode: str, edge: str, x: float):
    """One table row on the hard-edge scale, reported as a CDF of the chosen edge."""
    xi = x / q.N ** 2
    exact = None
    if mode in ("exact", "two-term"):
        t = cdf_two_term(q, x)
        lead, corr, total = t.leading, t.correction, t.total
        if mode == "exact":
            exact = cdf_exact(q, xi) if xi < 1 else 1.0
    elif mode == "limit":
        lead = cdf_limit(int(q.alpha1), q.beta, x)
        corr, total = 0.0, lead
    elif mode == "recentred":
        lead = cdf_limit(int(q.alpha1), q.beta, x)
        total = recentred_form(q, x)
        corr = total - lead
    else:
        t = cdf_two_term_jue_bessel(int(q.alpha1), q.alpha2, q.N, x)
        lead, corr, total = t.leading, t.correction, t.total
        exact = cdf_exact_jue_determinant(q, xi) if xi < 1 else 1.0
    if edge == "largest":
        # P(phi_N <= 1 - x/N^2) is the survival of the mirrored smallest eigenvalue
        lead, corr, total = 1.0 - lead, -corr, 1.0 - total
        exact = None if exact is None else 1.0 - exact
    return (float(x), lead, corr, total, exact)


def tabulate_curve(
    p: EnsembleParams,
    mode: str = "two-term",
    grid: Optional[Sequence[float]] = None,
    edge: str = "smallest",
    threads: Optional[int] = None,
) -> EdgeCurve:
    """Tabulate a law on the hard-edge grid (default 201 points on [0, 10])."""
    q = _validate_mode(p, mode, edge)
    xs = np.linspace(0.0, 10.0, 201) if grid is None else np.asarray(grid, dtype=float)
    workers = threads or _thread_count()
    if workers > 1 and len(xs) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda x: _row(q, mode, edge, x), xs))
    else:
        rows = [_row(q, mode, edge, x) for x in xs]
    return EdgeCurve(p, edge, "hard-edge", mode, rows)
