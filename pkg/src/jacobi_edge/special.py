"""Scalar special functions: modified Bessel I, gamma helpers, monic Jacobi.

Gamma values come from :func:`math.lgamma`; everything else is evaluated
here so that each routine can be checked against an independent oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "bessel_i",
    "log_gamma",
    "gamma_sign",
    "log_abs_gamma",
    "rgamma",
    "gamma_ratio",
    "gamma_ratio_asymptote",
    "beta_fn",
    "MonicJacobiParams",
    "monic_jacobi",
    "monic_jacobi_direct",
    "monic_jacobi_derivative",
]

BESSEL_ASYMPTOTIC_Z = 40.0
BESSEL_MAX_Z = 700.0


def _is_nonpos_int(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def gamma_sign(x: float) -> int:
    """Sign of Gamma(x); 0 at the poles."""
    if x > 0:
        return 1
    if _is_nonpos_int(x):
        return 0
    return -1 if math.floor(x) % 2 else 1


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0."""
    if not x > 0:
        raise ValueError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def log_abs_gamma(x: float) -> float:
    if _is_nonpos_int(x):
        return math.inf
    return math.lgamma(x)


def rgamma(x: float) -> float:
    """1/Gamma(x), zero at the poles."""
    s = gamma_sign(x)
    if s == 0:
        return 0.0
    return s * math.exp(-math.lgamma(x))


def gamma_ratio(a: float, b: float, z: float, c: float = 1.0) -> float:
    """Gamma(a + c z) / Gamma(b + c z) via log-gamma."""
    u, v = a + c * z, b + c * z
    s = gamma_sign(u) * gamma_sign(v)
    if gamma_sign(v) == 0:
        raise ZeroDivisionError("Gamma pole in the denominator")
    if s == 0:
        return 0.0
    return s * math.exp(math.lgamma(u) - math.lgamma(v))


def gamma_ratio_asymptote(a: float, b: float, z: float, c: float = 1.0) -> float:
    """Large-z form (c z)^(a - b) of :func:`gamma_ratio`."""
    return (c * z) ** (a - b)


def beta_fn(a: float, b: float) -> float:
    return math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))


def _bessel_series(nu: float, z: float) -> float:
    half = 0.5 * z
    lh = math.log(half)
    total = 0.0
    peak = 0.0
    k = 0
    # the series peaks near k ~ z/2; stop once past it and negligible
    while True:
        s = gamma_sign(nu + k + 1)
        if s != 0:
            term = s * math.exp((nu + 2 * k) * lh - math.lgamma(k + 1) - math.lgamma(nu + k + 1))
            total += term
            peak = max(peak, abs(term))
            if k > half and abs(term) <= 1e-17 * abs(total):
                break
        k += 1
        if k > 5000:
            raise ArithmeticError("Bessel series failed to converge")
    return total


def _bessel_asymptotic(nu: float, z: float) -> float:
    mu = 4.0 * nu * nu
    total = 1.0
    term = 1.0
    prev = math.inf
    for k in range(1, 60):
        term *= -(mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        if abs(term) >= prev:
            break
        total += term
        prev = abs(term)
        if abs(term) < 1e-17:
            break
    return math.exp(z) / math.sqrt(2 * math.pi * z) * total


def bessel_i(nu: float, z: float, method: str = "auto") -> float:
    """Modified Bessel function I_nu(z) for real order and z >= 0.

    Integer orders satisfy I_{-n} = I_n, which the power series with
    1/Gamma(nu+k+1) vanishing at the poles produces automatically.  For
    z > 40 with nu^2 <= z/4 the Hankel expansion is used.
    """
    nu = float(nu)
    z = float(z)
    if z < 0:
        raise ValueError("bessel_i needs z >= 0")
    if z > BESSEL_MAX_Z:
        raise OverflowError(f"I_nu({z}) overflows double precision")
    if z == 0.0:
        if nu == 0.0:
            return 1.0
        if nu > 0 or nu == math.floor(nu):
            return 0.0
        return math.copysign(math.inf, rgamma(nu + 1))
    if nu < 0 and nu == math.floor(nu):
        nu = -nu
    if method == "series":
        return _bessel_series(nu, z)
    if method == "asymptotic":
        return _bessel_asymptotic(nu, z)
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if z > BESSEL_ASYMPTOTIC_Z and nu * nu <= z / 4:
        return _bessel_asymptotic(nu, z)
    return _bessel_series(nu, z)


@dataclass(frozen=True)
class MonicJacobiParams:
    """Degree m and exponents of the weight x^a (1-x)^b on [0, 1]."""

    m: int
    a: float
    b: float

    def __post_init__(self):
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError("degree must be a nonnegative integer")


def _poch(a, n):
    out = 1.0
    for j in range(n):
        out *= a + j
    return out


def monic_jacobi_direct(m: int, a: float, b: float, x):
    """Finite-sum form of p_m^{a,b}(x), valid for any real a, b without a pole.

    p_m = (-1)^m / (m+a+b+1)_m * sum_k (-m)_k (m+a+b+1)_k (a+1+k)_{m-k} x^k / k!
    """
    norm = _poch(m + a + b + 1, m)
    if norm == 0:
        raise ZeroDivisionError(f"(m+a+b+1)_m vanishes at m={m}, a={a}, b={b}")
    x = np.asarray(x, dtype=float)
    total = np.zeros_like(x)
    for k in range(m, -1, -1):
        coef = _poch(-m, k) * _poch(m + a + b + 1, k) * _poch(a + 1 + k, m - k) / math.factorial(k)
        total = total * x + coef if k < m else np.full_like(x, coef)
    out = (-1) ** m * total / norm
    return float(out) if out.ndim == 0 else out


def _recurrence_coeffs(m, a, b):
    """(A_m, B_m) with p_{m+1} = (x - A_m) p_m - B_m p_{m-1}; None on a 0/0."""
    al, be = b, a
    s = 2 * m + al + be
    if m == 0:
        if al + be + 2 == 0:
            return None
        alpha = (be - al) / (al + be + 2)
        return (1 + alpha) / 2, 0.0
    if s == 0 or s + 2 == 0:
        return None
    alpha = (be * be - al * al) / (s * (s + 2))
    if m == 1:
        if s * s * (s + 1) == 0:
            return None
        bm = 4 * (1 + al) * (1 + be) / (s * s * (s + 1))
    else:
        den = s * s * (s + 1) * (s - 1)
        if den == 0:
            return None
        bm = 4 * m * (m + al) * (m + be) * (m + al + be) / den
    return (1 + alpha) / 2, bm / 4


def monic_jacobi(params, x, a=None, b=None):
    """Monic Jacobi polynomial p_m^{a,b}(x) orthogonal for x^a (1-x)^b on [0, 1].

    Call as ``monic_jacobi(MonicJacobiParams(m, a, b), x)`` or
    ``monic_jacobi(m, x, a, b)``.  Uses the three-term recurrence and falls
    back to the finite sum when a recurrence coefficient is singular, which
    happens only for analytically continued parameters.
    """
    if isinstance(params, MonicJacobiParams):
        m, a, b = params.m, params.a, params.b
    else:
        m = int(params)
        MonicJacobiParams(m, a, b)
    if _poch(m + a + b + 1, m) == 0:
        raise ZeroDivisionError(f"(m+a+b+1)_m vanishes at m={m}, a={a}, b={b}")
    xa = np.asarray(x, dtype=float)
    prev = np.zeros_like(xa)
    cur = np.ones_like(xa)
    for k in range(m):
        c = _recurrence_coeffs(k, a, b)
        if c is None:
            return monic_jacobi_direct(m, a, b, x)
        prev, cur = cur, (xa - c[0]) * cur - c[1] * prev
    return float(cur) if cur.ndim == 0 else cur


def monic_jacobi_derivative(m: int, a: float, b: float, x):
    """d/dx p_m^{a,b}(x) = m p_{m-1}^{a+1,b+1}(x)."""
    if m == 0:
        xa = np.asarray(x, dtype=float)
        out = np.zeros_like(xa)
        return float(out) if out.ndim == 0 else out
    return m * monic_jacobi(m - 1, x, a + 1, b + 1)
