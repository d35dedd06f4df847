"""Selberg integral and the normalising constant of the smallest-eigenvalue density."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .special import gamma_sign, log_abs_gamma

__all__ = [
    "EnsembleParams",
    "log_selberg_s",
    "selberg_s",
    "log_z_n",
    "z_n",
    "z_n_definition",
    "z_n_asymptotic",
]


@dataclass(frozen=True)
class EnsembleParams:
    """Jacobi beta-ensemble parameters: weight x^alpha1 (1-x)^alpha2, |Delta|^beta."""

    N: int
    beta: float
    alpha1: float
    alpha2: float

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 1:
            raise ValueError(f"N must be a positive integer, got {self.N}")
        object.__setattr__(self, "N", int(self.N))
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not self.alpha1 > -1:
            raise ValueError(f"alpha1 must exceed -1, got {self.alpha1}")
        if not self.alpha2 > -1:
            raise ValueError(f"alpha2 must exceed -1, got {self.alpha2}")

    @property
    def alpha1_int(self) -> bool:
        return float(self.alpha1).is_integer() and self.alpha1 >= 0

    @property
    def alpha2_int(self) -> bool:
        return float(self.alpha2).is_integer() and self.alpha2 >= 0

    def swapped(self) -> "EnsembleParams":
        """Parameters of the mirrored ensemble x -> 1 - x."""
        return EnsembleParams(self.N, self.beta, self.alpha2, self.alpha1)

    @property
    def survival_exponent(self) -> float:
        """N(1 + alpha2 + (N-1) beta/2), the power of (1 - xi) in the survival law."""
        return self.N * (1 + self.alpha2 + (self.N - 1) * self.beta / 2)


def _lg(v, acc):
    s = gamma_sign(v)
    if s == 0:
        raise ZeroDivisionError(f"Gamma pole at {v}")
    acc[0] *= s
    return log_abs_gamma(v)


def log_selberg_s(N: int, a: float, b: float, c: float):
    """(sign, log|S_N(a, b, c)|) with

    S_N = prod_{i<N} Gamma(1+(i+1)c) Gamma(a+ic) Gamma(b+ic) / (Gamma(1+c) Gamma(a+b+(N+i-1)c)).
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    sg = [1]
    total = 0.0
    for i in range(N):
        total += _lg(1 + (i + 1) * c, sg) + _lg(a + i * c, sg) + _lg(b + i * c, sg)
        total -= _lg(1 + c, sg) + _lg(a + b + (N + i - 1) * c, sg)
    return sg[0], total


def selberg_s(N: int, a: float, b: float, c: float) -> float:
    s, lv = log_selberg_s(N, a, b, c)
    return s * math.exp(lv)


def log_z_n(p: EnsembleParams) -> float:
    """log Z_N from the telescoped gamma-ratio form."""
    N, b2, a1, a2 = p.N, p.beta / 2, p.alpha1, p.alpha2
    return (
        math.log(N)
        + math.lgamma(1 + b2)
        + math.lgamma(a1 + 1 + N * b2)
        + math.lgamma(a1 + a2 + 2 + (N - 1) * b2)
        - math.lgamma(1 + N * b2)
        - math.lgamma(a1 + 1)
        - math.lgamma(a1 + 1 + b2)
        - math.lgamma(a2 + 1 + (N - 1) * b2)
    )


def z_n(p: EnsembleParams) -> float:
    """Normalising constant Z_N(alpha1, alpha2, beta) of the smallest-eigenvalue density."""
    return math.exp(log_z_n(p))


def z_n_definition(p: EnsembleParams) -> float:
    """Z_N as N S_{N-1}(alpha1+1+beta, alpha2+1, beta/2) / S_N(alpha1+1, alpha2+1, beta/2)."""
    N, b2 = p.N, p.beta / 2
    s1, l1 = log_selberg_s(N - 1, p.alpha1 + 1 + p.beta, p.alpha2 + 1, b2)
    s2, l2 = log_selberg_s(N, p.alpha1 + 1, p.alpha2 + 1, b2)
    return N * s1 * s2 * math.exp(l1 - l2)


def z_n_asymptotic(alpha1: float, alpha2: float, beta: float, N: int) -> float:
    """Large-N form Gamma(1+beta/2)(beta/2)^{2 alpha1+1} N^{2(alpha1+1)} / (Gamma(1+alpha1)Gamma(1+alpha1+beta/2)).

    ``alpha2`` does not enter the leading term; it is accepted for symmetry
    with :func:`z_n`.
    """
    b2 = beta / 2
    return math.exp(
        math.lgamma(1 + b2)
        + (2 * alpha1 + 1) * math.log(b2)
        + 2 * (alpha1 + 1) * math.log(N)
        - math.lgamma(1 + alpha1)
        - math.lgamma(1 + alpha1 + b2)
    )
