"""Multivariate hypergeometric series pFq^(sigma) and their Bessel forms.

Equal-argument series are summed by a depth-first walk over partitions
inside an n x M box.  Each term factorises into per-row tables (box factors
and a row share of the hook product) and per-pair tables (the remaining
hook correction), so the walk only adds table entries.  The walk runs in
the compiled kernel when it is available.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from . import _backend
from .jack import MAX_MONOMIAL_WEIGHT, jack_at
from .partitions import enumerate_partitions, gen_pochhammer
from .special import bessel_i, log_abs_gamma, gamma_sign

__all__ = [
    "HypergeomSpec",
    "SeriesDiagnostics",
    "SeriesDivergenceError",
    "LowerParameterPoleError",
    "TruncationError",
    "mhg_equal_args",
    "mhg_equal_args_log",
    "mhg_layers",
    "mhg_euler",
    "mhg_general_args",
    "hyp0f1",
    "hyp2f1",
    "pfaff_transform",
    "classical_hyp",
    "bessel_determinant_equal",
    "bessel_determinant_general",
]

DEFAULT_EPS = 1e-14
DEFAULT_MAX_WEIGHT = 200
_START_WEIGHT = 32


class SeriesDivergenceError(ArithmeticError):
    """The requested series does not converge at the given argument."""


class LowerParameterPoleError(ZeroDivisionError):
    """A lower parameter b - (i-1)/sigma hits a nonpositive integer inside the sum."""


class TruncationError(ArithmeticError):
    """The maximum weight was reached before the tail fell below tolerance."""


def _nonpos_int(v: float) -> bool:
    return v <= 0 and float(v).is_integer()


@dataclass(frozen=True)
class HypergeomSpec:
    """Parameters of pFq^(sigma)(upper; lower; x) in n variables.

    ``eps`` and ``max_weight`` drive truncation of non-terminating series;
    a terminating series (some upper parameter equal to -m) is summed
    exactly over parts <= m.
    """

    upper: tuple
    lower: tuple
    sigma: float
    n: int
    eps: float = DEFAULT_EPS
    max_weight: int = DEFAULT_MAX_WEIGHT

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))
        if not self.sigma > 0:
            raise ValueError("sigma must be positive")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @property
    def terminating_degree(self) -> Optional[int]:
        degs = [int(-a) for a in self.upper if _nonpos_int(a)]
        return min(degs) if degs else None


@dataclass
class SeriesDiagnostics:
    terminating: bool
    max_part: int
    weight_reached: int
    n_terms: int
    n_negative: int
    converged: bool
    tail: float = 0.0
    backend: str = field(default_factory=lambda: _backend.BACKEND_NAME)


def _tables(spec: HypergeomSpec, x: float, M: int):
    """Row, sign and pair tables for the partition walk with parts <= M."""
    n, sig = spec.n, spec.sigma
    width = M + 1
    row = np.zeros((n, width))
    sign = np.ones((n, width), dtype=np.int8)
    lx = math.log(abs(sig * x))
    xneg = x < 0
    for i in range(n):
        shift = i / sig
        acc, s, dead = 0.0, 1, False
        for j in range(M):
            if dead:
                sign[i, j + 1] = 0
                continue
            num = 1.0
            for a in spec.upper:
                num *= a - shift + j
            den = 1.0
            for b in spec.lower:
                den *= b - shift + j
            if num == 0.0:
                dead = True
                sign[i, j + 1] = 0
                continue
            if den == 0.0:
                raise LowerParameterPoleError(
                    f"lower parameter pole at row {i + 1}, column {j + 1}"
                )
            f = num / den * (n - i + sig * j)
            if f < 0:
                s = -s
            if xneg:
                s = -s
            acc += math.log(abs(f)) + lx
            row[i, j + 1] = acc
            sign[i, j + 1] = s
    # G_m(d) = sum_{a<d} log((sigma a + m + 1)(sigma a + m + sigma))
    g = np.zeros((max(n, 1), width))
    for m in range(n):
        a = np.arange(M)
        g[m, 1:] = np.cumsum(np.log((sig * a + m + 1) * (sig * a + m + sig)))
    for i in range(n):
        row[i] -= g[n - 1 - i]
    pair = np.zeros((max(n, 1), width))
    for r in range(1, n):
        pair[r] = g[r - 1] - g[r]
    return row, sign, pair


def _run(spec: HypergeomSpec, x: float, kmax: int, M: int, backend=None):
    kern = _backend.get_backend(backend)
    row, sign, pair = _tables(spec, x, M)
    caps = np.full(spec.n, M, dtype=np.int32)
    return kern.partition_layers(row, sign, pair, caps, kmax)


def _layers(spec: HypergeomSpec, x: float, backend=None):
    """(scaled, log_scale, diagnostics) for the series at x 1^n."""
    deg = spec.terminating_degree
    if x == 0 or spec.n == 0:
        diag = SeriesDiagnostics(True, 0, 0, 1, 0, True)
        return np.ones(1), np.zeros(1), diag
    if deg is not None:
        kmax = deg * spec.n
        scaled, logs, nneg, nterms = _run(spec, x, kmax, deg, backend)
        diag = SeriesDiagnostics(True, deg, kmax, nterms, nneg, True)
        return scaled, logs, diag
    if len(spec.upper) > len(spec.lower) + 1:
        raise SeriesDivergenceError("p > q + 1 without a terminating parameter")
    kmax = min(_START_WEIGHT, spec.max_weight)
    while True:
        scaled, logs, nneg, nterms = _run(spec, x, kmax, kmax, backend)
        layer = _combine_layers(scaled, logs)
        top = np.max(np.abs(layer[:-3])) if len(layer) > 3 else 0.0
        total = abs(math.fsum(layer))
        tail = float(np.max(np.abs(layer[-3:]))) if len(layer) >= 3 else 0.0
        ref = max(total, 1e-300)
        if tail <= spec.eps * ref and np.isfinite(top):
            diag = SeriesDiagnostics(False, kmax, kmax, nterms, nneg, True, tail / ref)
            return scaled, logs, diag
        if kmax >= spec.max_weight:
            raise TruncationError(
                f"tail {tail / ref:.3g} above eps={spec.eps} at weight {kmax}"
            )
        kmax = min(2 * kmax, spec.max_weight)


def _combine_layers(scaled, logs):
    with np.errstate(over="ignore"):
        return scaled * np.exp(logs)


def mhg_equal_args_log(spec: HypergeomSpec, x: float, backend=None):
    """(sign, log|F|, diagnostics) for pFq^(sigma)(...; x 1^n)."""
    scaled, logs, diag = _layers(spec, x, backend)
    live = scaled != 0
    if not np.any(live):
        return 0, -math.inf, diag
    top = float(np.max(logs[live]))
    vals = scaled[live] * np.exp(logs[live] - top)
    total = math.fsum(vals)
    if total == 0:
        return 0, -math.inf, diag
    return (1 if total > 0 else -1), math.log(abs(total)) + top, diag


def mhg_equal_args(spec: HypergeomSpec, x: float, backend=None, diagnostics=False):
    """pFq^(sigma)(upper; lower; x 1^n).

    Returns the value, or (value, diagnostics) when ``diagnostics`` is set.
    """
    s, lv, diag = mhg_equal_args_log(spec, x, backend)
    val = 0.0 if s == 0 else s * math.exp(lv)
    return (val, diag) if diagnostics else val


def mhg_layers(spec: HypergeomSpec, x: float, backend=None) -> np.ndarray:
    """Per-weight partial sums; entry k collects all |lambda| = k terms."""
    scaled, logs, _ = _layers(spec, x, backend)
    return _combine_layers(scaled, logs)


def mhg_euler(spec: HypergeomSpec, x: float, backend=None) -> float:
    """x d/dx of the series at x 1^n, i.e. E_1 applied along the diagonal."""
    layers = mhg_layers(spec, x, backend)
    return math.fsum(k * v for k, v in enumerate(layers))


def hyp0f1(c: float, x: float, sigma: float, n: int, **kw) -> float:
    return mhg_equal_args(HypergeomSpec((), (c,), sigma, n), x, **kw)


def hyp2f1(a: float, b: float, c: float, x: float, sigma: float, n: int, **kw) -> float:
    return mhg_equal_args(HypergeomSpec((a, b), (c,), sigma, n), x, **kw)


def mhg_general_args(spec: HypergeomSpec, x: Sequence[float]) -> float:
    """Series at a general argument vector via monomial-basis Jack polynomials.

    Oracle path for up to four variables.
    """
    x = [float(v) for v in x]
    n = len(x)
    if n != spec.n:
        raise ValueError(f"spec has n={spec.n} but x has {n} entries")
    if n > 4:
        raise ValueError("general-argument path limited to n <= 4")
    if not any(x):
        return 1.0
    deg = spec.terminating_degree
    kmax = deg * n if deg is not None else min(spec.max_weight, MAX_MONOMIAL_WEIGHT)
    total = 1.0
    quiet = 0
    for k in range(1, kmax + 1):
        layer = 0.0
        for lam in enumerate_partitions(k, n, deg):
            num = 1.0
            for a in spec.upper:
                num *= gen_pochhammer(a, lam, spec.sigma)
            if num == 0:
                continue
            den = 1.0
            for b in spec.lower:
                den *= gen_pochhammer(b, lam, spec.sigma)
            if den == 0:
                raise LowerParameterPoleError(f"pole at partition {tuple(lam)}")
            layer += num / den / math.factorial(k) * jack_at(lam, x, spec.sigma)
        total += layer
        if deg is None:
            quiet = quiet + 1 if abs(layer) <= spec.eps * abs(total) else 0
            if quiet >= 3:
                return total
    if deg is None:
        raise TruncationError(f"general-argument series not converged by weight {kmax}")
    return total


def pfaff_transform(a: float, b: float, c: float, sigma: float, n: int, x: float, backend=None) -> float:
    """Right side of the Pfaff-type map for 2F1^(sigma).

    Returns (1-x)^{-a n} 2F1^(sigma)(a, c-b; c; -x/(1-x) 1^n), which equals
    2F1^(sigma)(a, b; c; x 1^n); unconditional when a is a nonpositive integer.
    """
    if x == 1:
        raise ZeroDivisionError("Pfaff transform is singular at x = 1")
    y = -x / (1 - x)
    s, lv, _ = mhg_equal_args_log(HypergeomSpec((a, c - b), (c,), sigma, n), y, backend)
    if s == 0:
        return 0.0
    return s * math.exp(lv - a * n * math.log1p(-x))


def classical_hyp(p: int, q: int, uppers: Sequence[float], lowers: Sequence[float], z: float,
                  eps: float = 1e-16, max_terms: int = 100000) -> float:
    """One-variable pFq by direct power series with relative-tail truncation."""
    uppers, lowers = list(uppers), list(lowers)
    if len(uppers) != p or len(lowers) != q:
        raise ValueError("parameter counts do not match p, q")
    terminating = any(_nonpos_int(a) for a in uppers)
    if not terminating:
        if p > q + 1 and z != 0:
            raise SeriesDivergenceError("p > q + 1: zero radius of convergence")
        if p == q + 1 and abs(z) >= 1:
            raise SeriesDivergenceError("|z| >= 1 outside the disc of convergence")
    total, term = 1.0, 1.0
    quiet = 0
    for k in range(max_terms):
        num = 1.0
        for a in uppers:
            num *= a + k
        den = 1.0
        for b in lowers:
            den *= b + k
        if num == 0:
            return total
        if den == 0:
            raise LowerParameterPoleError(f"lower parameter pole at k={k}")
        term *= num / den * z / (k + 1)
        total += term
        if abs(term) <= eps * abs(total):
            quiet += 1
            if quiet >= 2:
                return total
        else:
            quiet = 0
    raise TruncationError("classical series did not converge")


def _gamma_prod_log(vals):
    sign, acc = 1, 0.0
    for v in vals:
        s = gamma_sign(v)
        if s == 0:
            raise LowerParameterPoleError(f"Gamma pole at {v}")
        sign *= s
        acc += log_abs_gamma(v)
    return sign, acc


def bessel_determinant_equal(c: float, n: int, x: float, sigma: float = 1.0) -> float:
    """0F1^(1)(; c; x 1^n) as a determinant of I-Bessel functions.

    x^{n(n-c)/2} prod_i Gamma(c+1-i) / prod_{j<n} j! * det(I_{c-n+j-i}(2 sqrt x)).
    Returns 1 at x = 0.
    """
    if sigma != 1:
        raise ValueError("the Bessel determinant holds at sigma = 1 only")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if n == 0 or x == 0:
        return 1.0
    s, lg = _gamma_prod_log([c + 1 - i for i in range(1, n + 1)])
    lg -= sum(math.lgamma(j + 1) for j in range(1, n))
    z = 2 * math.sqrt(x)
    mat = np.array([[bessel_i(c - n + j - i, z) for j in range(1, n + 1)] for i in range(1, n + 1)])
    ds, dl = np.linalg.slogdet(mat)
    if ds == 0:
        return 0.0
    return s * ds * math.exp(lg + dl + n * (n - c) / 2 * math.log(x))


def bessel_determinant_general(c: float, x: Sequence[float], rtol: float = 1e-10) -> float:
    """0F1^(1)(; c; x) at distinct positive entries as a Bessel determinant.

    (-1)^{floor(n/2)} prod Gamma(c+1-i) prod x_i^{n-c/2} / Delta(x)
    * det(x_j^{-i/2} I_{c+i-2n}(2 sqrt x_j)), Delta(x) = prod_{i<j}(x_j - x_i).
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    if n == 0:
        return 1.0
    if np.any(x <= 0):
        raise ValueError("entries must be positive")
    scale = float(np.max(x))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(x[i] - x[j]) <= rtol * scale:
                raise ValueError("entries must be pairwise distinct")
    s, lg = _gamma_prod_log([c + 1 - i for i in range(1, n + 1)])
    vand = 1.0
    for i in range(n):
        for j in range(i + 1, n):
            vand *= x[j] - x[i]
    mat = np.array(
        [[x[j] ** (-(i + 1) / 2) * bessel_i(c + (i + 1) - 2 * n, 2 * math.sqrt(x[j]))
          for j in range(n)] for i in range(n)]
    )
    pref = (-1) ** (n // 2) * s * math.exp(lg + (n - c / 2) * float(np.sum(np.log(x))))
    return pref * float(np.linalg.det(mat)) / vand
