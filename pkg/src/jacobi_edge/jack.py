"""Jack polynomials C_lambda^(sigma) in the C-normalization.

Two evaluation routes are provided:

* a monomial-basis route that builds each polynomial as an eigenvector of
  the operator D2 by back-substitution over dominance order and then fixes
  the normalization sum_{|lambda|=k} C_lambda = p_1^k by a triangular
  solve.  Works with floats or, when ``sigma`` is a Fraction, exactly.
* a product formula for C_lambda(1^n), used by every equal-argument series.

The monomial route is limited to small n and weights; it is the oracle that
certifies the product formula.
"""

from __future__ import annotations

import itertools
import math
import threading
from fractions import Fraction
from typing import Dict, Iterable, Sequence

import numpy as np

from .partitions import (
    Partition,
    conjugate,
    dominates,
    enumerate_partitions,
    rho_lambda,
)

__all__ = [
    "MAX_MONOMIAL_VARS",
    "MAX_MONOMIAL_WEIGHT",
    "DegenerateEigenvalueError",
    "JackTable",
    "jack_monomial_expansion",
    "jack_at_ones",
    "jack_equal_args",
    "jack_at",
    "monomial_at",
    "monomial_at_ones",
    "schur_at",
    "apply_d2",
]

MAX_MONOMIAL_VARS = 8
MAX_MONOMIAL_WEIGHT = 40


class DegenerateEigenvalueError(ArithmeticError):
    """Two comparable partitions share a D2 eigenvalue."""


def _d2_eigenvalue(lam, sigma, n):
    return rho_lambda(lam, sigma, n) + 2 * (n - 1) * sum(lam) / sigma


def _multinomial(lam) -> int:
    out = math.factorial(sum(lam))
    for p in lam:
        out //= math.factorial(p)
    return out


def _raise_pairs(nu: tuple):
    """Yield (kappa, p - q) for every two-row move that spreads ``nu``.

    ``nu`` is padded to n entries.  For rows i < j and p > nu_i with
    p + q = nu_i + nu_j, the off-diagonal coefficient of m_nu in
    D2 m_kappa is (2/sigma)(p - q).
    """
    n = len(nu)
    for i in range(n):
        for j in range(i + 1, n):
            s = nu[i] + nu[j]
            for p in range(nu[i] + 1, s + 1):
                q = s - p
                kappa = list(nu)
                kappa[i], kappa[j] = p, q
                yield Partition(sorted(kappa, reverse=True)), p - q


class JackTable:
    """Cache of monomial expansions keyed by (weight, n, sigma, type of sigma).

    The type is part of the key because Fraction(1, 2) == 0.5 hashes alike
    but an exact layer must not be served from a floating-point one.

    Insertions are guarded by a lock; a duplicate computation under a race
    is harmless because the result is deterministic.
    """

    def __init__(self):
        self._layers: Dict[tuple, Dict[Partition, Dict[Partition, object]]] = {}
        self._lock = threading.Lock()

    def layer(self, k: int, n: int, sigma) -> Dict[Partition, Dict[Partition, object]]:
        key = (k, n, sigma, type(sigma))
        found = self._layers.get(key)
        if found is not None:
            return found
        computed = _build_layer(k, n, sigma)
        with self._lock:
            return self._layers.setdefault(key, computed)

    def clear(self):
        with self._lock:
            self._layers.clear()


_TABLE = JackTable()


def _build_layer(k: int, n: int, sigma) -> Dict[Partition, Dict[Partition, object]]:
    if n > MAX_MONOMIAL_VARS or k > MAX_MONOMIAL_WEIGHT:
        raise ValueError(
            f"monomial route limited to n <= {MAX_MONOMIAL_VARS}, "
            f"weight <= {MAX_MONOMIAL_WEIGHT}"
        )
    exact = isinstance(sigma, Fraction)
    zero = Fraction(0) if exact else 0.0
    one = Fraction(1) if exact else 1.0
    parts = enumerate_partitions(k, n)
    padded = [p.padded(n) for p in parts]
    two_over = 2 / sigma

    monic = {}
    for idx, lam in enumerate(parts):
        e_lam = _d2_eigenvalue(lam, sigma, n)
        coeffs = {lam: one}
        for nu, nu_pad in zip(parts[idx + 1:], padded[idx + 1:]):
            rhs = zero
            for kappa, weight in _raise_pairs(nu_pad):
                c = coeffs.get(kappa)
                if c:
                    rhs += weight * c
            if not rhs:
                continue
            gap = e_lam - _d2_eigenvalue(nu, sigma, n)
            if gap == 0:
                raise DegenerateEigenvalueError(
                    f"D2 eigenvalue of {nu} coincides with {lam} at sigma={sigma}"
                )
            coeffs[nu] = two_over * rhs / gap
        monic[lam] = coeffs

    # sum_lambda c_lambda * monic_lambda = p_1^k, solved top-down in dominance.
    scale = {}
    for lam in parts:
        target = _multinomial(lam) * one
        for kappa, c in scale.items():
            target -= c * monic[kappa].get(lam, zero)
        scale[lam] = target
    return {
        lam: {mu: scale[lam] * b for mu, b in monic[lam].items()} for lam in parts
    }


def jack_monomial_expansion(lam: Iterable[int], n: int, sigma) -> Dict[Partition, object]:
    """Coefficients b_{mu,lambda} of C_lambda^(sigma) in the monomial basis.

    Pass ``sigma`` as a :class:`fractions.Fraction` for exact rational
    coefficients.
    """
    lam = Partition(lam)
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    return _TABLE.layer(lam.weight, n, sigma)[lam]


def monomial_at_ones(mu: Iterable[int], n: int) -> int:
    """m_mu(1^n) = n! / (prod_k mult_k! (n - l(mu))!)."""
    mu = Partition(mu)
    if len(mu) > n:
        return 0
    out = math.factorial(n) // math.factorial(n - len(mu))
    for _, grp in itertools.groupby(mu):
        out //= math.factorial(len(list(grp)))
    return out


def _distinct_permutations(items: Sequence[int]):
    items = sorted(items)
    yield tuple(items)
    while True:
        i = len(items) - 2
        while i >= 0 and items[i] >= items[i + 1]:
            i -= 1
        if i < 0:
            return
        j = len(items) - 1
        while items[j] <= items[i]:
            j -= 1
        items[i], items[j] = items[j], items[i]
        items[i + 1:] = reversed(items[i + 1:])
        yield tuple(items)


def monomial_at(mu: Iterable[int], x: Sequence) -> object:
    mu = Partition(mu)
    n = len(x)
    if len(mu) > n:
        return 0
    total = 0
    for expo in _distinct_permutations(mu.padded(n)):
        term = 1
        for xi, e in zip(x, expo):
            if e:
                term *= xi ** e
        total += term
    return total


def jack_at(lam: Iterable[int], x: Sequence, sigma) -> object:
    """C_lambda^(sigma)(x) from the monomial expansion."""
    expansion = jack_monomial_expansion(lam, len(x), sigma)
    return sum(b * monomial_at(mu, x) for mu, b in expansion.items())


def jack_at_ones(lam: Iterable[int], n: int, sigma, method: str = "product"):
    """C_lambda^(sigma)(1^n).

    ``method="product"`` uses

        sigma^k k! prod_{(i,j)} (n - (i-1) + sigma (j-1))
        / prod_s (sigma a(s) + l(s) + 1)(sigma a(s) + l(s) + sigma)

    with arm a(s) and leg l(s).  ``method="monomial"`` sums the monomial
    expansion at 1^n.
    """
    lam = Partition(lam)
    if len(lam) > n:
        return 0
    if method == "monomial":
        expansion = jack_monomial_expansion(lam, n, sigma)
        return sum(b * monomial_at_ones(mu, n) for mu, b in expansion.items())
    if method != "product":
        raise ValueError(f"unknown method {method!r}")
    k = lam.weight
    conj = conjugate(lam)
    num = sigma ** k * math.factorial(k)
    den = 1
    for i, row in enumerate(lam):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            num *= n - i + sigma * j
            den *= (sigma * arm + leg + 1) * (sigma * arm + leg + sigma)
    return num / den


def jack_equal_args(lam: Iterable[int], n: int, sigma, x):
    """C_lambda^(sigma)(x 1^n), by homogeneity x^|lambda| C_lambda(1^n)."""
    lam = Partition(lam)
    if len(lam) > n:
        raise ValueError(f"{lam} has more than {n} parts")
    if lam.weight == 0:
        return 1.0
    return x ** lam.weight * jack_at_ones(lam, n, sigma)


def schur_at(lam: Iterable[int], x: Sequence[float], rtol: float = 1e-8) -> float:
    """Schur polynomial via the bialternant det(x_j^{lam_i+n-i}) / det(x_j^{n-i}).

    Raises ValueError when two entries are closer than ``rtol`` relative to
    the largest entry, where the ratio is ill-conditioned.
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    lam = Partition(lam)
    if len(lam) > n:
        return 0.0
    scale = max(np.max(np.abs(x)), 1e-300)
    for i in range(n):
        for j in range(i + 1, n):
            if abs(x[i] - x[j]) <= rtol * scale:
                raise ValueError("schur_at needs pairwise distinct entries")
    lp = lam.padded(n)
    num = np.array([[xj ** (lp[i] + n - 1 - i) for xj in x] for i in range(n)])
    den = np.array([[xj ** (n - 1 - i) for xj in x] for i in range(n)])
    return float(np.linalg.det(num) / np.linalg.det(den))


def apply_d2(expansion: Dict[Partition, object], n: int, sigma) -> Dict[Partition, object]:
    """Apply D2 to a symmetric polynomial given in the monomial basis.

    Exact polynomial algebra: the result is again a monomial expansion.
    Used to check the eigenrelation independently of the construction.
    """
    out: Dict[Partition, object] = {}
    weights = {sum(mu) for mu in expansion}
    for k in weights:
        for nu in enumerate_partitions(k, n):
            nu_pad = nu.padded(n)
            diag = sum(p * (p - 1) for p in nu_pad)
            total = diag * expansion.get(nu, 0)
            acc = 0
            for i in range(n):
                for j in range(i + 1, n):
                    # max(nu_i, nu_j) term from the diagonal pair
                    acc += nu_pad[i] * expansion.get(nu, 0)
            for kappa, w in _raise_pairs(nu_pad):
                acc += w * expansion.get(kappa, 0)
            total += 2 * acc / sigma
            if total:
                out[nu] = total
    return out


def _check_triangular(lam: Partition, expansion) -> bool:
    return all(dominates(lam, mu) for mu in expansion)
