"""Samplers for Jacobi beta-ensemble eigenvalues and the eigensolvers they use.

Two constructions are provided: a tridiagonal model with independent
Beta-distributed canonical-moment variables (any beta > 0) and the
double-Wishart quotient A (A + B)^{-1} for beta in {1, 2}.

Randomness: every draw owns a Philox stream keyed by (seed, batch, draw)
through :class:`numpy.random.SeedSequence`; normals come from
``Generator.standard_normal`` and Beta variates from two
``Generator.standard_gamma`` draws, so output depends only on the key.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal, solve_triangular

from . import _backend
from .selberg import EnsembleParams

__all__ = [
    "METHODS",
    "WANTS",
    "RNG_ALGORITHM",
    "DENSE_MAX_N",
    "TRIDIAG_MAX_N",
    "SamplerConfig",
    "SampleResult",
    "SamplerConfigError",
    "beta_shape_table",
    "tridiagonal_model",
    "sample_killip_nenciu",
    "sample_double_wishart",
    "sample",
    "smallest_eig_tridiag",
    "eig_tridiag",
    "householder_tridiagonal",
    "sym_eig_dense",
    "draw_rng",
]

METHODS = ("killip_nenciu", "double_wishart")
WANTS = ("smallest_only", "all_eigenvalues")
RNG_ALGORITHM = "philox4x64/seedsequence(seed,batch,draw); normal=numpy-ziggurat; gamma=marsaglia-tsang"
DENSE_MAX_N = 256
TRIDIAG_MAX_N = 100_000
TRIDIAG_RTOL = 1e-13


class SamplerConfigError(ValueError):
    """The sampler cannot realise the requested parameters."""


@dataclass(frozen=True)
class SamplerConfig:
    params: EnsembleParams
    method: str = "killip_nenciu"
    seed: int = 0
    batch_size: int = 250
    want: str = "smallest_only"

    def __post_init__(self):
        method = self.method.replace("-", "_")
        object.__setattr__(self, "method", method)
        if method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.want not in WANTS:
            raise ValueError(f"unknown want {self.want!r}")
        if not (0 <= int(self.seed) < 2 ** 64):
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")
        if method == "double_wishart":
            wishart_sizes(self.params)
            if self.params.N > DENSE_MAX_N:
                raise SamplerConfigError(f"double_wishart supports N <= {DENSE_MAX_N}")
        elif self.params.N > TRIDIAG_MAX_N:
            raise SamplerConfigError(f"killip_nenciu supports N <= {TRIDIAG_MAX_N}")


@dataclass
class SampleResult:
    """Eigenvalues on [0, 1]: shape (count,) for smallest_only, (count, N) otherwise."""

    config: SamplerConfig
    values: np.ndarray
    incidents: int = 0
    meta: dict = field(default_factory=dict)


def wishart_sizes(p: EnsembleParams):
    """Row counts (n1, n2) of the Gaussian factors for the double-Wishart model."""
    if p.beta not in (1, 2):
        raise SamplerConfigError("double_wishart needs beta in {1, 2}")
    scale = 2 if p.beta == 1 else 1
    extra = 1 if p.beta == 1 else 0
    out = []
    for name, a in (("alpha1", p.alpha1), ("alpha2", p.alpha2)):
        v = scale * a
        if not float(v).is_integer():
            need = "a half-integer" if p.beta == 1 else "an integer"
            raise SamplerConfigError(f"double_wishart at beta={p.beta:g} needs {name} {need}")
        out.append(int(v) + p.N + extra)
    return tuple(out)


def draw_rng(seed: int, batch: int, draw: int) -> np.random.Generator:
    ss = np.random.SeedSequence(int(seed), spawn_key=(int(batch), int(draw)))
    return np.random.Generator(np.random.Philox(ss))


def beta_shape_table(N: int, beta: float, a: float, b: float):
    """Shapes (p, q) for the 2N - 1 canonical moments alpha_k = 2u - 1, u ~ Beta(p, q).

    ``a`` is the exponent at the right end of [-2, 2] and ``b`` at the left.
    """
    k = np.arange(2 * N - 1)
    even = k % 2 == 0
    s = np.where(even, (2 * N - k - 2) * beta / 4 + a + 1, (2 * N - k - 3) * beta / 4 + a + b + 2)
    t = np.where(even, (2 * N - k - 2) * beta / 4 + b + 1, (2 * N - k - 1) * beta / 4)
    return t, s


def _beta_variates(rng: np.random.Generator, p, q):
    g1 = rng.standard_gamma(p)
    g2 = rng.standard_gamma(q)
    return g1 / (g1 + g2)


def tridiagonal_model(u: np.ndarray):
    """Diagonal and off-diagonal of the [0, 1]-scaled tridiagonal matrix from u_k = (1 + alpha_k)/2.

    Entries are formed directly in the shifted variables 1 - alpha = 2(1 - u),
    1 + alpha = 2u so that eigenvalues near the edge keep relative accuracy.
    """
    m = u.size
    N = (m + 1) // 2
    up = np.empty(m + 3)  # 1 + alpha_k for k = -2 .. 2N - 1
    um = np.empty(m + 3)  # 1 - alpha_k
    up[2:-1] = 2 * u
    um[2:-1] = 2 * (1 - u)
    up[[0, 1, -1]] = 0.0
    um[[0, 1, -1]] = 2.0

    def at(arr, k):
        return arr[k + 2]

    j = np.arange(N)
    # diagonal shifted by 2, written in 1 +- alpha so nothing cancels near the lower edge
    d = at(um, 2 * j - 1) * at(up, 2 * j) + at(up, 2 * j - 1) * at(um, 2 * j - 2)
    jj = np.arange(N - 1)
    e = np.sqrt(at(um, 2 * jj - 1) * at(um, 2 * jj) * at(up, 2 * jj) * at(up, 2 * jj + 1))
    return d / 4, e / 4


def _kn_draw(cfg: SamplerConfig, batch: int, draw: int, shapes):
    rng = draw_rng(cfg.seed, batch, draw)
    u = _beta_variates(rng, *shapes)
    d, e = tridiagonal_model(u)
    if cfg.want == "smallest_only":
        return smallest_eig_tridiag(d, e)
    return eig_tridiag(d, e)


def sample_killip_nenciu(config: SamplerConfig, count: int) -> SampleResult:
    """Tridiagonal-model draws; eigenvalues lie in [0, 1] with weight x^alpha1 (1-x)^alpha2."""
    p = config.params
    shapes = beta_shape_table(p.N, p.beta, p.alpha2, p.alpha1)
    vals = _run_batches(config, count, lambda b, i: _kn_draw(config, b, i, shapes))
    return SampleResult(config, vals, 0, {"rng": RNG_ALGORITHM})


def _dw_draw(cfg: SamplerConfig, batch: int, draw: int, sizes, counter):
    p = cfg.params
    n1, n2 = sizes
    rng = draw_rng(cfg.seed, batch, draw)
    for _ in range(100):
        if p.beta == 1:
            m1 = rng.standard_normal((n1, p.N))
            m2 = rng.standard_normal((n2, p.N))
        else:
            m1 = (rng.standard_normal((n1, p.N)) + 1j * rng.standard_normal((n1, p.N))) / math.sqrt(2)
            m2 = (rng.standard_normal((n2, p.N)) + 1j * rng.standard_normal((n2, p.N))) / math.sqrt(2)
        a = m1.conj().T @ m1
        c = a + m2.conj().T @ m2
        try:
            low = np.linalg.cholesky(c)
        except np.linalg.LinAlgError:
            counter.append(1)
            continue
        t = solve_triangular(low, a, lower=True)
        q = solve_triangular(low, t.conj().T, lower=True)
        q = 0.5 * (q + q.conj().T)
        d, e = householder_tridiagonal(q)
        if cfg.want == "smallest_only":
            return smallest_eig_tridiag(d, e)
        return eig_tridiag(d, e)
    raise np.linalg.LinAlgError("A + B singular in 100 consecutive draws")


def sample_double_wishart(config: SamplerConfig, count: int) -> SampleResult:
    """Eigenvalues of A (A+B)^{-1}, A = M1^H M1, B = M2^H M2 with Gaussian M1, M2."""
    if config.method != "double_wishart":
        config = SamplerConfig(config.params, "double_wishart", config.seed, config.batch_size, config.want)
    sizes = wishart_sizes(config.params)
    counter: list = []
    vals = _run_batches(config, count, lambda b, i: _dw_draw(config, b, i, sizes, counter))
    return SampleResult(config, vals, len(counter), {"rng": RNG_ALGORITHM, "n1": sizes[0], "n2": sizes[1]})


def sample(config: SamplerConfig, count: int) -> SampleResult:
    if config.method == "killip_nenciu":
        return sample_killip_nenciu(config, count)
    return sample_double_wishart(config, count)


def _thread_count() -> int:
    env = os.environ.get("JACOBI_EDGE_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(8, os.cpu_count() or 1))


def _run_batches(cfg: SamplerConfig, count: int, draw_fn) -> np.ndarray:
    if count < 0:
        raise ValueError("count must be nonnegative")
    bs = cfg.batch_size
    nb = -(-count // bs)

    def run(b):
        lo = b * bs
        return [draw_fn(b, i) for i in range(min(bs, count - lo))]

    workers = min(_thread_count(), nb)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            batches = list(pool.map(run, range(nb)))
    else:
        batches = [run(b) for b in range(nb)]
    flat = [v for batch in batches for v in batch]
    if cfg.want == "smallest_only":
        return np.asarray(flat, dtype=float)
    return np.asarray(flat, dtype=float).reshape(count, cfg.params.N)


def smallest_eig_tridiag(diag, offdiag, rtol: float = TRIDIAG_RTOL) -> float:
    """Smallest eigenvalue of a symmetric tridiagonal matrix by Sturm bisection.

    Absolute tolerance is rtol times the Gershgorin scale.
    """
    d = np.ascontiguousarray(diag, dtype=float)
    e = np.ascontiguousarray(offdiag, dtype=float)
    if d.size == 0:
        raise ValueError("empty matrix")
    if e.size != d.size - 1:
        raise ValueError("offdiag must have len(diag) - 1 entries")
    if d.size == 1:
        return float(d[0])
    return float(_backend.kernels.bisect_eigenvalues(d, e, 0, 0, rtol)[0])


def eig_tridiag(diag, offdiag) -> np.ndarray:
    """All eigenvalues, ascending, by the implicit-shift root-free QR iteration."""
    d = np.asarray(diag, dtype=float)
    e = np.asarray(offdiag, dtype=float)
    if d.size == 1:
        return d.copy()
    return eigh_tridiagonal(d, e, eigvals_only=True, lapack_driver="sterf")


def householder_tridiagonal(a):
    """Reduce a real symmetric or complex Hermitian matrix to real tridiagonal (d, e).

    Complex off-diagonals are rotated onto the positive reals by a diagonal
    unitary similarity, which leaves the spectrum unchanged.
    """
    a = np.array(a, dtype=complex if np.iscomplexobj(a) else float)
    n = a.shape[0]
    for k in range(n - 2):
        x = a[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        x0 = x[0]
        phase = x0 / abs(x0) if x0 != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        vn = np.linalg.norm(v)
        v /= vn
        # A <- H A H with H = I - 2 v v^H on the trailing block
        sub = a[k + 1:, k:]
        sub -= 2.0 * np.outer(v, v.conj() @ sub)
        a[k + 1:, k:] = sub
        sub = a[k:, k + 1:]
        sub -= 2.0 * np.outer(sub @ v, v.conj())
        a[k:, k + 1:] = sub
    d = np.real(np.diag(a)).astype(float)
    e = np.abs(np.diag(a, -1)).astype(float)
    return d, e


def sym_eig_dense(matrix, tol: float = 1e-12) -> np.ndarray:
    """Ascending eigenvalues of a symmetric or Hermitian matrix."""
    a = np.asarray(matrix)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("matrix must be square")
    scale = max(float(np.max(np.abs(a))) if a.size else 0.0, 1.0)
    if np.max(np.abs(a - a.conj().T), initial=0.0) > tol * scale:
        raise ValueError("matrix is not symmetric/Hermitian within tolerance")
    if a.shape[0] == 0:
        return np.zeros(0)
    d, e = householder_tridiagonal(a)
    return eig_tridiag(d, e)
