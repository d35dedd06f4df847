import numpy as np
import pytest

from jacobi_edge.edge_laws import cdf_exact
from jacobi_edge.montecarlo import empirical_cdf, ks_critical, ks_critical_two_sample, ks_distance, ks_two_sample, lag1_autocorrelation
from jacobi_edge.sampling import (
    SamplerConfig,
    SamplerConfigError,
    beta_shape_table,
    draw_rng,
    eig_tridiag,
    householder_tridiagonal,
    sample,
    sample_double_wishart,
    smallest_eig_tridiag,
    sym_eig_dense,
    tridiagonal_model,
    wishart_sizes,
)
from jacobi_edge.selberg import EnsembleParams


def test_tridiagonal_small_cases():
    assert smallest_eig_tridiag([3.5], []) == 3.5
    assert smallest_eig_tridiag([0.0, 0.0], [1.0]) == pytest.approx(-1.0, abs=1e-12)
    with pytest.raises(ValueError):
        smallest_eig_tridiag([], [])
    with pytest.raises(ValueError):
        smallest_eig_tridiag([1.0, 2.0], [])


def test_tridiagonal_against_dense_solver():
    rng = np.random.default_rng(4)
    d, e = rng.standard_normal(50), rng.standard_normal(49)
    ref = np.linalg.eigvalsh(np.diag(d) + np.diag(e, 1) + np.diag(e, -1))
    assert smallest_eig_tridiag(d, e) == pytest.approx(ref[0], abs=1e-11)
    np.testing.assert_allclose(eig_tridiag(d, e), ref, atol=1e-11)


def test_dense_eigensolver():
    np.testing.assert_allclose(sym_eig_dense(np.eye(6)), np.ones(6), atol=1e-14)
    np.testing.assert_allclose(sym_eig_dense(np.diag([1.0, 2.0, 3.0])), [1, 2, 3], atol=1e-14)
    rng = np.random.default_rng(1)
    for n in (5, 40):
        z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        h = z + z.conj().T
        ev = sym_eig_dense(h)
        np.testing.assert_allclose(ev, np.linalg.eigvalsh(h), atol=1e-10)
        s = z.real + z.real.T
        np.testing.assert_allclose(sym_eig_dense(s), np.linalg.eigvalsh(s), atol=1e-10)
    with pytest.raises(ValueError):
        sym_eig_dense(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_householder_preserves_spectrum():
    rng = np.random.default_rng(9)
    a = rng.standard_normal((12, 12))
    a = a + a.T
    d, e = householder_tridiagonal(a)
    t = np.diag(d) + np.diag(e, 1) + np.diag(e, -1)
    np.testing.assert_allclose(np.linalg.eigvalsh(t), np.linalg.eigvalsh(a), atol=1e-12)


def test_config_validation():
    p = EnsembleParams(10, 2.0, 1, 2)
    assert SamplerConfig(p, "killip-nenciu").method == "killip_nenciu"
    with pytest.raises(ValueError):
        SamplerConfig(p, "gibbs")
    with pytest.raises(ValueError):
        SamplerConfig(p, want="largest")
    with pytest.raises(ValueError):
        SamplerConfig(p, seed=-1)
    with pytest.raises(ValueError):
        SamplerConfig(p, batch_size=0)
    with pytest.raises(SamplerConfigError):
        SamplerConfig(EnsembleParams(10, 3.0, 1, 2), "double_wishart")
    with pytest.raises(SamplerConfigError):
        SamplerConfig(EnsembleParams(10, 2.0, 0.5, 2), "double_wishart")
    with pytest.raises(SamplerConfigError):
        SamplerConfig(EnsembleParams(300, 2.0, 1, 2), "double_wishart")
    assert wishart_sizes(EnsembleParams(10, 1.0, 0.5, 2)) == (12, 15)
    assert wishart_sizes(EnsembleParams(10, 2.0, 1, 2)) == (11, 12)


def test_beta_shapes_positive():
    t, s = beta_shape_table(30, 0.7, -0.5, 2.0)
    assert t.shape == s.shape == (59,) and np.all(t > 0) and np.all(s > 0)


def test_tridiagonal_model_stays_in_unit_interval():
    p = EnsembleParams(40, 1.3, 0.4, 2.2)
    shapes = beta_shape_table(p.N, p.beta, p.alpha2, p.alpha1)
    for i in range(20):
        u = draw_rng(3, 0, i).beta(*shapes)
        ev = eig_tridiag(*tridiagonal_model(u))
        assert ev[0] >= -1e-14 and ev[-1] <= 1 + 1e-14


def test_seed_determinism_and_batch_independence():
    p = EnsembleParams(12, 1.5, 1, 0.5)
    a = sample(SamplerConfig(p, seed=7), 300).values
    b = sample(SamplerConfig(p, seed=7), 300).values
    c = sample(SamplerConfig(p, seed=8), 300).values
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, c)
    assert np.all((a > 0) & (a < 1))


def test_thread_count_does_not_change_draws(monkeypatch):
    p = EnsembleParams(8, 2.0, 1, 2)
    monkeypatch.setenv("JACOBI_EDGE_THREADS", "1")
    one = sample(SamplerConfig(p, "double_wishart", seed=2, batch_size=17), 80).values
    monkeypatch.setenv("JACOBI_EDGE_THREADS", "5")
    many = sample(SamplerConfig(p, "double_wishart", seed=2, batch_size=17), 80).values
    assert one.tobytes() == many.tobytes()


def test_all_eigenvalues_shape_and_order():
    p = EnsembleParams(6, 1.0, 0.5, 1)
    r = sample(SamplerConfig(p, want="all_eigenvalues", seed=1), 25).values
    assert r.shape == (25, 6) and np.all(np.diff(r, axis=1) >= 0)
    s = sample(SamplerConfig(p, seed=1), 25).values
    np.testing.assert_allclose(r[:, 0], s, rtol=1e-10)
    w = sample_double_wishart(SamplerConfig(p, want="all_eigenvalues", seed=1), 5)
    assert w.values.shape == (5, 6) and w.meta["n1"] == 8


def test_draws_are_uncorrelated():
    v = sample(SamplerConfig(EnsembleParams(10, 2.0, 1, 1.0), seed=11), 2000).values
    assert abs(lag1_autocorrelation(v)) < 3 / np.sqrt(2000)


@pytest.mark.parametrize("method,beta,a1,a2", [
    ("killip_nenciu", 1.5, 1, 0.5),
    ("killip_nenciu", 0.8, 0, 2.5),
    ("double_wishart", 1.0, 2, 0.5),
    ("double_wishart", 2.0, 1, 3),
])
def test_smallest_eigenvalue_matches_exact_law(method, beta, a1, a2):
    p = EnsembleParams(6, beta, a1, a2)
    v = sample(SamplerConfig(p, method, seed=5), 1000).values
    assert ks_distance(empirical_cdf(v), lambda t: cdf_exact(p, t)) < ks_critical(1000)


def test_largest_edge_is_mirror_of_smallest():
    p = EnsembleParams(7, 1.2, 0.3, 1.4)
    top = sample(SamplerConfig(p, want="all_eigenvalues", seed=1), 1000).values[:, -1]
    low = sample(SamplerConfig(p.swapped(), seed=2), 1000).values
    assert ks_two_sample(1 - top, low) < ks_critical_two_sample(1000)


def test_dense_eigenpairs_have_small_residual():
    rng = np.random.default_rng(21)
    a = rng.standard_normal((40, 40))
    a = a + a.T
    norm = np.linalg.norm(a, 2)
    for lam in sym_eig_dense(a):
        # one step of inverse iteration from a random start gives the eigenvector
        shifted = a - (lam + 1e-10 * norm) * np.eye(40)
        v = np.linalg.solve(shifted, rng.standard_normal(40))
        v = np.linalg.solve(shifted, v / np.linalg.norm(v))
        v /= np.linalg.norm(v)
        assert np.linalg.norm(a @ v - lam * v) <= 1e-10 * norm
