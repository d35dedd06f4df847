import math

import numpy as np
import pytest
from scipy import integrate

from jacobi_edge.selberg import (
    EnsembleParams,
    log_selberg_s,
    log_z_n,
    selberg_s,
    z_n,
    z_n_asymptotic,
    z_n_definition,
)
from jacobi_edge.special import beta_fn
from jacobi_edge.validation import zn_first_order


def test_params_validation():
    with pytest.raises(ValueError):
        EnsembleParams(0, 1.0, 0, 0)
    with pytest.raises(ValueError):
        EnsembleParams(3, 0.0, 0, 0)
    with pytest.raises(ValueError):
        EnsembleParams(3, 1.0, -1.0, 0)
    with pytest.raises(ValueError):
        EnsembleParams(3, 1.0, 0, -2.0)
    p = EnsembleParams(3, 2.0, 1, 2.5)
    assert p.swapped() == EnsembleParams(3, 2.0, 2.5, 1)
    assert p.alpha1_int and not p.alpha2_int
    assert p.survival_exponent == 3 * (1 + 2.5 + 2)


def test_single_factor_is_beta():
    for c in (0.3, 1.0, 4.0):
        assert selberg_s(1, 2.5, 1.5, c) == pytest.approx(beta_fn(2.5, 1.5), rel=1e-14)


def test_two_dim_values():
    assert selberg_s(2, 1, 1, 0.5) == pytest.approx(1 / 3, rel=1e-13)
    val = integrate.dblquad(lambda y, x: x * y * (x - y) ** 2, 0, 1, 0, 1, epsabs=1e-13)[0]
    assert selberg_s(2, 2, 1, 1) == pytest.approx(val, rel=1e-8)


def test_symmetry_and_log_form():
    for N in (1, 3, 7):
        assert selberg_s(N, 1.3, 2.9, 0.7) == pytest.approx(selberg_s(N, 2.9, 1.3, 0.7), rel=1e-13)
        s, lv = log_selberg_s(N, 1.3, 2.9, 0.7)
        assert s == 1 and math.exp(lv) == pytest.approx(selberg_s(N, 1.3, 2.9, 0.7), rel=1e-13)
    assert log_selberg_s(0, 1, 1, 1) == (1, 0.0)
    with pytest.raises(ZeroDivisionError):
        log_selberg_s(2, 0.0, 1.0, 1.0)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 3.0])
def test_closed_form_matches_selberg_ratio(beta):
    for N in range(1, 21):
        for a1, a2 in ((0, 0), (1, 1.7), (3, 0.4)):
            p = EnsembleParams(N, beta, a1, a2)
            assert z_n(p) == pytest.approx(z_n_definition(p), rel=1e-10)


def test_one_particle_normalisation():
    for a1, a2 in ((0, 0), (2, 1.7), (1, -0.5)):
        assert z_n(EnsembleParams(1, 1.3, a1, a2)) == pytest.approx(1 / beta_fn(a1 + 1, a2 + 1), rel=1e-13)


def test_large_n_in_log_space():
    lz = log_z_n(EnsembleParams(5000, 3.0, 4, 2.0))
    assert np.isfinite(lz)


def test_asymptote_values():
    for N in (5, 50, 300):
        assert z_n_asymptotic(0, 0.0, 2.0, N) == pytest.approx(N ** 2, rel=1e-13)
        assert z_n(EnsembleParams(N, 2.0, 0, 0.0)) == pytest.approx(N ** 2, rel=1e-12)


@pytest.mark.parametrize("beta", [1.0, 2.0, 3.0])
@pytest.mark.parametrize("a1", [0, 1, 2])
@pytest.mark.parametrize("a2", [0.0, 1.7])
def test_asymptote_first_order_rate(beta, a1, a2):
    c = zn_first_order(a1, a2, beta)
    devs = [z_n(EnsembleParams(N, beta, a1, a2)) / z_n_asymptotic(a1, a2, beta, N) - 1
            for N in (50, 100, 200, 400, 800, 1600)]
    if c == 0:
        assert max(abs(d) for d in devs) < 1e-10
        return
    assert all(abs(devs[i + 1]) < abs(devs[i]) for i in range(5))
    assert abs(1600 * devs[-1] / c - 1) < 0.05


@pytest.mark.xfail(strict=True, reason="first-order coefficient reaches 25 on this grid, so |ratio - 1| exceeds 0.15 at N=50")
def test_asymptote_fixed_band_at_n50_n100():
    for beta in (1.0, 2.0, 3.0):
        for a1 in (0, 1, 2):
            for a2 in (0.0, 1.7):
                for N, tol in ((50, 0.15), (100, 0.08)):
                    r = z_n(EnsembleParams(N, beta, a1, a2)) / z_n_asymptotic(a1, a2, beta, N)
                    assert abs(r - 1) <= tol
