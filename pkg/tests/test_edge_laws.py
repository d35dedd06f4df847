import math

import numpy as np
import pytest
from scipy import integrate

from jacobi_edge.edge_laws import (
    EdgeCurve,
    EnvelopeError,
    ModeMismatchError,
    cdf_alpha1_one_bessel,
    cdf_alpha1_zero,
    cdf_alpha1_zero_exact,
    cdf_exact,
    cdf_exact_jue_determinant,
    cdf_limit,
    cdf_two_term,
    cdf_two_term_jue_bessel,
    density_exact,
    jacobi_poly_representation,
    largest_cdf_two_term,
    largest_exact,
    log_jacobi_value_at_zero,
    log_jacobi_value_at_zero_jue,
    recentred_form,
    survival_alpha1_one_classical,
    survival_alpha1_one_jacobi,
    survival_exact,
    tabulate_curve,
)
from jacobi_edge.selberg import EnsembleParams
from jacobi_edge.special import beta_fn, bessel_i

XI = np.linspace(0.01, 0.2, 20)


def test_alpha1_zero_closed_form():
    p = EnsembleParams(7, 1.5, 0, 2.2)
    for xi in XI:
        assert survival_exact(p, xi) == pytest.approx((1 - xi) ** p.survival_exponent, rel=1e-13)


def test_boundaries():
    p = EnsembleParams(5, 1.0, 2, 0.5)
    assert survival_exact(p, 0.0) == 1.0 and survival_exact(p, 1.0) == 0.0
    assert cdf_exact(p, 1e-14) < 1e-10
    assert cdf_limit(2, 1.0, 0.0) == 0.0
    assert cdf_alpha1_zero_exact(1.0, 3.0, 30, 900.0) == 1.0


def test_rejects_fractional_alpha1():
    with pytest.raises(ModeMismatchError, match="alpha1 must be a nonnegative integer for exact mode"):
        survival_exact(EnsembleParams(5, 1.0, 0.5, 0.0), 0.1)


def test_series_matches_determinant():
    p = EnsembleParams(5, 2.0, 2, 1.0)
    assert cdf_exact_jue_determinant(p, 0.05) == pytest.approx(1 - survival_exact(p, 0.05), abs=1e-10)
    q = EnsembleParams(6, 2.0, 2, 0.5)
    for xi in XI:
        assert cdf_exact_jue_determinant(q, xi) == pytest.approx(cdf_exact(q, xi), abs=1e-10)
    with pytest.raises(ModeMismatchError):
        cdf_exact_jue_determinant(EnsembleParams(5, 1.0, 1, 1.0), 0.1)


def test_determinant_alpha1_zero_and_one():
    p = EnsembleParams(8, 2.0, 0, 1.5)
    assert cdf_exact_jue_determinant(p, 0.1) == pytest.approx(1 - 0.9 ** (8 * 9.5), rel=1e-13)
    q = EnsembleParams(8, 2.0, 1, 1.5)
    for xi in XI:
        assert cdf_exact_jue_determinant(q, xi) == pytest.approx(1 - survival_alpha1_one_jacobi(2.0, 1.5, 8, xi), abs=1e-10)


def test_density_one_particle_is_beta():
    p = EnsembleParams(1, 1.7, 2, 0.6)
    for phi in (0.1, 0.5, 0.8):
        ref = phi ** 2 * (1 - phi) ** 0.6 / beta_fn(3, 1.6)
        assert density_exact(p, phi) == pytest.approx(ref, rel=1e-12)


@pytest.mark.parametrize("N,beta,a1,a2", [(3, 1.0, 1, 0.5), (6, 2.0, 2, 1.7), (10, 3.0, 1, 0.0), (4, 0.5, 3, 2.0)])
def test_density_normalised_and_matches_derivative(N, beta, a1, a2):
    p = EnsembleParams(N, beta, a1, a2)
    total = integrate.quad(lambda t: density_exact(p, t), 0, 1, limit=200, epsabs=1e-12, epsrel=1e-12)[0]
    assert total == pytest.approx(1.0, abs=1e-8)
    h = 1e-6
    for xi in (0.02, 0.1, 0.3):
        fd = -(survival_exact(p, xi + h) - survival_exact(p, xi - h)) / (2 * h)
        assert fd == pytest.approx(density_exact(p, xi), rel=1e-6)


def test_two_term_documented_value():
    p = EnsembleParams(30, 1.0, 0, 3.0)
    t = cdf_two_term(p, 2.0)
    assert t.total == pytest.approx(1 - math.exp(-1) + 7 / 30 * math.exp(-1), rel=1e-14)
    assert t.total == pytest.approx(0.71795, abs=1e-5)
    for x in (0.5, 3.0, 9.0):
        a = cdf_two_term(p, x)
        b = cdf_alpha1_zero(1.0, 3.0, 30, x)
        assert a.raw_total == pytest.approx(1 - math.exp(-x / 2) + 3.5 / 30 * x * math.exp(-x / 2), rel=1e-14)
        assert a.raw_total == pytest.approx(b.raw_total, rel=1e-14)


@pytest.mark.parametrize("a1", [0, 1, 2, 3])
def test_general_beta_matches_bessel_determinants(a1):
    p = EnsembleParams(25, 2.0, a1, 1.3)
    for x in np.linspace(0.1, 10, 15):
        a, b = cdf_two_term(p, x), cdf_two_term_jue_bessel(a1, 1.3, 25, x)
        assert a.leading == pytest.approx(b.leading, abs=1e-10)
        assert a.raw_total == pytest.approx(b.raw_total, abs=1e-10)


def test_bessel_law_one_by_one():
    x = 2.7
    t = cdf_two_term_jue_bessel(1, 0.4, 12, x)
    z = 2 * math.sqrt(x)
    assert t.raw_total == pytest.approx(1 - math.exp(-x) * bessel_i(0, z) + x / 12 * 1.4 * math.exp(-x) * bessel_i(2, z), rel=1e-13)


@pytest.mark.parametrize("beta", [0.5, 1.0, 2.0, 4.0])
def test_alpha1_one_forms(beta):
    p = EnsembleParams(14, beta, 1, 0.8)
    for x in (0.3, 2.0, 7.0):
        assert cdf_two_term(p, x).raw_total == pytest.approx(cdf_alpha1_one_bessel(beta, 0.8, 14, x).raw_total, abs=1e-12)
    for N in (1, 5, 20):
        q = EnsembleParams(N, beta, 1, 0.8)
        for xi in XI:
            s = survival_exact(q, xi)
            assert survival_alpha1_one_jacobi(beta, 0.8, N, xi) == pytest.approx(s, abs=1e-10)
            assert survival_alpha1_one_classical(beta, 0.8, N, xi) == pytest.approx(s, abs=1e-10)


def test_limit_special_cases():
    for x in (0.2, 4.0):
        assert cdf_limit(0, 3.0, x) == pytest.approx(1 - math.exp(-1.5 * x), rel=1e-14)
        z = 2 * math.sqrt(x)
        m = np.array([[bessel_i(j - i, z) for j in range(3)] for i in range(3)])
        assert cdf_limit(3, 2.0, x) == pytest.approx(1 - math.exp(-x) * np.linalg.det(m), abs=1e-12)
    with pytest.raises(ModeMismatchError):
        cdf_limit(1.5, 2.0, 1.0)


def test_alpha1_zero_second_order_rate():
    xs = np.linspace(0.05, 10, 200)

    def gap(N):
        return max(abs(cdf_alpha1_zero_exact(1.0, 3.0, N, x) - cdf_alpha1_zero(1.0, 3.0, N, x).raw_total) for x in xs)

    assert 3 <= gap(20) / gap(40) <= 5


@pytest.mark.parametrize("N,beta,a1,a2", [(4, 1.0, 1, 0.5), (9, 2.0, 2, 0.0), (12, 3.0, 1, 1.7), (7, 2.0, 2, 1.7), (11, 1.0, 2, 3.0)])
def test_jacobi_representation(N, beta, a1, a2):
    p = EnsembleParams(N, beta, a1, a2)
    assert jacobi_poly_representation(p, 1e-15) == pytest.approx(1.0, abs=1e-9)
    for xi in XI:
        assert jacobi_poly_representation(p, xi) == pytest.approx(survival_exact(p, xi), abs=1e-9)


def test_simplified_constant_at_beta_two():
    for N, a1, a2 in ((3, 1, 0.0), (10, 2, 1.7), (40, 4, 0.3)):
        s1, l1 = log_jacobi_value_at_zero(EnsembleParams(N, 2.0, a1, a2))
        s2, l2 = log_jacobi_value_at_zero_jue(N, a1, a2)
        assert s1 == s2 and l1 == pytest.approx(l2, rel=1e-12, abs=1e-10)


def test_beta_two_three_paths_agree():
    p = EnsembleParams(9, 2.0, 3, 0.7)
    for xi in XI:
        a = cdf_exact(p, xi)
        b = cdf_exact_jue_determinant(p, xi)
        c = 1 - jacobi_poly_representation(p, xi)
        assert a == pytest.approx(b, abs=1e-9) and a == pytest.approx(c, abs=1e-9)


def test_recentred_form():
    p = EnsembleParams(15, 2.0, 0, 0.0)
    for x in (0.5, 3.0):
        assert recentred_form(p, x) == cdf_limit(0, 2.0, x)
    big = EnsembleParams(10 ** 9, 1.0, 2, 1.0)
    assert recentred_form(big, 2.0) == pytest.approx(cdf_limit(2, 1.0, 2.0), abs=1e-8)
    xs = np.linspace(0.05, 10, 100)

    def gap(N):
        q = EnsembleParams(N, 1.0, 1, 0.5)
        return max(abs(recentred_form(q, x) - cdf_two_term(q, x).raw_total) for x in xs)

    assert 3 <= gap(40) / gap(80) <= 5


def test_largest_edge_mirror():
    p = EnsembleParams(10, 1.5, 0.3, 2)
    for xi in XI:
        assert largest_exact(p, xi) == survival_exact(p.swapped(), xi)
    for x in (0.5, 2.0, 6.0):
        t = largest_cdf_two_term(EnsembleParams(20, 1.0, 2.5, 0), x)
        e = math.exp(-x / 2)
        assert t.raw_total == pytest.approx(e - (1 + 2.5 - 0.5) * x / 20 * e, rel=1e-13)
        b = largest_cdf_two_term(EnsembleParams(20, 2.0, 0.7, 1), x)
        assert b.raw_total == pytest.approx(1 - cdf_alpha1_one_bessel(2.0, 0.7, 20, x).raw_total, abs=1e-12)
    with pytest.raises(ModeMismatchError):
        largest_exact(EnsembleParams(5, 1.0, 1, 0.5), 0.1)


def test_clamping_keeps_raw():
    t = cdf_two_term(EnsembleParams(2, 1.0, 0, 5.0), 4.0)
    assert t.raw_total > 1 and t.total == 1.0


@pytest.mark.parametrize("params", [EnsembleParams(8, 1.0, 2, 1.7), EnsembleParams(20, 3.0, 1, 0.0), EnsembleParams(12, 2.0, 3, 0.5)])
def test_exact_cdf_monotone_in_unit_interval(params):
    vals = [cdf_exact(params, xi) for xi in np.linspace(0, 0.999, 200)]
    assert all(0 <= v <= 1 for v in vals)
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


def test_tabulate_defaults_and_columns():
    curve = tabulate_curve(EnsembleParams(30, 1.0, 0, 3.0))
    arr = curve.as_array()
    assert arr.shape == (201, 5) and arr[0, 0] == 0 and arr[-1, 0] == 10
    assert np.all(np.isnan(curve.column("exact")))
    assert EdgeCurve.COLUMNS[3] == "total"


def test_tabulate_thread_count_does_not_change_output():
    p = EnsembleParams(10, 2.0, 2, 0.5)
    a = tabulate_curve(p, "exact", np.linspace(0, 12, 37), threads=1)
    b = tabulate_curve(p, "exact", np.linspace(0, 12, 37), threads=6)
    assert a.points == b.points


def test_tabulate_modes():
    p = EnsembleParams(10, 2.0, 2, 1.0)
    grid = [0.5, 2.0]
    det = tabulate_curve(p, "jue-det", grid).as_array()
    ex = tabulate_curve(p, "exact", grid).as_array()
    np.testing.assert_allclose(det[:, 4], ex[:, 4], atol=1e-10)
    lim = tabulate_curve(p, "limit", grid).as_array()
    assert np.all(lim[:, 2] == 0)
    rc = tabulate_curve(p, "recentred", grid).as_array()
    np.testing.assert_allclose(rc[:, 3], [recentred_form(p, x) for x in grid])
    lg = tabulate_curve(EnsembleParams(10, 1.0, 0.5, 2), "exact", grid, edge="largest").as_array()
    assert lg[0, 4] == pytest.approx(largest_exact(EnsembleParams(10, 1.0, 0.5, 2), 0.005), rel=1e-14)


def test_tabulate_errors():
    with pytest.raises(ModeMismatchError, match="alpha1 must be a nonnegative integer for exact mode"):
        tabulate_curve(EnsembleParams(10, 1.0, 0.5, 1.0), "exact")
    with pytest.raises(EnvelopeError, match="two-term"):
        tabulate_curve(EnsembleParams(70, 1.0, 1, 1.0), "exact")
    with pytest.raises(EnvelopeError):
        tabulate_curve(EnsembleParams(10, 1.0, 7, 1.0), "exact")
    with pytest.raises(ModeMismatchError):
        tabulate_curve(EnsembleParams(10, 1.0, 1, 1.0), "jue-det")
    with pytest.raises(ValueError):
        tabulate_curve(EnsembleParams(10, 1.0, 1, 1.0), "bogus")
    with pytest.raises(ValueError):
        tabulate_curve(EnsembleParams(10, 1.0, 1, 1.0), edge="middle")
