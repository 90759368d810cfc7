import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate

from conftest import linnik_cdf_by_inversion, linnik_pdf_by_inversion
from linnikmix import linnik, stattest
from linnikmix.elementary import laplace_cdf, sample_laplace
from linnikmix.mittag_leffler import k_pdf
from linnikmix.stable import sample_pos_stable

T_GRID = np.linspace(-5, 5, 41)


def test_cf_values():
    assert linnik.linnik_cf(1.3, 0) == 1
    assert linnik.linnik_cf(2, 1) == 0.5
    with pytest.raises(ValueError):
        linnik.linnik_cf(2.5, 1)


def test_laplace_case():
    x = np.array([-3.0, -1.0, 0.1, 1.0, 4.0])
    assert np.allclose(linnik.linnik_pdf(2, x), 0.5 * np.exp(-np.abs(x)), atol=1e-13)
    assert np.allclose(linnik.linnik_cdf(2, x), laplace_cdf(x), atol=1e-13)
    assert linnik.linnik_pdf(2, 1.0) == pytest.approx(0.18393972058572117, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.3, 1.0, 1.7])
def test_cdf_half_at_zero(alpha):
    assert linnik.linnik_cdf(alpha, 0.0) == 0.5


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
@pytest.mark.parametrize("x", [0.5, 2.0, 10.0])
def test_against_cf_inversion(alpha, x):
    assert linnik.linnik_pdf(alpha, x) == pytest.approx(linnik_pdf_by_inversion(alpha, x), abs=1e-9)
    assert linnik.linnik_cdf(alpha, x) == pytest.approx(linnik_cdf_by_inversion(alpha, x), abs=1e-9)


def test_alpha_one_pdf_frozen():
    # (1/pi) int_0^inf cos(t)/(1+t) dt, mpmath quadosc at 30 digits
    assert linnik.linnik_pdf(1.0, 1.0) == pytest.approx(0.10930059986104833753, abs=1e-12)


@pytest.mark.parametrize("alpha", [0.4, 1.3])
def test_cdf_against_laplace_ratio_route(alpha):
    # F(x) = int F_Laplace(x / sqrt(r)) p(r) dr, p the density of a ratio of
    # two positive (alpha/2)-stables
    d = alpha / 2
    for x in (-5.0, 0.2, 7.0):
        f = lambda u: laplace_cdf(x * math.exp(-u / 2)) * linnik.ratio_stable_pdf(d, math.exp(u)) * math.exp(u)
        val = sum(integrate.quad(f, a, b, limit=400, epsabs=1e-14)[0]
                  for a, b in [(-600, -20), (-20, 0), (0, 20), (20, 600)])
        assert linnik.linnik_cdf(alpha, x) == pytest.approx(val, abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.2, 2.0), st.floats(0.01, 50))
def test_symmetry(alpha, x):
    assert linnik.linnik_pdf(alpha, -x) == linnik.linnik_pdf(alpha, x)
    assert linnik.linnik_cdf(alpha, -x) + linnik.linnik_cdf(alpha, x) == pytest.approx(1, abs=1e-14)


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5, 2.0])
def test_unimodal_and_peak(alpha):
    x = np.linspace(1e-3, 20, 400)
    f = linnik.linnik_pdf(alpha, x)
    assert np.all(np.diff(f) < 0)
    if alpha <= 1:
        near = linnik.linnik_pdf(alpha, np.array([1e-2, 1e-4, 1e-6]))
        assert np.all(np.diff(near) > 0)


def test_peak_sentinel():
    assert linnik.linnik_pdf(0.8, 0.0) == math.inf
    assert linnik.linnik_pdf(1.0, 0.0) == math.inf
    assert math.isfinite(linnik.linnik_pdf(1.5, 0.0))


@pytest.mark.parametrize("alpha", [0.7, 1.5])
def test_cdf_is_integral_of_pdf(alpha):
    for x in (0.5, 3.0, 20.0):
        val = 0.5 + integrate.quad(lambda t: linnik.linnik_pdf(alpha, t), 0, x, limit=200, epsabs=1e-12)[0]
        assert linnik.linnik_cdf(alpha, x) == pytest.approx(val, abs=1e-6)


def test_mixture_grid_step_is_converged():
    from scipy.special import ndtr

    for alpha in (0.5, 1.2):
        m, w, _ = linnik._mixture_grid(alpha, 0.05)
        coarse = linnik.linnik_cdf(alpha, -2.0)
        fine = ndtr(-2.0 / np.sqrt(2 * m)) @ w + 0.5 * (1 - w.sum())
        assert coarse == pytest.approx(fine, abs=1e-12)


# ---- samplers ------------------------------------------------------------


@pytest.mark.parametrize("method", ["normal_ml", "stable_weibull", "laplace_q"])
def test_sampler_cf(method, rng):
    n = 10**5
    x = linnik.sample_linnik(1.2, n, rng, method)
    assert stattest.ecf_distance(x, lambda t: linnik.linnik_cf(1.2, t), T_GRID) <= 4 / math.sqrt(n)


def test_general_product_cf(rng):
    n = 10**5
    x = linnik.sample_linnik(1.2, n, rng, "general_product", alpha0=1.6, alpha_prime=0.75)
    assert stattest.ecf_distance(x, lambda t: linnik.linnik_cf(1.2, t), T_GRID) <= 4 / math.sqrt(n)


def test_alpha2_is_laplace(rng):
    x = linnik.sample_linnik(2.0, 10**5, rng)
    _, p = stattest.ks_one_sample(x, laplace_cdf)
    assert p > 0.001


@pytest.mark.parametrize("alpha", [0.5, 1.0, 1.5])
def test_methods_agree(alpha, rng):
    methods = ["normal_ml", "stable_weibull", "laplace_q"]
    draws = [linnik.sample_linnik(alpha, 10**5, rng, m) for m in methods]
    for i in range(3):
        for j in range(i + 1, 3):
            _, p = stattest.ks_two_sample(draws[i], draws[j])
            assert p > 0.001


def test_general_product_vs_normal_ml(rng):
    a = linnik.sample_linnik(1.2, 10**5, rng, "general_product", alpha0=1.6, alpha_prime=0.75)
    b = linnik.sample_linnik(1.2, 10**5, rng, "normal_ml")
    _, p = stattest.ks_two_sample(a, b)
    assert p > 0.001


def test_sampler_errors():
    with pytest.raises(ValueError):
        linnik.sample_linnik(2.0, 3, 0, "laplace_q")
    with pytest.raises(ValueError):
        linnik.sample_linnik(1.0, 3, 0, "general_product")
    with pytest.raises(ValueError):
        linnik.sample_linnik(1.0, 3, 0, "general_product", alpha0=1.5, alpha_prime=0.5)
    with pytest.raises(ValueError):
        linnik.sample_linnik(1.0, 3, 0, "nope")


# ---- Q law and the ratio of stables ------------------------------------------


def test_q_values():
    assert linnik.q_pdf(1, 2, 1.0) == pytest.approx(1 / math.pi, rel=1e-15)
    with pytest.raises(ValueError):
        linnik.q_pdf(1, 2, 0.0)
    with pytest.raises(ValueError):
        linnik.q_pdf(1.5, 1.0, 1.0)


@pytest.mark.parametrize("alpha,alpha_prime", [(1.0, 2.0), (0.5, 1.7), (1.9, 2.0)])
def test_q_normalised(alpha, alpha_prime):
    f = lambda x: linnik.q_pdf(alpha, alpha_prime, x)
    val = sum(integrate.quad(f, a, b, limit=400, epsabs=1e-13)[0] for a, b in [(0, 1), (1, 100), (100, np.inf)])
    assert val == pytest.approx(1, abs=1e-8)


@given(st.floats(0.05, 1.0), st.floats(0.05, 1.0), st.floats(1e-3, 1e3))
def test_q_change_of_variables(a, frac, x):
    alpha, alpha_prime = a * frac * 1.999, a * 2.0
    if not alpha < alpha_prime:
        return
    rho = alpha / alpha_prime
    rhs = alpha * x ** (alpha - 1) * k_pdf(rho, x**alpha)
    assert linnik.q_pdf(alpha, alpha_prime, x) == pytest.approx(rhs, rel=1e-12)


def test_sample_q_half_cauchy(rng):
    x = linnik.sample_q(1.0, 2.0, 10**5, rng)
    _, p = stattest.ks_one_sample(x, lambda v: 2 / math.pi * np.arctan(v))
    assert p > 0.001


def test_sample_q_against_integrated_density(rng):
    x = linnik.sample_q(0.6, 1.4, 10**5, rng)

    def cdf(v):
        return np.array([integrate.quad(lambda t: linnik.q_pdf(0.6, 1.4, t), 0, b, limit=200)[0] for b in v])

    grid = np.quantile(x, np.linspace(0.01, 0.99, 40))
    assert np.allclose(cdf(grid), linnik.q_cdf(0.6, 1.4, grid), atol=1e-8)
    _, p = stattest.ks_one_sample(x, lambda v: linnik.q_cdf(0.6, 1.4, v))
    assert p > 0.001


def test_sample_q_as_root_of_stable_ratio(rng):
    a = linnik.sample_q(1.2, 2.0, 10**5, rng)
    b = np.sqrt(sample_pos_stable(0.6, 10**5, rng) / sample_pos_stable(0.6, 10**5, rng))
    _, p = stattest.ks_two_sample(a, b)
    assert p > 0.001


def test_ratio_values():
    assert linnik.ratio_stable_pdf(0.5, 1.0) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    with pytest.raises(ValueError):
        linnik.ratio_stable_pdf(1.0, 1.0)
    with pytest.raises(ValueError):
        linnik.ratio_stable_pdf(0.5, -1.0)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_ratio_pdf_is_q_with_alpha_prime_one(alpha):
    x = np.logspace(-3, 3, 30)
    assert np.allclose(linnik.ratio_stable_pdf(alpha, x), linnik.q_pdf(alpha, 1.0, x), rtol=1e-14)


@pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
def test_ratio_sampler(alpha, rng):
    x = linnik.sample_stable_ratio(alpha, 10**5, rng)
    _, p = stattest.ks_one_sample(x, lambda v: linnik.ratio_stable_cdf(alpha, v))
    assert p > 0.001


@pytest.mark.parametrize("alpha,alpha_prime", [(1.0, 2.0), (0.8, 1.5), (1.9, 2.0)])
def test_linnik_scaling(alpha, alpha_prime, rng):
    assert linnik.check_linnik_scaling(alpha, alpha_prime, 10**5, rng).passed


def test_linnik_scaling_rejects_order():
    with pytest.raises(ValueError):
        linnik.check_linnik_scaling(1.5, 1.0, 10)


@pytest.mark.parametrize("alpha", [2.0, 1.0, 0.5])
def test_laplace_ratio_mixture(alpha, rng):
    assert linnik.check_laplace_ratio_mixture(alpha, 10**5, rng).passed


def test_laplace_ratio_mixture_degenerate(rng):
    # alpha = 2: the stable ratio is identically 1
    r = linnik.check_laplace_ratio_mixture(2.0, 10**4, rng)
    assert r.passed
    assert np.all(sample_pos_stable(1.0, 4, rng) == 1.0)
    x = sample_laplace(10, rng)
    assert x.shape == (10,)
