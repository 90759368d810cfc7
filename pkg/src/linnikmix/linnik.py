"""Linnik laws, characteristic function ``1 / (1 + |t|**alpha)``.

Density and distribution function come from the normal scale mixture
``L_alpha = X sqrt(2 M_{alpha/2})``::

    F(x) = int_0^inf Phi(x / sqrt(2m)) f_ML(m) dm

The integral runs over ``u = log m`` with the trapezoidal rule on a fixed
grid; the mixing weights ``h f_ML(e**u) e**u`` are computed once per
``alpha`` and cached, so evaluating many points is a matrix-vector product.
The grid stops where the neglected mixing mass falls below 1e-14.
"""

from __future__ import annotations

import functools
import math

import mpmath
import numpy as np
from scipy import special

from . import stattest
from .elementary import sample_laplace, sample_normal, sample_weibull
from .mittag_leffler import k_cdf, ml_pdf, sample_k, sample_ml
from .stable import sample_pos_stable, sample_sym_stable

__all__ = [
    "check_alpha",
    "check_q_params",
    "linnik_cf",
    "linnik_pdf",
    "linnik_cdf",
    "sample_linnik",
    "LINNIK_METHODS",
    "q_pdf",
    "q_cdf",
    "sample_q",
    "ratio_stable_pdf",
    "ratio_stable_cdf",
    "sample_stable_ratio",
    "check_linnik_scaling",
    "check_laplace_ratio_mixture",
]

LINNIK_METHODS = ("normal_ml", "stable_weibull", "laplace_q", "general_product")

_MASS_TOL = 1e-14
_STEP = 0.1


def check_alpha(alpha):
    if not (0 < alpha <= 2):
        raise ValueError(f"Linnik alpha must lie in (0, 2], got {alpha}")


def check_q_params(alpha, alpha_prime):
    if not (0 < alpha < alpha_prime <= 2):
        raise ValueError(
            f"Q law needs 0 < alpha < alpha_prime <= 2, got alpha={alpha}, alpha_prime={alpha_prime}"
        )


def _out(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def linnik_cf(alpha, t):
    check_alpha(alpha)
    t = np.asarray(t, dtype=float)
    return _out(1.0 / (1.0 + np.abs(t) ** alpha))


@functools.lru_cache(maxsize=32)
def _mixture_grid(alpha, step=_STEP):
    """Nodes ``m = e**u`` and weights ``h f_ML(m) m`` for the mixture integral."""
    delta = alpha / 2.0
    log_tol = math.log(_MASS_TOL)
    # small-m mass ~ m**delta / Gamma(1+delta); large-m mass ~ m**-delta / Gamma(1-delta)
    u_lo = (log_tol + special.gammaln(1.0 + delta)) / delta
    if delta == 1:
        u_hi = math.log(-log_tol + 5.0)
    else:
        u_hi = -(log_tol + special.gammaln(1.0 - delta)) / delta
    u = np.arange(u_lo, u_hi + step, step)
    m = np.exp(u)
    w = step * np.asarray(ml_pdf(delta, m)) * m
    return m, w, math.exp(u_lo)


def _small_m_pdf_tail(delta, x, eps):
    """int_0^eps phi(x/sqrt(2m)) / sqrt(2m) f_ML(m) dm with f_ML ~ m**(delta-1)/Gamma(delta)."""
    c = 1.0 / (math.sqrt(4.0 * math.pi) * math.gamma(delta))
    out = np.zeros_like(x)
    zero = x == 0
    if zero.any():
        out[zero] = c * eps ** (delta - 0.5) / (delta - 0.5) if delta > 0.5 else math.inf
    v0 = x * x / (4.0 * eps)
    near = (~zero) & (v0 < 700.0)
    for i in np.flatnonzero(near):
        xx = x[i] * x[i] / 4.0
        out[i] = c * float(xx ** (delta - 0.5) * mpmath.gammainc(0.5 - delta, v0[i]))
    return out


def linnik_pdf(alpha, x):
    """Linnik density.  At ``x = 0`` it is infinite for ``alpha <= 1`` (returns ``inf``)."""
    check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    flat = np.abs(x.ravel())
    m, w, eps = _mixture_grid(float(alpha))
    s = np.sqrt(2.0 * m)
    out = np.empty_like(flat)
    step = max(1, 4_000_000 // m.size)
    for i in range(0, flat.size, step):
        z = flat[i : i + step, None] / s
        out[i : i + step] = (np.exp(-0.5 * z * z) / (math.sqrt(2.0 * math.pi) * s)) @ w
    out += _small_m_pdf_tail(alpha / 2.0, flat, eps)
    return _out(out.reshape(x.shape))


def linnik_cdf(alpha, x):
    """Linnik distribution function via the normal scale mixture."""
    check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    m, w, _ = _mixture_grid(float(alpha))
    s = np.sqrt(2.0 * m)
    out = np.empty_like(flat)
    neg = -np.abs(flat)
    step = max(1, 4_000_000 // m.size)
    for i in range(0, flat.size, step):
        out[i : i + step] = special.ndtr(neg[i : i + step, None] / s) @ w
    # mass outside the grid splits evenly between the two half-lines
    out += 0.5 * (1.0 - w.sum())
    out = np.where(flat > 0, 1.0 - out, out)
    out = np.where(flat == 0, 0.5, out)
    return _out(np.clip(out, 0.0, 1.0).reshape(x.shape))


def sample_linnik(alpha, size=None, rng=None, method="normal_ml", alpha0=None,
                  alpha_prime=None, ml_method="stable_weibull"):
    """Linnik draws from one of four product representations.

    ``normal_ml``        X sqrt(2 M_{alpha/2})
    ``stable_weibull``   S_{alpha,0} W_alpha
    ``laplace_q``        Lambda Q_{alpha,2}                     (alpha < 2)
    ``general_product``  S_{alpha0,0} M_{alpha'}**(1/alpha0),   alpha0 alpha' = alpha
    """
    check_alpha(alpha)
    if method == "normal_ml":
        x = sample_normal(size, rng)
        return x * np.sqrt(2.0 * sample_ml(alpha / 2.0, size, rng, ml_method))
    if method == "stable_weibull":
        s = sample_sym_stable(alpha, size, rng)
        return s * sample_weibull(alpha, size, rng)
    if method == "laplace_q":
        if alpha >= 2:
            raise ValueError("laplace_q needs alpha < 2")
        lam = sample_laplace(size, rng)
        return lam * sample_q(alpha, 2.0, size, rng)
    if method == "general_product":
        if alpha0 is None and alpha_prime is None:
            raise ValueError("general_product needs alpha0 or alpha_prime")
        if alpha0 is None:
            alpha0 = alpha / alpha_prime
        if alpha_prime is None:
            alpha_prime = alpha / alpha0
        if not (0 < alpha0 <= 2 and 0 < alpha_prime <= 1):
            raise ValueError("general_product needs alpha0 in (0, 2] and alpha_prime in (0, 1]")
        if not math.isclose(alpha0 * alpha_prime, alpha, rel_tol=1e-12):
            raise ValueError(f"alpha0 * alpha_prime = {alpha0 * alpha_prime} differs from alpha = {alpha}")
        s = sample_sym_stable(alpha0, size, rng)
        return s * sample_ml(alpha_prime, size, rng, ml_method) ** (1.0 / alpha0)
    raise ValueError(f"unknown Linnik sampling method {method!r}; choose from {LINNIK_METHODS}")


# --------------------------------------------------------------------------
# Q law and the ratio of positive stables


def _ratio_shape(alpha, r, x):
    """``sin(r) x**(a-1) / (pi (1 + x**(2a) + 2 x**a cos r))`` divided through by ``x**a``."""
    with np.errstate(over="ignore", divide="ignore"):
        xa = x**alpha
        return math.sin(r) / (math.pi * x * (xa + 1.0 / xa + 2.0 * math.cos(r)))


def q_pdf(alpha, alpha_prime, x):
    """``a' sin(pi a/a') x**(a-1) / (pi (1 + x**(2a) + 2 x**a cos(pi a/a')))``, ``x > 0``."""
    check_q_params(alpha, alpha_prime)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("q_pdf is defined for x > 0")
    return _out(alpha_prime * _ratio_shape(alpha, math.pi * alpha / alpha_prime, x))


def q_cdf(alpha, alpha_prime, x):
    """Closed form through ``Q = K_{alpha/alpha'}**(1/alpha)``."""
    check_q_params(alpha, alpha_prime)
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    return _out(k_cdf(alpha / alpha_prime, x**alpha))


def sample_q(alpha, alpha_prime, size=None, rng=None):
    """Q draws as ``K_{alpha/alpha'}**(1/alpha)``."""
    check_q_params(alpha, alpha_prime)
    return sample_k(alpha / alpha_prime, size, rng) ** (1.0 / alpha)


def _check_ratio_alpha(alpha):
    if not (0 < alpha < 1):
        raise ValueError(f"ratio of positive stables needs alpha in (0, 1), got {alpha}")


def ratio_stable_pdf(alpha, x):
    """Density of ``S_{alpha,1} / S'_{alpha,1}`` (independent copies), ``x > 0``."""
    _check_ratio_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("ratio_stable_pdf is defined for x > 0")
    return _out(_ratio_shape(alpha, math.pi * alpha, x))


def ratio_stable_cdf(alpha, x):
    _check_ratio_alpha(alpha)
    x = np.maximum(np.asarray(x, dtype=float), 0.0)
    return _out(k_cdf(alpha, x**alpha))


def sample_stable_ratio(alpha, size=None, rng=None):
    """Direct draws of ``S_{alpha,1} / S'_{alpha,1}``."""
    s1 = sample_pos_stable(alpha, size, rng)
    return s1 / sample_pos_stable(alpha, size, rng)


def check_linnik_scaling(alpha, alpha_prime, n=100_000, rng=None,
                         level=stattest.DEFAULT_LEVEL, name=None, method="normal_ml"):
    """Two-sample KS of ``L_alpha`` against ``L_alpha' Q_{alpha,alpha'}``."""
    check_q_params(alpha, alpha_prime)
    name = name or f"lemma7[alpha={alpha:g},alpha_prime={alpha_prime:g}]"
    lhs = sample_linnik(alpha, n, rng, method)
    rhs = sample_linnik(alpha_prime, n, rng, method) * sample_q(alpha, alpha_prime, n, rng)
    return stattest.two_sample_report(name, lhs, rhs, rng, level)


def check_laplace_ratio_mixture(alpha, n=100_000, rng=None,
                                level=stattest.DEFAULT_LEVEL, name=None, method="normal_ml"):
    """Two-sample KS of ``L_alpha`` against ``Lambda sqrt(S_{alpha/2,1} / S'_{alpha/2,1})``."""
    check_alpha(alpha)
    name = name or f"theorem2[alpha={alpha:g}]"
    lhs = sample_linnik(alpha, n, rng, method)
    d = alpha / 2.0
    ratio = sample_pos_stable(d, n, rng) / sample_pos_stable(d, n, rng)
    rhs = sample_laplace(n, rng) * np.sqrt(ratio)
    return stattest.two_sample_report(name, lhs, rhs, rng, level)

