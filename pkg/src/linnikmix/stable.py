"""Strictly stable laws with characteristic function

    f(t) = exp(-|t|**alpha * exp(-i pi theta alpha sign(t) / 2)),

``0 < alpha <= 2``, ``|theta| <= min(1, 2/alpha - 1)``.  ``theta = 0`` is the
symmetric law ``exp(-|t|**alpha)``; ``theta = 1`` with ``alpha < 1`` is the
positive law with Laplace transform ``exp(-s**alpha)``.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy import special

from . import stattest
from .elementary import sample_exponential, sample_normal, uniform_open

__all__ = [
    "StableParams",
    "stable_cf",
    "sample_stable",
    "sample_sym_stable",
    "sample_pos_stable",
    "sample_inverse_stable",
    "levy_pdf",
    "levy_cdf",
    "pos_stable_laplace",
    "check_subordination",
    "check_stable_product",
]


@dataclasses.dataclass(frozen=True)
class StableParams:
    alpha: float
    theta: float = 0.0

    def __post_init__(self):
        a, th = self.alpha, self.theta
        if not (0 < a <= 2):
            raise ValueError(f"stable alpha must lie in (0, 2], got {a}")
        lim = min(1.0, 2.0 / a - 1.0)
        if abs(th) > lim + 1e-12:
            raise ValueError(
                f"stable theta must satisfy |theta| <= min(1, 2/alpha - 1) = {lim:g}, got {th}"
            )


def stable_cf(alpha, theta, t):
    """Characteristic function of the strictly stable law ``(alpha, theta)``."""
    StableParams(alpha, theta)
    t = np.asarray(t, dtype=float)
    phase = np.exp(-0.5j * np.pi * theta * alpha * np.sign(t))
    out = np.exp(-(np.abs(t) ** alpha) * phase)
    if theta == 0:
        out = out.real
    return out[()] if out.ndim == 0 else out


def sample_stable(alpha, theta=0.0, size=None, rng=None):
    """Strictly stable variates by the trigonometric (CMS) transform.

    With ``V`` uniform on (-pi/2, pi/2), ``W`` standard exponential and
    ``b = pi theta / 2``::

        S = sin(alpha (V + b)) / cos(V)**(1/alpha)
            * (cos(V - alpha (V + b)) / W)**((1 - alpha)/alpha)

    This is the Chambers-Mallows-Stuck construction with skewness
    ``tan(pi theta alpha/2) / tan(pi alpha/2)`` rescaled by
    ``cos(pi theta alpha/2)**(1/alpha)``; the rescaling cancels the usual CMS
    prefactor, leaving the form above.  ``alpha = 1`` is the shifted Cauchy
    ``cos(b) tan(V) + sin(b)``.  Magnitudes are computed in log space.
    """
    StableParams(alpha, theta)
    if alpha == 1:
        b = 0.5 * math.pi * theta
        if theta == 1 or theta == -1:
            return np.full(size if size is not None else (), float(theta))[()]
        v = math.pi * (uniform_open(size, rng) - 0.5)
        return math.cos(b) * np.tan(v) + math.sin(b)
    # draw order (angle, then exponential) is part of the reproducibility contract
    v = math.pi * (uniform_open(size, rng) - 0.5)
    w = sample_exponential(size, rng)
    b = 0.5 * math.pi * theta
    num = np.sin(alpha * (v + b))
    k = (1.0 - alpha) / alpha
    log_mag = (
        np.log(np.abs(num))
        - np.log(np.cos(v)) / alpha
        + k * (np.log(np.cos(v - alpha * (v + b))) - np.log(w))
    )
    return np.sign(num) * np.exp(log_mag)


def sample_sym_stable(alpha, size=None, rng=None):
    """Symmetric stable draws with characteristic function ``exp(-|t|**alpha)``."""
    if not (0 < alpha <= 2):
        raise ValueError(f"symmetric stable alpha must lie in (0, 2], got {alpha}")
    return sample_stable(alpha, 0.0, size, rng)


def sample_pos_stable(alpha, size=None, rng=None):
    """Positive stable draws with Laplace transform ``exp(-s**alpha)``.

    Kanter's form of the ``theta = 1`` transform.  ``alpha = 1`` is the point
    mass at 1 and returns ones without consuming randomness.
    """
    if not (0 < alpha <= 1):
        raise ValueError(f"positive stable alpha must lie in (0, 1], got {alpha}")
    if alpha == 1:
        return np.ones(size if size is not None else ())[()]
    u = math.pi * uniform_open(size, rng)
    w = sample_exponential(size, rng)
    k = (1.0 - alpha) / alpha
    log_s = (
        np.log(np.sin(alpha * u))
        + k * np.log(np.sin((1.0 - alpha) * u))
        - np.log(np.sin(u)) / alpha
        - k * np.log(w)
    )
    return np.exp(log_s)


def sample_inverse_stable(alpha, size=None, rng=None):
    """Draws of ``V_alpha = 1 / S_{alpha,1}``."""
    return 1.0 / sample_pos_stable(alpha, size, rng)


def pos_stable_laplace(alpha, s):
    return np.exp(-np.asarray(s, dtype=float) ** alpha)


def levy_pdf(x):
    """Density of the positive stable law with ``alpha = 1/2``.

    ``x**(-3/2) exp(-1/(4x)) / (2 sqrt(pi))``; Laplace transform ``exp(-sqrt(s))``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("levy_pdf is defined for x > 0")
    out = x**-1.5 * np.exp(-0.25 / x) / (2.0 * math.sqrt(math.pi))
    return float(out) if out.ndim == 0 else out


def levy_cdf(x):
    """``erfc(1 / (2 sqrt(x)))`` for ``x > 0``."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("levy_cdf is defined for x > 0")
    out = special.erfc(0.5 / np.sqrt(x))
    return float(out) if out.ndim == 0 else out


def check_subordination(alpha, n=100_000, rng=None, level=stattest.DEFAULT_LEVEL,
                        name=None):
    """Two-sample KS of ``S_{alpha,0}`` against ``X sqrt(2 S_{alpha/2,1})``."""
    name = name or f"eq8[alpha={alpha:g}]"
    lhs = sample_sym_stable(alpha, n, rng)
    rhs = sample_normal(n, rng) * np.sqrt(2.0 * sample_pos_stable(alpha / 2.0, n, rng))
    return stattest.two_sample_report(name, lhs, rhs, rng, level)


def check_stable_product(alpha, alpha_prime, n=100_000, rng=None,
                         level=stattest.DEFAULT_LEVEL, name=None):
    """Two-sample KS of ``S_{a a',0}`` against ``S_{a,0} S_{a',1}**(1/a)``."""
    if not (0 < alpha <= 2 and 0 < alpha_prime <= 1):
        raise ValueError("need alpha in (0, 2] and alpha_prime in (0, 1]")
    name = name or f"lemma1[alpha={alpha:g},alpha_prime={alpha_prime:g}]"
    lhs = sample_sym_stable(alpha * alpha_prime, n, rng)
    rhs = sample_sym_stable(alpha, n, rng) * sample_pos_stable(alpha_prime, n, rng) ** (1.0 / alpha)
    return stattest.two_sample_report(name, lhs, rhs, rng, level)
