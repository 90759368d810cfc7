"""Mittag-Leffler function and the Mittag-Leffler distribution (scale 1).

The distribution M_delta, ``0 < delta <= 1``, has Laplace transform
``1 / (1 + s**delta)``, survival function ``E_delta(-x**delta)`` and density

    f(x) = -d/dx E_delta(-x**delta) = x**(delta-1) E_{delta,delta}(-x**delta),

where ``E_{a,b}(z) = sum z**n / Gamma(a n + b)``.  The two-parameter function
appears because differentiating the series shifts the gamma argument to
``delta n + delta``.

Evaluation of ``E_{delta,b}(-y)``, ``y >= 0``, switches on ``x = y**(1/delta)``:

* ``x <= 4``: the power series in double precision (cancellation costs at
  most ``e**x``, i.e. under two digits);
* ``4 < x < 40``: the same series in extended precision (cached reciprocal
  gamma coefficients, ~50 digits);
* ``x >= 40``: the algebraic asymptotic expansion
  ``sum_{k>=1} (-1)**(k+1) y**-k / Gamma(b - delta k)``, truncated at its
  smallest term (error of order ``e**-x``).

The distribution function uses the positive-integrand representation

    1 - F(x) = sin(pi delta)/pi * int_0^inf z**(delta-1) e**(-z x)
               / (1 + z**(2 delta) + 2 z**delta cos(pi delta)) dz

integrated with the trapezoidal rule in ``u = log z``.  The transformed
integrand is analytic in a strip of half-width
``min(pi (1 - delta)/delta, pi/2)``, so the rule converges geometrically;
the step is halved until two successive estimates agree.
"""

from __future__ import annotations

import functools
import math

import mpmath
import numpy as np
from scipy import integrate, special

from . import stattest
from .elementary import sample_exponential, sample_weibull, uniform_open
from .stable import sample_pos_stable

__all__ = [
    "MLConvergenceError",
    "QuadratureError",
    "check_delta",
    "check_rho",
    "ml_function",
    "ml_function2",
    "ml_pdf",
    "ml_cdf",
    "ml_sf",
    "ml_laplace",
    "ml_tail_pdf",
    "sample_ml",
    "ML_METHODS",
    "k_pdf",
    "k_cdf",
    "k_ppf",
    "sample_k",
    "check_ml_scaling",
]

ML_METHODS = ("stable_weibull", "k_exponential", "stable_ratio")

_X_DOUBLE = 4.0
_X_ASYM = 40.0
_MP_DPS = 50


class MLConvergenceError(ArithmeticError):
    pass


class QuadratureError(ArithmeticError):
    def __init__(self, msg, error_bound):
        super().__init__(f"{msg} (achieved error bound {error_bound:.3g})")
        self.error_bound = error_bound


def check_delta(delta):
    if not (0 < delta <= 1):
        raise ValueError(f"Mittag-Leffler delta must lie in (0, 1], got {delta}")


def check_rho(rho):
    if not (0 < rho < 1):
        raise ValueError(f"K_rho parameter rho must lie in (0, 1), got {rho}")


def _out(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


# --------------------------------------------------------------------------
# E_{delta,beta}(-y) for y >= 0


def _log_terms(delta, beta, logy, n):
    """log|y**n / Gamma(delta n + beta)| and the sign of the gamma factor."""
    g = delta * n + beta
    return n * logy - special.gammaln(g), special.gammasgn(g)


def _series_double(delta, beta, y):
    """sum (-y)**n / Gamma(delta n + beta) in double precision, 1-d ``y``."""
    out = np.empty_like(y)
    ymax = float(np.max(y)) if y.size else 0.0
    nterms = _nterms(delta, beta, ymax, 40.0)
    n = np.arange(nterms)
    alt = np.where(n % 2, -1.0, 1.0)
    for i, yi in enumerate(y):
        if yi == 0.0:
            out[i] = special.rgamma(beta)
            continue
        lt, sg = _log_terms(delta, beta, math.log(yi), n)
        out[i] = math.fsum(alt * sg * np.exp(lt))
    return out


def _nterms(delta, beta, ymax, digits):
    # smallest N past the peak with ymax**N / Gamma(delta N + beta) < 10**-digits
    logy = math.log(max(ymax, 1e-300))
    n = 8
    while True:
        lt, _ = _log_terms(delta, beta, logy, n)
        if lt < -digits * math.log(10) and n * delta + beta > ymax ** (1.0 / delta):
            return n + 1
        n = int(n * 1.25) + 1
        if n > 20000:
            raise MLConvergenceError(f"series needs more than 20000 terms at y={ymax}")


@functools.lru_cache(maxsize=64)
def _mp_coeffs(delta, beta, nterms):
    with mpmath.workdps(_MP_DPS):
        d, b = mpmath.mpf(delta), mpmath.mpf(beta)
        return tuple(mpmath.rgamma(d * k + b) for k in range(nterms))


def _series_mp(delta, beta, y):
    ymax = _X_ASYM**delta
    coeffs = _mp_coeffs(float(delta), float(beta), _nterms(delta, beta, ymax, 45.0))
    out = np.empty_like(y)
    with mpmath.workdps(_MP_DPS):
        for i, yi in enumerate(y):
            z = -mpmath.mpf(float(yi))
            acc = mpmath.mpf(0)
            for c in reversed(coeffs):
                acc = acc * z + c
            out[i] = float(acc)
    return out


def _asymptotic(delta, beta, y):
    """Optimally truncated expansion of E_{delta,beta}(-y) for large y.

    By reflection ``1/Gamma(b - d k) = Gamma(1 - b + d k) sin(pi (b - d k)) / pi``;
    the series is cut where the envelope ``Gamma(1 - b + d k) / (pi y**k)``
    stops decreasing, or earlier once it is negligible against the first term.  The envelope at the cut bounds the error.
    """
    out = np.empty_like(y)
    for i, yi in enumerate(y):
        logy = math.log(yi)
        terms, prev_env = [], math.inf
        for k in range(1, 20000):
            env = math.exp(special.gammaln(1.0 - beta + delta * k) - k * logy) / math.pi
            if env > prev_env:
                break
            prev_env = env
            if terms and env < 1e-17 * abs(terms[0]):
                break  # remaining terms are below double precision
            arg = beta - delta * k
            if arg <= 0 and arg == math.floor(arg):
                continue  # 1/Gamma vanishes at the poles
            t = special.gammasgn(arg) * math.exp(-special.gammaln(arg) - k * logy)
            terms.append(t if k % 2 else -t)
        total = math.fsum(terms)
        if prev_env > 1e-11 * abs(total):
            raise MLConvergenceError(
                f"asymptotic expansion of E_{{{delta},{beta}}}(-{yi}) stalls at relative "
                f"error {prev_env / max(abs(total), 1e-300):.2e}"
            )
        out[i] = total
    return out


def _ml_neg(delta, beta, y):
    """E_{delta,beta}(-y) for an array ``y >= 0``."""
    y = np.asarray(y, dtype=float)
    flat = y.ravel()
    out = np.empty_like(flat)
    if delta == 1 and beta == 1:
        out[:] = np.exp(-flat)
        return out.reshape(y.shape)
    x = flat ** (1.0 / delta)
    lo = x <= _X_DOUBLE
    hi = x >= _X_ASYM
    mid = ~(lo | hi)
    if lo.any():
        out[lo] = _series_double(delta, beta, flat[lo])
    if mid.any():
        out[mid] = _series_mp(delta, beta, flat[mid])
    if hi.any():
        if delta == 1:
            # E_{1,b}(-y) decays exponentially; no algebraic expansion exists
            raise MLConvergenceError(f"E_{{1,{beta}}}(-y) unsupported for y >= {_X_ASYM}")
        out[hi] = _asymptotic(delta, beta, flat[hi])
    return out.reshape(y.shape)


def ml_function(delta, z):
    """Mittag-Leffler function ``E_delta(z) = sum z**n / Gamma(delta n + 1)``.

    Real ``z``; negative arguments use the regime switch described in the
    module docstring.  Nonnegative arguments are summed directly and are
    supported while ``z**(1/delta) < 700``.
    """
    return ml_function2(delta, 1.0, z)


def ml_function2(delta, beta, z):
    """Two-parameter function ``E_{delta,beta}(z)`` for real ``z``."""
    check_delta(delta)
    z = np.asarray(z, dtype=float)
    flat = z.ravel()
    out = np.empty_like(flat)
    neg = flat < 0
    if neg.any():
        out[neg] = _ml_neg(delta, beta, -flat[neg])
    pos = ~neg
    if pos.any():
        zp = flat[pos]
        if np.any(zp ** (1.0 / delta) >= 700):
            raise MLConvergenceError("positive argument too large for the power series")
        if delta == 1 and beta == 1:
            out[pos] = np.exp(zp)
        else:
            out[pos] = [_pos_series(delta, beta, v) for v in zp]
    return _out(out.reshape(z.shape))


def _pos_series(delta, beta, z):
    if z == 0:
        return float(special.rgamma(beta))
    n = np.arange(_nterms(delta, beta, z, 20.0))
    lt, sg = _log_terms(delta, beta, math.log(z), n)
    return math.fsum(sg * np.exp(lt))


# --------------------------------------------------------------------------
# distribution


def ml_pdf(delta, x):
    """Mittag-Leffler density ``x**(delta-1) E_{delta,delta}(-x**delta)``, ``x > 0``."""
    check_delta(delta)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("ml_pdf is defined for x > 0 (it diverges at 0 when delta < 1)")
    if delta == 1:
        return _out(np.exp(-x))
    out = x ** (delta - 1.0) * _ml_neg(delta, delta, x**delta)
    return _out(np.maximum(out, 0.0))


def ml_tail_pdf(delta, x):
    """Leading power-law tail ``sin(delta pi) Gamma(delta + 1) / (pi x**(delta+1))``."""
    x = np.asarray(x, dtype=float)
    return _out(math.sin(delta * math.pi) * math.gamma(delta + 1) / (math.pi * x ** (delta + 1)))


def ml_laplace(delta, s):
    """Laplace transform ``1 / (1 + s**delta)``, ``s >= 0``."""
    check_delta(delta)
    s = np.asarray(s, dtype=float)
    if np.any(s < 0):
        raise ValueError("ml_laplace is defined for s >= 0")
    return _out(1.0 / (1.0 + s**delta))


def _strip_halfwidth(delta):
    return min(math.pi * (1.0 - delta) / delta, 0.5 * math.pi)


def _survival_trapezoid(delta, x, tol=1e-10, max_halvings=8):
    """1 - F(x) for an array of ``x > 0`` (trapezoid rule in log z)."""
    c = math.sin(math.pi * delta) / math.pi
    cd = math.cos(math.pi * delta)
    u_lo = math.log(tol * delta / c) / delta
    u_hi = -u_lo
    xmin = float(np.min(x))
    u_hi = min(u_hi, math.log(60.0 / xmin))
    u_lo = min(u_lo, u_hi - 40.0 / delta)
    h = 2.0 * math.pi * _strip_halfwidth(delta) / 25.0

    def g(u):
        e = np.exp(delta * u)
        return c * e / (1.0 + e * e + 2.0 * e * cd)

    def block_sum(nodes):
        w = g(nodes)
        ez = np.exp(nodes)
        out = np.empty(x.size)
        step = max(1, 4_000_000 // max(nodes.size, 1))
        for s in range(0, x.size, step):
            out[s : s + step] = np.exp(-np.outer(x[s : s + step], ez)) @ w
        return out

    nodes = np.arange(u_lo, u_hi + h, h)
    total = h * block_sum(nodes)
    for _ in range(max_halvings):
        mids = nodes[:-1] + 0.5 * h
        h *= 0.5
        new = 0.5 * total + h * block_sum(mids)
        err = float(np.max(np.abs(new - total)))
        total = new
        nodes = np.sort(np.concatenate([nodes, mids]))
        if err < tol:
            return total, err
    raise QuadratureError("Mittag-Leffler survival quadrature did not settle", err)


def _survival_quad(delta, x, tol=1e-10):
    c = math.sin(math.pi * delta) / math.pi
    cd = math.cos(math.pi * delta)

    def f(u, xv):
        if u > 700.0 or u < -700.0 / delta:
            return 0.0
        e = math.exp(delta * u)
        return c * e * math.exp(-xv * math.exp(u)) / (1.0 + e * e + 2.0 * e * cd)

    out = np.empty(x.size)
    for i, xv in enumerate(x):
        total, bound = 0.0, 0.0
        # split at z = 1 (u = 0)
        for a, b in ((-np.inf, 0.0), (0.0, np.inf)):
            val, err = integrate.quad(f, a, b, args=(xv,), epsabs=tol, epsrel=1e-12, limit=200)
            total += val
            bound += err
        if bound > 1e-8:
            raise QuadratureError("Mittag-Leffler survival quadrature failed", bound)
        out[i] = total
    return out


def ml_sf(delta, x, method="trapezoid"):
    """Survival function ``1 - F(x) = E_delta(-x**delta)``."""
    check_delta(delta)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("ml_sf is defined for x >= 0")
    if delta == 1:
        return _out(np.exp(-x))
    flat = x.ravel()
    out = np.ones_like(flat)
    pos = flat > 0
    inf = np.isinf(flat)
    out[inf] = 0.0
    pos &= ~inf
    if pos.any():
        if method == "trapezoid":
            out[pos] = _survival_trapezoid(delta, flat[pos])[0]
        elif method == "quad":
            out[pos] = _survival_quad(delta, flat[pos])
        else:
            raise ValueError(f"unknown method {method!r}")
    return _out(np.clip(out, 0.0, 1.0).reshape(x.shape))


def ml_cdf(delta, x, method="trapezoid"):
    """Mittag-Leffler distribution function, ``x >= 0``.

    ``method="trapezoid"`` (vectorised, used for KS tests) or ``"quad"``
    (QUADPACK on each half of the log axis).  Absolute accuracy 1e-8 or a
    :class:`QuadratureError` carrying the achieved bound.
    """
    check_delta(delta)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("ml_cdf is defined for x >= 0")
    if delta == 1:
        return _out(-np.expm1(-x))
    return _out(1.0 - np.asarray(ml_sf(delta, x, method)))


def sample_ml(delta, size=None, rng=None, method="stable_weibull"):
    """Mittag-Leffler draws from one of three product representations.

    ``stable_weibull``  S_{delta,1} * W_delta
    ``k_exponential``   K_delta**(1/delta) * W_1          (delta < 1)
    ``stable_ratio``    W_1 * S_{delta,1} / S'_{delta,1}
    """
    check_delta(delta)
    if method == "stable_weibull":
        s = sample_pos_stable(delta, size, rng)
        return s * sample_weibull(delta, size, rng)
    if method == "k_exponential":
        if delta >= 1:
            raise ValueError("k_exponential needs delta < 1")
        k = sample_k(delta, size, rng)
        return k ** (1.0 / delta) * sample_exponential(size, rng)
    if method == "stable_ratio":
        w = sample_exponential(size, rng)
        s1 = sample_pos_stable(delta, size, rng)
        s2 = sample_pos_stable(delta, size, rng)
        return w * (s1 / s2)
    raise ValueError(f"unknown Mittag-Leffler sampling method {method!r}; choose from {ML_METHODS}")


# --------------------------------------------------------------------------
# the K_rho law


def k_pdf(rho, x):
    """``sin(pi rho) / (pi rho (x**2 + 2 x cos(pi rho) + 1))`` on ``x > 0``."""
    check_rho(rho)
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("k_pdf is defined for x > 0")
    pr = math.pi * rho
    return _out(math.sin(pr) / (pr * (x * x + 2.0 * x * math.cos(pr) + 1.0)))


def k_cdf(rho, x):
    """``(arctan((x + cos pi rho) / sin pi rho) - (pi/2 - pi rho)) / (pi rho)``."""
    check_rho(rho)
    x = np.asarray(x, dtype=float)
    pr = math.pi * rho
    # arctan2 form stays accurate as x -> inf
    ang = 0.5 * math.pi - np.arctan2(math.sin(pr), np.maximum(x, 0.0) + math.cos(pr))
    out = (ang - (0.5 * math.pi - pr)) / pr
    return _out(np.clip(out, 0.0, 1.0))


def k_ppf(rho, u):
    """Inverse CDF, written as ``sin(pi rho) / tan(pi rho (1-u)) - cos(pi rho)``.

    Same as ``sin(pi rho) tan(pi rho u + pi/2 - pi rho) - cos(pi rho)`` but
    without the loss of precision near ``u = 1``.
    """
    check_rho(rho)
    u = np.asarray(u, dtype=float)
    pr = math.pi * rho
    out = math.sin(pr) / np.tan(pr * (1.0 - u)) - math.cos(pr)
    return _out(np.maximum(out, 0.0))


def sample_k(rho, size=None, rng=None):
    check_rho(rho)
    return k_ppf(rho, uniform_open(size, rng))


def check_ml_scaling(delta, delta_prime, n=100_000, rng=None,
                     level=stattest.DEFAULT_LEVEL, name=None, method="stable_weibull"):
    """Two-sample KS of ``M_delta`` against ``M_delta' K_rho**(1/delta)``, ``rho = delta/delta'``."""
    if not (0 < delta < delta_prime <= 1):
        raise ValueError(f"need 0 < delta < delta_prime <= 1, got {delta}, {delta_prime}")
    name = name or f"lemma6[delta={delta:g},delta_prime={delta_prime:g}]"
    lhs = sample_ml(delta, n, rng, method)
    rhs = sample_ml(delta_prime, n, rng, method) * sample_k(delta / delta_prime, n, rng) ** (1.0 / delta)
    return stattest.two_sample_report(name, lhs, rhs, rng, level)
