"""Catalogue of distributional identities checked by simulation.

Each identity has an id (``"lemma6"``, ``"eq8"``, ...) and a default grid of
parameter points.  A :class:`Case` is one identity at one parameter point;
:func:`run_case` draws both sides and returns an
:class:`~linnikmix.stattest.IdentityReport`.

Two kinds of comparison are used.  When both sides are samplers the check is
a two-sample KS test; when one side has a usable closed-form or quadrature
CDF the check is a one-sample KS test against it.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import linnik, mittag_leffler as ml, stable, stattest
from .elementary import laplace_cdf, sample_exponential, sample_laplace, sample_normal, sample_weibull

__all__ = ["Case", "IDENTITY_IDS", "SUITES", "build_cases", "make_case", "run_case"]


@dataclasses.dataclass(frozen=True)
class Case:
    id: str
    params: tuple = ()

    @property
    def name(self):
        if not self.params:
            return self.id
        inner = ",".join(f"{k}={v:g}" for k, v in self.params)
        return f"{self.id}[{inner}]"

    def kwargs(self):
        return dict(self.params)


# --------------------------------------------------------------------------
# one function per identity; each returns (kind, lhs, rhs_or_cdf)


def _eq8(n, rng, alpha):
    lhs = stable.sample_sym_stable(alpha, n, rng)
    rhs = sample_normal(n, rng) * np.sqrt(2.0 * stable.sample_pos_stable(alpha / 2.0, n, rng))
    return "two", lhs, rhs


def _eq9(n, rng, gamma, gamma_prime):
    lhs = sample_weibull(gamma * gamma_prime, n, rng)
    rhs = sample_weibull(gamma_prime, n, rng) ** (1.0 / gamma)
    return "two", lhs, rhs


def _eq21(n, rng):
    lhs = sample_normal(n, rng) * np.sqrt(2.0 * sample_exponential(n, rng))
    return "one", lhs, laplace_cdf


def _eq24(n, rng, alpha):
    d = alpha / 2.0
    lhs = linnik.sample_q(alpha, 2.0, n, rng)
    rhs = np.sqrt(stable.sample_pos_stable(d, n, rng) / stable.sample_pos_stable(d, n, rng))
    return "two", lhs, rhs


def _lemma1(n, rng, alpha, alpha_prime):
    lhs = stable.sample_sym_stable(alpha * alpha_prime, n, rng)
    rhs = stable.sample_sym_stable(alpha, n, rng) * stable.sample_pos_stable(alpha_prime, n, rng) ** (1.0 / alpha)
    return "two", lhs, rhs


def _lemma2(n, rng, gamma):
    lhs = sample_weibull(gamma, n, rng)
    rhs = sample_weibull(2.0, n, rng) * np.sqrt(stable.sample_inverse_stable(gamma / 2.0, n, rng))
    return "two", lhs, rhs


def _lemma3(n, rng, gamma):
    lhs = sample_weibull(gamma, n, rng)
    rhs = sample_exponential(n, rng) * stable.sample_inverse_stable(gamma, n, rng)
    return "two", lhs, rhs


def _lemma4(n, rng, alpha):
    lhs = linnik.sample_linnik(alpha, n, rng, "stable_weibull")
    return "one", lhs, lambda x: linnik.linnik_cdf(alpha, x)


def _lemma5(n, rng, delta):
    lhs = ml.sample_ml(delta, n, rng, "stable_weibull")
    return "one", lhs, lambda x: ml.ml_cdf(delta, x)


def _lemma6(n, rng, delta, delta_prime):
    ml.check_delta(delta_prime)
    if not delta < delta_prime:
        raise ValueError(f"lemma6 needs delta < delta_prime, got {delta} and {delta_prime}")
    lhs = ml.sample_ml(delta, n, rng)
    rhs = ml.sample_ml(delta_prime, n, rng) * ml.sample_k(delta / delta_prime, n, rng) ** (1.0 / delta)
    return "two", lhs, rhs


def _lemma7(n, rng, alpha, alpha_prime):
    linnik.check_q_params(alpha, alpha_prime)
    lhs = linnik.sample_linnik(alpha, n, rng)
    rhs = linnik.sample_linnik(alpha_prime, n, rng) * linnik.sample_q(alpha, alpha_prime, n, rng)
    return "two", lhs, rhs


def _lemma8(n, rng, gamma, gamma_prime):
    if not 0 < gamma < gamma_prime:
        raise ValueError(f"lemma8 needs 0 < gamma < gamma_prime, got {gamma} and {gamma_prime}")
    lhs = sample_weibull(gamma, n, rng)
    v = stable.sample_inverse_stable(gamma / gamma_prime, n, rng)
    rhs = sample_weibull(gamma_prime, n, rng) * v ** (1.0 / gamma_prime)
    return "two", lhs, rhs


def _theorem1(n, rng, alpha0, alpha_prime):
    alpha = alpha0 * alpha_prime
    lhs = linnik.sample_linnik(alpha, n, rng, "general_product", alpha0=alpha0, alpha_prime=alpha_prime)
    return "one", lhs, lambda x: linnik.linnik_cdf(alpha, x)


def _theorem2(n, rng, alpha):
    linnik.check_alpha(alpha)
    d = alpha / 2.0
    ratio = stable.sample_pos_stable(d, n, rng) / stable.sample_pos_stable(d, n, rng)
    lhs = sample_laplace(n, rng) * np.sqrt(ratio)
    return "one", lhs, lambda x: linnik.linnik_cdf(alpha, x)


def _theorem3(n, rng, delta):
    lhs = ml.sample_ml(delta, n, rng, "stable_ratio")
    return "one", lhs, lambda x: ml.ml_cdf(delta, x)


def _corollary2(n, rng, delta):
    lhs = ml.sample_ml(delta, n, rng, "k_exponential")
    return "one", lhs, lambda x: ml.ml_cdf(delta, x)


def _corollary3(n, rng, alpha):
    lhs = linnik.sample_linnik(alpha, n, rng, "laplace_q")
    return "one", lhs, lambda x: linnik.linnik_cdf(alpha, x)


def _corollary4(n, rng, alpha):
    lhs = linnik.sample_linnik(alpha, n, rng, "normal_ml")
    return "one", lhs, lambda x: linnik.linnik_cdf(alpha, x)


def _corollary5(n, rng, alpha):
    lhs = linnik.sample_stable_ratio(alpha, n, rng)
    rhs = ml.sample_k(alpha, n, rng) ** (1.0 / alpha)
    return "two", lhs, rhs


def _corollary5_cdf(n, rng, alpha):
    lhs = linnik.sample_stable_ratio(alpha, n, rng)
    return "one", lhs, lambda x: linnik.ratio_stable_cdf(alpha, x)


_ML_METHOD_PAIRS = {
    1: ("stable_weibull", "k_exponential"),
    2: ("stable_weibull", "stable_ratio"),
    3: ("k_exponential", "stable_ratio"),
}
_LINNIK_METHOD_PAIRS = {
    1: ("normal_ml", "stable_weibull"),
    2: ("normal_ml", "laplace_q"),
    3: ("stable_weibull", "laplace_q"),
}


def _ml_methods(n, rng, delta, pair):
    a, b = _ML_METHOD_PAIRS[int(pair)]
    return "two", ml.sample_ml(delta, n, rng, a), ml.sample_ml(delta, n, rng, b)


def _linnik_methods(n, rng, alpha, pair):
    a, b = _LINNIK_METHOD_PAIRS[int(pair)]
    return "two", linnik.sample_linnik(alpha, n, rng, a), linnik.sample_linnik(alpha, n, rng, b)


def _negative_control(n, rng, alpha):
    """Deliberately false: Linnik draws against the standard normal CDF."""
    from scipy.special import ndtr

    return "one", linnik.sample_linnik(alpha, n, rng), ndtr


_REGISTRY = {
    "eq8": (_eq8, [{"alpha": a} for a in (2.0, 1.0, 0.6)]),
    "eq9": (_eq9, [{"gamma": 2.0, "gamma_prime": 1.0}, {"gamma": 0.5, "gamma_prime": 3.0}]),
    "eq21": (_eq21, [{}]),
    "eq24": (_eq24, [{"alpha": a} for a in (0.5, 1.0, 1.5)]),
    "lemma1": (_lemma1, [{"alpha": 2.0, "alpha_prime": 0.5}, {"alpha": 1.5, "alpha_prime": 0.8},
                         {"alpha": 1.2, "alpha_prime": 1.0}]),
    "lemma2": (_lemma2, [{"gamma": g} for g in (0.5, 1.0, 1.5, 2.0)]),
    "lemma3": (_lemma3, [{"gamma": g} for g in (0.3, 0.5, 0.9, 1.0)]),
    "lemma4": (_lemma4, [{"alpha": a} for a in (0.5, 1.0, 1.5, 2.0)]),
    "lemma5": (_lemma5, [{"delta": d} for d in (0.3, 0.5, 0.7, 0.9, 1.0)]),
    "lemma6": (_lemma6, [{"delta": 0.5, "delta_prime": 1.0}, {"delta": 0.4, "delta_prime": 0.8},
                         {"delta": 0.9, "delta_prime": 1.0}]),
    "lemma7": (_lemma7, [{"alpha": 1.0, "alpha_prime": 2.0}, {"alpha": 0.8, "alpha_prime": 1.5},
                         {"alpha": 1.9, "alpha_prime": 2.0}]),
    "lemma8": (_lemma8, [{"gamma": 0.5, "gamma_prime": 2.0}, {"gamma": 1.0, "gamma_prime": 3.0}]),
    "theorem1": (_theorem1, [{"alpha0": 1.6, "alpha_prime": 0.75}, {"alpha0": 2.0, "alpha_prime": 0.5}]),
    "theorem2": (_theorem2, [{"alpha": a} for a in (2.0, 1.0, 0.5)]),
    "theorem3": (_theorem3, [{"delta": d} for d in (0.3, 0.5, 0.7, 0.9)]),
    "corollary2": (_corollary2, [{"delta": d} for d in (0.3, 0.5, 0.7, 0.9)]),
    "corollary3": (_corollary3, [{"alpha": a} for a in (0.5, 1.0, 1.5)]),
    "corollary4": (_corollary4, [{"alpha": a} for a in (0.5, 1.0, 1.5, 2.0)]),
    "corollary5": (_corollary5, [{"alpha": a} for a in (0.3, 0.5, 0.7)]),
    "corollary5_cdf": (_corollary5_cdf, [{"alpha": a} for a in (0.3, 0.5, 0.7)]),
    "ml_methods": (_ml_methods, [{"delta": d, "pair": p} for d in (0.3, 0.5, 0.7, 0.9) for p in (1, 2, 3)]),
    "linnik_methods": (_linnik_methods, [{"alpha": a, "pair": p} for a in (0.5, 1.0, 1.5) for p in (1, 2, 3)]
                       + [{"alpha": 2.0, "pair": 1}]),  # laplace_q needs alpha < 2
    "negative_control": (_negative_control, [{"alpha": 1.0}]),
}

IDENTITY_IDS = tuple(_REGISTRY)

# "all" is every identity with a true claim; the negative control is opt-in
SUITES = {
    "all": tuple(i for i in IDENTITY_IDS if i != "negative_control"),
}


def make_case(identity_id, **params):
    """A single case; missing parameters fall back to the first grid point."""
    if identity_id not in _REGISTRY:
        raise KeyError(identity_id)
    fn, grid = _REGISTRY[identity_id]
    merged = dict(grid[0])
    unknown = set(params) - set(merged)
    if unknown:
        raise ValueError(f"{identity_id} takes parameters {sorted(merged)}, got {sorted(unknown)}")
    merged.update({k: float(v) for k, v in params.items()})
    return Case(identity_id, tuple(merged.items()))


def build_cases(config):
    """Cases for a suite name, a single identity id, or ``"none"`` (empty)."""
    if config in ("none", ""):
        return []
    ids = SUITES.get(config)
    if ids is None:
        if config not in _REGISTRY:
            raise KeyError(config)
        ids = (config,)
    return [Case(i, tuple((k, float(v)) for k, v in p.items())) for i in ids for p in _REGISTRY[i][1]]


def run_case(case, n, rng, level=stattest.DEFAULT_LEVEL, name=None):
    fn, _ = _REGISTRY[case.id]
    kind, lhs, other = fn(n, rng, **case.kwargs())
    name = name or case.name
    if kind == "two":
        return stattest.two_sample_report(name, lhs, other, rng, level)
    return stattest.one_sample_report(name, lhs, other, rng, level)
