"""Text-addressable distribution descriptions.

A :class:`DistributionSpec` names a family, its parameters and an optional
sampler method, and round-trips through a compact text form::

    linnik:alpha=1.2,method=general_product,alpha0=1.6
    mittag_leffler:delta=0.5
    normal

:func:`sample` and :func:`evaluate` dispatch on the family.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy import special

from . import linnik, mittag_leffler as ml, stable
from .elementary import (
    RngState,
    laplace_cdf,
    laplace_pdf,
    sample_exponential,
    sample_laplace,
    sample_normal,
    sample_weibull,
    weibull_cdf,
)

__all__ = ["DistributionSpec", "SampleBatch", "SpecError", "FAMILIES", "FUNCTIONS", "sample", "evaluate"]


class SpecError(ValueError):
    pass


# family -> (required params, optional params, sampler methods)
_PARAMS = {
    "normal": ((), (), ()),
    "exponential": ((), (), ()),
    "weibull": (("gamma",), (), ()),
    "laplace": ((), (), ()),
    "stable_sym": (("alpha",), (), ()),
    "stable_pos": (("alpha",), (), ()),
    "mittag_leffler": (("delta",), (), ml.ML_METHODS),
    "linnik": (("alpha",), ("alpha0", "alpha_prime"), linnik.LINNIK_METHODS),
    "k_rho": (("rho",), (), ()),
    "q": (("alpha", "alpha_prime"), (), ()),
    "ratio_stable": (("alpha",), (), ()),
}
FAMILIES = tuple(_PARAMS)
FUNCTIONS = ("pdf", "cdf", "cf", "laplace")


def _validate(family, p, method):
    if family == "weibull":
        if not p["gamma"] > 0:
            raise SpecError(f"weibull gamma must be > 0, got {p['gamma']}")
    elif family == "stable_sym":
        if not 0 < p["alpha"] <= 2:
            raise SpecError(f"stable_sym alpha must lie in (0, 2], got {p['alpha']}")
    elif family == "stable_pos":
        if not 0 < p["alpha"] <= 1:
            raise SpecError(f"stable_pos alpha must lie in (0, 1], got {p['alpha']}")
    elif family == "mittag_leffler":
        if not 0 < p["delta"] <= 1:
            raise SpecError(f"mittag_leffler delta must lie in (0, 1], got {p['delta']}")
    elif family == "linnik":
        if not 0 < p["alpha"] <= 2:
            raise SpecError(f"linnik alpha must lie in (0, 2], got {p['alpha']}")
        extra = {"alpha0", "alpha_prime"} & set(p)
        if extra and method != "general_product":
            raise SpecError(f"{', '.join(sorted(extra))} only apply to method=general_product")
        if method == "general_product" and not extra:
            raise SpecError("method=general_product needs alpha0 or alpha_prime")
    elif family == "k_rho":
        if not 0 < p["rho"] < 1:
            raise SpecError(f"k_rho rho must lie in (0, 1), got {p['rho']}")
    elif family == "q":
        if not 0 < p["alpha"] < p["alpha_prime"] <= 2:
            raise SpecError(f"q needs 0 < alpha < alpha_prime <= 2, got alpha={p['alpha']}, "
                            f"alpha_prime={p['alpha_prime']}")
    elif family == "ratio_stable":
        if not 0 < p["alpha"] < 1:
            raise SpecError(f"ratio_stable alpha must lie in (0, 1), got {p['alpha']}")


@dataclasses.dataclass(frozen=True)
class DistributionSpec:
    family: str
    params: tuple = ()
    method: str | None = None

    def __post_init__(self):
        if self.family not in _PARAMS:
            raise SpecError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        required, optional, methods = _PARAMS[self.family]
        p = dict(self.params)
        for key in p:
            if key not in required and key not in optional:
                raise SpecError(f"family {self.family} has no parameter {key!r}")
        for key in required:
            if key not in p:
                raise SpecError(f"family {self.family} needs parameter {key!r}")
        if self.method is not None and self.method not in methods:
            choices = ", ".join(methods) if methods else "none"
            raise SpecError(f"unknown method {self.method!r} for {self.family} (choices: {choices})")
        # canonical parameter order keeps the text form unique
        order = required + optional
        object.__setattr__(self, "params", tuple((k, float(p[k])) for k in order if k in p))
        _validate(self.family, dict(self.params), self.method)

    @classmethod
    def make(cls, family, method=None, **params):
        return cls(family, tuple(params.items()), method)

    def get(self, key, default=None):
        return dict(self.params).get(key, default)

    def to_text(self):
        items = [f"{k}={v!r}" for k, v in self.params]
        if self.method is not None:
            items.insert(len(_PARAMS[self.family][0]), f"method={self.method}")
        return self.family + (":" + ",".join(items) if items else "")

    __str__ = to_text

    @classmethod
    def parse(cls, text):
        family, _, rest = text.strip().partition(":")
        params, method = {}, None
        for item in filter(None, (s.strip() for s in rest.split(","))):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq:
                raise SpecError(f"expected key=value in spec, got {item!r}")
            if key == "method":
                method = value.strip()
                continue
            try:
                params[key] = float(value)
            except ValueError:
                raise SpecError(f"parameter {key!r} needs a number, got {value!r}") from None
        return cls(family.strip(), tuple(params.items()), method)


@dataclasses.dataclass(frozen=True)
class SampleBatch:
    spec: DistributionSpec
    n: int
    seed: int
    values: np.ndarray = dataclasses.field(compare=False, repr=False)

    @classmethod
    def generate(cls, spec, n, seed):
        return cls(spec, int(n), int(seed), sample(spec, int(n), RngState(seed, 0)))


def sample(spec, n, rng=None):
    f, p = spec.family, dict(spec.params)
    if f == "normal":
        return sample_normal(n, rng)
    if f == "exponential":
        return sample_exponential(n, rng)
    if f == "weibull":
        return sample_weibull(p["gamma"], n, rng)
    if f == "laplace":
        return sample_laplace(n, rng)
    if f == "stable_sym":
        return stable.sample_sym_stable(p["alpha"], n, rng)
    if f == "stable_pos":
        return np.broadcast_to(stable.sample_pos_stable(p["alpha"], n, rng), (n,)).copy()
    if f == "mittag_leffler":
        return ml.sample_ml(p["delta"], n, rng, spec.method or "stable_weibull")
    if f == "linnik":
        return linnik.sample_linnik(p["alpha"], n, rng, spec.method or "normal_ml",
                                    alpha0=p.get("alpha0"), alpha_prime=p.get("alpha_prime"))
    if f == "k_rho":
        return ml.sample_k(p["rho"], n, rng)
    if f == "q":
        return linnik.sample_q(p["alpha"], p["alpha_prime"], n, rng)
    if f == "ratio_stable":
        return linnik.sample_stable_ratio(p["alpha"], n, rng)
    raise SpecError(f"no sampler for {f}")  # unreachable: families are validated


def _positive(fn):
    """Extend a density defined on x > 0 by zero."""
    def wrapped(x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        pos = x > 0
        out[pos] = fn(x[pos])
        return out
    return wrapped


def _evaluators(spec):
    f, p = spec.family, dict(spec.params)
    if f == "normal":
        return {"pdf": lambda x: np.exp(-0.5 * x * x) / math.sqrt(2 * math.pi),
                "cdf": special.ndtr, "cf": lambda t: np.exp(-0.5 * t * t)}
    if f == "exponential":
        return {"pdf": lambda x: np.where(x >= 0, np.exp(-np.abs(x)), 0.0),
                "cdf": lambda x: weibull_cdf(1.0, x), "laplace": lambda s: 1.0 / (1.0 + s)}
    if f == "weibull":
        g = p["gamma"]
        return {"pdf": _positive(lambda x: g * x ** (g - 1) * np.exp(-(x**g))),
                "cdf": lambda x: weibull_cdf(g, x)}
    if f == "laplace":
        return {"pdf": laplace_pdf, "cdf": laplace_cdf, "cf": lambda t: 1.0 / (1.0 + t * t)}
    if f == "stable_sym":
        return {"cf": lambda t: stable.stable_cf(p["alpha"], 0.0, t)}
    if f == "stable_pos":
        out = {"laplace": lambda s: stable.pos_stable_laplace(p["alpha"], s)}
        if p["alpha"] == 0.5:
            out["pdf"] = _positive(stable.levy_pdf)
            out["cdf"] = _positive(stable.levy_cdf)
        return out
    if f == "mittag_leffler":
        d = p["delta"]
        return {"pdf": _positive(lambda x: ml.ml_pdf(d, x)),
                "cdf": lambda x: ml.ml_cdf(d, np.maximum(x, 0.0)),
                "laplace": lambda s: ml.ml_laplace(d, s)}
    if f == "linnik":
        a = p["alpha"]
        return {"pdf": lambda x: linnik.linnik_pdf(a, x), "cdf": lambda x: linnik.linnik_cdf(a, x),
                "cf": lambda t: linnik.linnik_cf(a, t)}
    if f == "k_rho":
        r = p["rho"]
        return {"pdf": _positive(lambda x: ml.k_pdf(r, x)), "cdf": lambda x: ml.k_cdf(r, np.maximum(x, 0.0))}
    if f == "q":
        a, ap = p["alpha"], p["alpha_prime"]
        return {"pdf": _positive(lambda x: linnik.q_pdf(a, ap, x)), "cdf": lambda x: linnik.q_cdf(a, ap, x)}
    if f == "ratio_stable":
        a = p["alpha"]
        return {"pdf": _positive(lambda x: linnik.ratio_stable_pdf(a, x)),
                "cdf": lambda x: linnik.ratio_stable_cdf(a, x)}
    return {}


def supported_functions(spec):
    return tuple(k for k in FUNCTIONS if k in _evaluators(spec))


def evaluate(spec, function, grid):
    """Evaluate ``function`` of ``spec`` on ``grid``; raises SpecError if unsupported."""
    table = _evaluators(spec)
    if function not in table:
        raise SpecError(
            f"family {spec.family} does not support function {function!r} "
            f"(supported: {', '.join(supported_functions(spec)) or 'none'})"
        )
    x = np.asarray(grid, dtype=float)
    return np.asarray(table[function](x), dtype=float).reshape(x.shape)
