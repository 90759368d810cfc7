"""Random-sum experiments: normalised sums with a random number of terms.

For an index ``Z_n`` with ``Z_n / n => 2 M_{alpha/2}`` and i.i.d. zero-mean
summands of variance ``sigma**2``, the normalised random sum
``S_{Z_n} / (sigma sqrt(n))`` converges to the Linnik law ``L_alpha``.  With
a deterministic index ``Z_n = n`` the same sums go to the normal law instead.

Three index models:

``geometric_stable``
    ``Z_n = floor(n**(1 - 1/delta) * sum_{j <= N} Y_j)`` with ``N`` geometric
    on {1, 2, ...} with success probability ``1/n`` and ``Y_j = 2 S_{delta,1}``.
    The inner sum is drawn in one step as ``2 N**(1/delta) S`` (strict
    stability), so ``Z_n / n = 2 (N/n)**(1/delta) S`` up to the integer part.
``cox_poisson``
    ``Z_n`` Poisson with random mean ``2 n M_delta``.
``deterministic``
    ``Z_n = n``.

Summand sums given ``Z`` are drawn exactly in law where a closed form exists
(Rademacher via a binomial, normal, Laplace as a difference of gammas) and by
literal summation otherwise (uniform), subject to ``cap`` terms per
replication.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import stattest
from .elementary import RngState, as_generator, stream_for
from .linnik import linnik_cdf
from .mittag_leffler import check_delta, ml_cdf, sample_ml
from .stable import sample_pos_stable

__all__ = [
    "RandSumConfig",
    "RandSumReport",
    "ConfigError",
    "INDEX_MODELS",
    "SUMMANDS",
    "parse_summand",
    "sample_index",
    "sample_index_geometric_stable",
    "sample_index_cox",
    "sum_summands",
    "run_randsum_experiment",
    "check_index_limit",
    "read_config",
    "parse_config",
    "write_report_json",
    "write_report_csv",
]

INDEX_MODELS = ("geometric_stable", "cox_poisson", "deterministic")
# name -> variance of the unit-scale summand
SUMMANDS = {"rademacher": 1.0, "normal": 1.0, "laplace": 2.0, "uniform": 1.0}
CONFIG_KEYS = ("alpha", "n_values", "replications", "summand", "index_model", "seed", "cap")

_BLOCK = 1024
# above this, Poisson and binomial draws switch to their normal approximations
# (numpy's samplers need int64 parameters; the relative error is below 1e-7)
_BIG = 1e15


class ConfigError(ValueError):
    pass


def parse_summand(text):
    """``"name"`` or ``"name:scale=c"`` -> (name, scale)."""
    name, _, rest = text.strip().partition(":")
    name = name.strip()
    if name not in SUMMANDS:
        raise ConfigError(f"unknown summand {name!r}; choose from {sorted(SUMMANDS)}")
    scale = 1.0
    if rest:
        key, eq, val = rest.partition("=")
        if key.strip() != "scale" or not eq:
            raise ConfigError(f"summand options must be 'scale=<c>', got {rest!r}")
        scale = float(val)
        if not (math.isfinite(scale) and scale > 0):
            raise ConfigError(f"summand scale must be positive, got {val!r}")
    return name, scale


@dataclasses.dataclass(frozen=True)
class RandSumConfig:
    alpha: float
    n_values: tuple
    replications: int
    summand: str = "rademacher"
    index_model: str = "cox_poisson"
    seed: int = 1
    cap: int = 100_000_000

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        if not (0 < self.alpha <= 2):
            raise ConfigError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not self.n_values or any(n < 1 for n in self.n_values):
            raise ConfigError("n_values must be a nonempty list of positive integers")
        if any(b <= a for a, b in zip(self.n_values, self.n_values[1:])):
            raise ConfigError(f"n_values must be strictly increasing, got {list(self.n_values)}")
        if self.replications < 1:
            raise ConfigError(f"replications must be positive, got {self.replications}")
        if self.index_model not in INDEX_MODELS:
            raise ConfigError(f"unknown index_model {self.index_model!r}; choose from {list(INDEX_MODELS)}")
        if self.index_model == "geometric_stable" and self.alpha >= 2:
            raise ConfigError("geometric_stable index needs alpha < 2 (delta < 1)")
        if self.cap < 1:
            raise ConfigError(f"cap must be positive, got {self.cap}")
        parse_summand(self.summand)

    @property
    def delta(self):
        return self.alpha / 2.0

    @property
    def sigma(self):
        name, scale = parse_summand(self.summand)
        return scale * math.sqrt(SUMMANDS[name])

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["n_values"] = list(self.n_values)
        return d


@dataclasses.dataclass
class RandSumReport:
    config: dict
    n_values: list
    ks_sum: list
    p_sum: list
    ks_index: list
    p_index: list
    ks_normal: list
    p_normal: list
    truncated: list
    nonincreasing: bool
    nonincreasing_within_noise: bool
    level: float = stattest.DEFAULT_LEVEL

    @property
    def linnik_passed(self):
        return self.p_sum[-1] >= self.level

    @property
    def index_passed(self):
        return self.p_index[-1] >= self.level

    @property
    def normal_passed(self):
        return self.p_normal[-1] >= self.level

    def to_dict(self):
        d = dataclasses.asdict(self)
        d["linnik_passed"] = self.linnik_passed
        d["index_passed"] = self.index_passed
        d["normal_passed"] = self.normal_passed
        return d


# --------------------------------------------------------------------------
# index models


def sample_index_geometric_stable(delta, n, size=None, rng=None):
    if not (0 < delta < 1):
        raise ValueError(f"geometric_stable index needs delta in (0, 1), got {delta}")
    gen = as_generator(rng)
    count = gen.geometric(1.0 / n, size=size).astype(float)
    s = sample_pos_stable(delta, size, gen)
    inner = 2.0 * count ** (1.0 / delta) * s
    return np.floor(n ** (1.0 - 1.0 / delta) * inner)


def _poisson(mean, gen):
    mean = np.asarray(mean, dtype=float)
    out = np.empty_like(mean)
    big = mean > _BIG
    out[~big] = gen.poisson(mean[~big])
    if big.any():
        out[big] = np.round(mean[big] + np.sqrt(mean[big]) * gen.standard_normal(int(big.sum())))
    return out


def sample_index_cox(delta, n, size=None, rng=None):
    check_delta(delta)
    gen = as_generator(rng)
    m = sample_ml(delta, size, gen)
    return _poisson(2.0 * n * np.asarray(m, dtype=float), gen)


def sample_index(model, delta, n, size=None, rng=None):
    if model == "geometric_stable":
        return sample_index_geometric_stable(delta, n, size, rng)
    if model == "cox_poisson":
        return sample_index_cox(delta, n, size, rng)
    if model == "deterministic":
        return np.full(size if size is not None else (), float(n))
    raise ValueError(f"unknown index model {model!r}")


# --------------------------------------------------------------------------
# sums of summands


def sum_summands(summand, z, rng=None, cap=None):
    """Sums of ``z[i]`` fresh summand draws; returns ``(sums, truncated_mask)``.

    Truncated replications (only possible for literally summed summands with
    ``z[i] > cap``) get ``nan``.
    """
    name, scale = parse_summand(summand)
    gen = as_generator(rng)
    z = np.asarray(z, dtype=float)
    truncated = np.zeros(z.shape, dtype=bool)
    if name == "rademacher":
        out = np.empty_like(z)
        big = z > _BIG
        heads = gen.binomial(z[~big].astype(np.int64), 0.5)
        out[~big] = 2.0 * heads - z[~big]
        out[big] = np.sqrt(z[big]) * gen.standard_normal(int(big.sum()))
    elif name == "normal":
        out = np.sqrt(z) * gen.standard_normal(z.shape)
    elif name == "laplace":
        out = gen.standard_gamma(z) - gen.standard_gamma(z)
    else:  # uniform on (-sqrt 3, sqrt 3), summed term by term
        out = np.empty_like(z)
        half = math.sqrt(3.0)
        for i, k in enumerate(z.ravel()):
            if cap is not None and k > cap:
                out.flat[i] = math.nan
                truncated.flat[i] = True
                continue
            out.flat[i] = math.fsum(gen.uniform(-half, half, int(k)))
    return scale * out, truncated


# --------------------------------------------------------------------------
# experiment


def _run_block(args):
    cfg, n, block, size = args
    rng = RngState(cfg.seed, stream_for(f"randsum[n={n},block={block}]"))
    z = sample_index(cfg.index_model, cfg.delta, n, size, rng)
    sums, trunc = sum_summands(cfg.summand, z, rng, cfg.cap)
    return z, sums / (cfg.sigma * math.sqrt(n)), trunc


def _simulate(cfg, n, workers):
    jobs = []
    for b, start in enumerate(range(0, cfg.replications, _BLOCK)):
        jobs.append((cfg, n, b, min(_BLOCK, cfg.replications - start)))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_block, jobs))
    else:
        parts = [_run_block(j) for j in jobs]
    z = np.concatenate([p[0] for p in parts])
    x = np.concatenate([p[1] for p in parts])
    trunc = np.concatenate([p[2] for p in parts])
    return z, x, trunc


def _index_target(delta):
    return lambda x: ml_cdf(delta, np.maximum(np.asarray(x, dtype=float), 0.0) / 2.0)


def run_randsum_experiment(cfg, level=stattest.DEFAULT_LEVEL, workers=None):
    """Simulate ``cfg.replications`` normalised random sums for each ``n``.

    For every ``n`` the sums are tested against the Linnik CDF and the
    standard normal CDF, and ``Z_n / n`` against the CDF of ``2 M_{alpha/2}``.
    """
    from scipy.special import ndtr

    if workers is None:
        workers = int(os.environ.get("LINNIKMIX_WORKERS", "1"))
    cols = {k: [] for k in ("ks_sum", "p_sum", "ks_index", "p_index", "ks_normal", "p_normal", "truncated")}
    index_cdf = _index_target(cfg.delta)
    for n in cfg.n_values:
        z, x, trunc = _simulate(cfg, n, workers)
        kept = x[~trunc]
        d, p = stattest.ks_one_sample(kept, lambda v: linnik_cdf(cfg.alpha, v))
        cols["ks_sum"].append(d)
        cols["p_sum"].append(p)
        d, p = stattest.ks_one_sample(kept, ndtr)
        cols["ks_normal"].append(d)
        cols["p_normal"].append(p)
        d, p = stattest.ks_one_sample(z / n, index_cdf)
        cols["ks_index"].append(d)
        cols["p_index"].append(p)
        cols["truncated"].append(int(trunc.sum()))
    ks = cols["ks_sum"]
    noise = 1.0 / math.sqrt(cfg.replications)
    return RandSumReport(
        config=cfg.to_dict(),
        n_values=list(cfg.n_values),
        nonincreasing=all(b <= a for a, b in zip(ks, ks[1:])),
        nonincreasing_within_noise=all(b <= a + noise for a, b in zip(ks, ks[1:])),
        level=level,
        **cols,
    )


def check_index_limit(cfg, level=stattest.DEFAULT_LEVEL):
    """One-sample KS of ``Z_n / n`` at the largest ``n`` against ``2 M_{alpha/2}``."""
    n = cfg.n_values[-1]
    rng = RngState(cfg.seed, stream_for(f"index_limit[n={n}]"))
    z = sample_index(cfg.index_model, cfg.delta, n, cfg.replications, rng)
    name = f"index_limit[model={cfg.index_model},alpha={cfg.alpha:g},n={n}]"
    return stattest.one_sample_report(name, z / n, _index_target(cfg.delta), rng, level)


# --------------------------------------------------------------------------
# config files and report writers


def parse_config(text, source="<config>"):
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not eq:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {line!r}")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}; valid keys are {', '.join(CONFIG_KEYS)}")
        if key in raw:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        raw[key] = (lineno, value)
    missing = [k for k in ("alpha", "n_values", "replications") if k not in raw]
    if missing:
        raise ConfigError(f"{source}: missing required key(s) {', '.join(missing)}")

    converters = {
        "alpha": float,
        "n_values": lambda v: tuple(int(float(p)) for p in v.replace(" ", "").split(",") if p),
        "replications": lambda v: int(float(v)),
        "summand": str,
        "index_model": str,
        "seed": int,
        "cap": lambda v: int(float(v)),
    }
    kwargs = {}
    for key, (lineno, value) in raw.items():
        try:
            kwargs[key] = converters[key](value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key!r}: {value!r} ({exc})") from None
    try:
        return RandSumConfig(**kwargs)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def read_config(path):
    with open(path, encoding="utf8") as fh:
        return parse_config(fh.read(), str(path))


def write_report_json(report, fh):
    json.dump(report.to_dict(), fh, indent=2)
    fh.write("\n")


def write_report_csv(report, fh):
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n", "ks_sum", "p_sum", "ks_index", "p_index"])
    for row in zip(report.n_values, report.ks_sum, report.p_sum, report.ks_index, report.p_index):
        w.writerow([row[0]] + [repr(float(v)) for v in row[1:]])
