"""Base random variates and the Weibull family.

Every sampler takes a ``size`` and an ``rng`` argument.  ``rng`` may be an
:class:`RngState`, a :class:`numpy.random.Generator`, an integer seed or
``None`` (fresh entropy).  Samplers draw only from the generator they are
given, so one state per worker is enough for parallel use.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = [
    "RngState",
    "as_generator",
    "stream_for",
    "uniform_open",
    "sample_uniform",
    "sample_normal",
    "sample_exponential",
    "sample_weibull",
    "sample_laplace",
    "weibull_sf",
    "weibull_cdf",
    "laplace_cdf",
    "laplace_pdf",
    "check_gamma",
]

_MASK64 = (1 << 64) - 1


class RngState:
    """Reproducible random stream identified by ``(seed, stream)``.

    Two states built from the same pair produce identical draw sequences.
    Distinct ``stream`` values for the same seed are independent substreams
    (``numpy.random.SeedSequence`` spawn keys), so ``RngState(seed, k)`` for
    ``k = 0, 1, 2, ...`` can be handed to parallel workers.
    """

    __slots__ = ("seed", "stream", "_gen")

    def __init__(self, seed: int = 0, stream: int = 0):
        if not 0 <= int(seed) <= _MASK64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
        if not 0 <= int(stream) <= _MASK64:
            raise ValueError(f"stream must be a 64-bit unsigned integer, got {stream}")
        self.seed = int(seed)
        self.stream = int(stream)
        self._gen = None

    @property
    def generator(self) -> np.random.Generator:
        if self._gen is None:
            ss = np.random.SeedSequence(self.seed, spawn_key=(self.stream,))
            self._gen = np.random.Generator(np.random.PCG64(ss))
        return self._gen

    def spawn(self, stream: int) -> "RngState":
        """Fresh state on the same seed with another substream index."""
        return RngState(self.seed, stream)

    def __repr__(self):
        return f"RngState(seed={self.seed}, stream={self.stream})"

    def __eq__(self, other):
        if not isinstance(other, RngState):
            return NotImplemented
        return (self.seed, self.stream) == (other.seed, other.stream)

    def __hash__(self):
        return hash((self.seed, self.stream))


def as_generator(rng=None) -> np.random.Generator:
    if isinstance(rng, RngState):
        return rng.generator
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


def stream_for(name: str) -> int:
    """Deterministic 64-bit stream index derived from a text label."""
    digest = hashlib.blake2b(name.encode("utf8"), digest_size=8).digest()
    return int.from_bytes(digest, "little")


def uniform_open(size=None, rng=None):
    """Uniform draws on the open interval (0, 1).

    Built from 53 random bits as ``(k + 1/2) / 2**53`` so neither endpoint
    can occur; inverse-CDF transforms may take logs of either ``u`` or
    ``1 - u`` without guarding.
    """
    gen = as_generator(rng)
    k = gen.integers(0, 1 << 53, size=size, dtype=np.int64)
    return (k + 0.5) * (1.0 / (1 << 53))


def sample_uniform(size=None, rng=None):
    return uniform_open(size, rng)


def sample_normal(size=None, rng=None):
    """Standard normal draws (numpy's ziggurat)."""
    return as_generator(rng).standard_normal(size)


def sample_exponential(size=None, rng=None):
    """Standard exponential draws by inversion, ``-log(u)``."""
    return -np.log(uniform_open(size, rng))


def check_gamma(gamma):
    if not (np.isfinite(gamma) and gamma > 0):
        raise ValueError(f"Weibull shape gamma must be > 0, got {gamma}")


def sample_weibull(gamma, size=None, rng=None):
    """Weibull draws with survival function ``exp(-x**gamma)``.

    Inverse CDF: ``x = (-log u) ** (1/gamma)``.
    """
    check_gamma(gamma)
    e = sample_exponential(size, rng)
    if gamma == 1:
        return e
    return e ** (1.0 / gamma)


def sample_laplace(size=None, rng=None):
    """Draws from the Laplace density ``exp(-|x|) / 2``.

    Inversion of the symmetric CDF: a uniform on (0, 1) picks both the sign
    (``u < 1/2``) and the magnitude ``-log(2 min(u, 1-u))``.
    """
    u = uniform_open(size, rng)
    mag = -np.log(2.0 * np.minimum(u, 1.0 - u))
    return np.where(u < 0.5, -mag, mag)


def weibull_sf(gamma, x):
    """Weibull survival function ``exp(-x**gamma)`` for ``x >= 0``."""
    check_gamma(gamma)
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("weibull_sf is defined for x >= 0")
    out = np.exp(-(x**gamma))
    return float(out) if out.ndim == 0 else out


def weibull_cdf(gamma, x):
    check_gamma(gamma)
    x = np.asarray(x, dtype=float)
    out = -np.expm1(-(np.maximum(x, 0.0) ** gamma))
    return float(out) if out.ndim == 0 else out


def laplace_pdf(x):
    x = np.asarray(x, dtype=float)
    out = 0.5 * np.exp(-np.abs(x))
    return float(out) if out.ndim == 0 else out


def laplace_cdf(x):
    x = np.asarray(x, dtype=float)
    half = 0.5 * np.exp(-np.abs(x))
    out = np.where(x < 0, half, 1.0 - half)
    return float(out) if out.ndim == 0 else out

