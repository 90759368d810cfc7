import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from linnikmix.families import FAMILIES, DistributionSpec, SampleBatch, SpecError, evaluate, sample

VALID = [
    "normal",
    "exponential",
    "weibull:gamma=1.5",
    "laplace",
    "stable_sym:alpha=1.3",
    "stable_pos:alpha=0.5",
    "mittag_leffler:delta=0.5,method=k_exponential",
    "linnik:alpha=1.2,method=general_product,alpha0=1.6",
    "linnik:alpha=0.7",
    "k_rho:rho=0.3",
    "q:alpha=0.6,alpha_prime=1.4",
    "ratio_stable:alpha=0.5",
]


@pytest.mark.parametrize("text", VALID)
def test_roundtrip_and_sampling(text):
    spec = DistributionSpec.parse(text)
    assert DistributionSpec.parse(spec.to_text()) == spec
    b1 = SampleBatch.generate(spec, 50, 11)
    b2 = SampleBatch.generate(spec, 50, 11)
    assert b1.values.shape == (50,) and np.array_equal(b1.values, b2.values)


def test_all_families_covered():
    assert {DistributionSpec.parse(t).family for t in VALID} == set(FAMILIES)


@given(st.floats(0.01, 2.0))
def test_float_roundtrip_exact(alpha):
    spec = DistributionSpec.make("linnik", alpha=alpha)
    assert DistributionSpec.parse(spec.to_text()).get("alpha") == alpha


def test_parameter_order_is_canonical():
    a = DistributionSpec.parse("q:alpha_prime=1.4,alpha=0.6")
    assert a.to_text() == "q:alpha=0.6,alpha_prime=1.4"


@pytest.mark.parametrize("text,needle", [
    ("linnik:alpha=2.5", "(0, 2]"),
    ("linnik:beta=1", "'beta'"),
    ("linnik", "needs parameter 'alpha'"),
    ("linnik:alpha=x", "'alpha' needs a number"),
    ("linnik:alpha=1,method=fast", "unknown method 'fast'"),
    ("linnik:alpha=1,alpha0=2", "general_product"),
    ("cauchy", "unknown family"),
    ("q:alpha=1.5,alpha_prime=1", "alpha < alpha_prime"),
    ("k_rho:rho=1", "(0, 1)"),
    ("weibull:gamma=0", "gamma"),
])
def test_invalid_specs(text, needle):
    with pytest.raises(SpecError) as exc:
        DistributionSpec.parse(text)
    assert needle in str(exc.value)


def test_evaluate_values():
    assert evaluate(DistributionSpec.parse("linnik:alpha=1"), "cf", [1.0])[0] == 0.5
    assert evaluate(DistributionSpec.parse("ratio_stable:alpha=0.5"), "pdf", [1.0])[0] == pytest.approx(
        1 / (2 * math.pi), rel=1e-14)
    cdf = evaluate(DistributionSpec.parse("mittag_leffler:delta=0.5"), "cdf", np.arange(0, 10.05, 0.1))
    assert cdf[0] == 0 and np.all(np.diff(cdf) > 0)
    pdf = evaluate(DistributionSpec.parse("k_rho:rho=0.5"), "pdf", [-1.0, 0.0, 1.0])
    assert list(pdf[:2]) == [0.0, 0.0] and pdf[2] == pytest.approx(1 / math.pi)
    assert evaluate(DistributionSpec.parse("stable_pos:alpha=0.5"), "laplace", [4.0])[0] == pytest.approx(
        math.exp(-2))


def test_unsupported_function():
    with pytest.raises(SpecError) as exc:
        evaluate(DistributionSpec.parse("stable_sym:alpha=1.5"), "pdf", [1.0])
    assert "supported: cf" in str(exc.value)


def test_sample_direct(rng):
    x = sample(DistributionSpec.parse("stable_pos:alpha=1"), 5, rng)
    assert np.all(x == 1.0) and x.shape == (5,)
