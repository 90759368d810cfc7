import pytest

from linnikmix import identities, stattest
from linnikmix.elementary import RngState


def test_case_names():
    c = identities.Case("lemma6", (("delta", 0.4), ("delta_prime", 0.8)))
    assert c.name == "lemma6[delta=0.4,delta_prime=0.8]"
    assert identities.Case("eq21").name == "eq21"


def test_all_suite_covers_every_claim():
    ids = {c.id for c in identities.build_cases("all")}
    expected = {"eq8", "eq9", "eq21", "eq24", "theorem1", "theorem2", "theorem3"}
    expected |= {f"lemma{k}" for k in range(1, 9)} | {f"corollary{k}" for k in range(2, 6)}
    assert expected <= ids
    assert "negative_control" not in ids


def test_names_unique():
    names = [c.name for c in identities.build_cases("all")]
    assert len(names) == len(set(names))


def test_unknown_id():
    with pytest.raises(KeyError):
        identities.build_cases("lemma99")
    with pytest.raises(KeyError):
        identities.make_case("lemma99")


def test_make_case_overrides():
    c = identities.make_case("lemma6", delta=0.4, delta_prime=0.8)
    assert c.kwargs() == {"delta": 0.4, "delta_prime": 0.8}
    c = identities.make_case("lemma6", delta=0.3)
    assert c.kwargs()["delta_prime"] == 1.0
    with pytest.raises(ValueError):
        identities.make_case("lemma6", gamma=2.0)


def test_invalid_parameters_raise():
    with pytest.raises(ValueError):
        identities.run_case(identities.make_case("lemma6", delta=0.9, delta_prime=0.5), 100, RngState(1))
    with pytest.raises(ValueError):
        identities.run_case(identities.make_case("lemma8", gamma=3.0, gamma_prime=2.0), 100, RngState(1))


def test_negative_control_is_detected():
    r = identities.run_case(identities.make_case("negative_control"), 10**5, RngState(2))
    assert not r.passed


@pytest.mark.slow
def test_full_suite_passes():
    reports = stattest.run_identity_suite("all", seed=1, n=10**5)
    assert stattest.suite_passed(reports), [r.test_name for r in reports if not r.passed]
