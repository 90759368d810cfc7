import json

import pytest

from linnikmix.cli import main
from linnikmix import identities


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


def test_sample_output(tmp_path, capsys):
    out = tmp_path / "s.csv"
    code, _, _ = run(["sample", "--family", "linnik", "--alpha", "1.0", "--method", "normal_ml",
                      "--n", "1000", "--seed", "7", "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().splitlines()
    assert len(lines) == 1001
    assert lines[0] == '"linnik:alpha=1.0,method=normal_ml"'
    float(lines[1])


def test_sample_spec_text_matches_flags(tmp_path, capsys):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    run(["sample", "--family", "q", "--alpha", "0.5", "--alpha-prime", "1.5", "--n", "20", "--out", str(a)], capsys)
    run(["sample", "--spec", "q:alpha=0.5,alpha_prime=1.5", "--n", "20", "--out", str(b)], capsys)
    assert a.read_bytes() == b.read_bytes()


def test_sample_range_error(capsys):
    code, _, err = run(["sample", "--family", "linnik", "--alpha", "2.5"], capsys)
    assert code == 2 and "(0, 2]" in err


def test_sample_usage_errors(capsys):
    assert run(["sample"], capsys)[0] == 2
    assert run(["sample", "--family", "nope"], capsys)[0] == 2
    assert run(["sample", "--spec", "linnik:alpha=1,bad=2"], capsys)[0] == 2
    assert run(["sample", "--family", "normal", "--n", "0"], capsys)[0] == 2


def test_eval_grid(capsys):
    code, out, _ = run(["eval", "--family", "mittag_leffler", "--delta", "0.5", "--function", "cdf",
                        "--grid", "0:10:0.1"], capsys)
    assert code == 0
    rows = [line.split(",") for line in out.splitlines()[1:]]
    assert len(rows) == 101 and rows[-1][0] == "10.0"
    vals = [float(v) for _, v in rows]
    assert all(b >= a for a, b in zip(vals, vals[1:]))


def test_eval_list_and_values(capsys):
    _, out, _ = run(["eval", "--family", "linnik", "--alpha", "1", "--function", "cf", "--grid", "1"], capsys)
    assert out.splitlines()[1] == "1.0,0.5"
    _, out, _ = run(["eval", "--family", "ratio_stable", "--alpha", "0.5", "--function", "pdf",
                     "--grid", "1,2"], capsys)
    assert float(out.splitlines()[1].split(",")[1]) == pytest.approx(0.159155, abs=1e-6)


def test_eval_unsupported(capsys):
    code, _, err = run(["eval", "--family", "k_rho", "--rho", "0.5", "--function", "cf", "--grid", "1"], capsys)
    assert code == 2 and "does not support" in err
    code, _, err = run(["eval", "--family", "normal", "--function", "cdf", "--grid", "0:1"], capsys)
    assert code == 2


def test_identity_single(capsys):
    code, out, _ = run(["identity", "--id", "lemma6", "--delta", "0.4", "--delta-prime", "0.8"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 1
    rec = json.loads(lines[0])
    assert rec["test_name"] == "lemma6[delta=0.4,delta_prime=0.8]" and rec["passed"]


def test_identity_unknown(capsys):
    code, _, err = run(["identity", "--id", "lemma99"], capsys)
    assert code == 2
    for i in identities.IDENTITY_IDS:
        assert i in err


def test_identity_bad_override(capsys):
    assert run(["identity", "--id", "lemma6", "--gamma", "2"], capsys)[0] == 2
    assert run(["identity", "--id", "lemma6", "--delta", "0.9", "--delta-prime", "0.5"], capsys)[0] == 2
    assert run(["identity", "--all", "--delta", "0.5"], capsys)[0] == 2


def test_identity_negative_control_exit_1(capsys):
    code, out, _ = run(["identity", "--id", "negative_control", "--n", "20000"], capsys)
    assert code == 1 and len(out.splitlines()) == 2


def test_randsum_missing_file(tmp_path, capsys):
    code, _, err = run(["randsum", str(tmp_path / "missing.cfg")], capsys)
    assert code == 2 and "not found" in err


def test_randsum_bad_config(tmp_path, capsys):
    p = tmp_path / "bad.cfg"
    p.write_text("alpha = 1\nn_values = 10\nreplications = 10\nsumand = normal\n")
    code, _, err = run(["randsum", str(p)], capsys)
    assert code == 2 and "bad.cfg:4" in err and "'sumand'" in err


def test_randsum_small_config(tmp_path, capsys):
    p = tmp_path / "small.cfg"
    p.write_text("alpha = 1.5\nn_values = 100, 1000\nreplications = 2000\nindex_model = cox_poisson\n")
    code, _, _ = run(["randsum", str(p), "--out-dir", str(tmp_path)], capsys)
    assert code in (0, 1)
    assert (tmp_path / "small.json").exists()
    assert (tmp_path / "small.csv").read_text().startswith("n,ks_sum,p_sum,ks_index,p_index\n")
