import csv
import json
import random
from pathlib import Path

import pytest

from wordseries import cli
from wordseries import coefficients as cf
from wordseries.algebra import random_character
from wordseries.config import load_model_config, parse_model_config
from wordseries.errors import ConfigError
from wordseries.extended import nu_word
from wordseries.serialize import coeffmap_from_json, coeffmap_to_json, read_json, write_json

MODELS = Path(__file__).resolve().parents[1] / "models"
SHIPPED = sorted(MODELS.glob("*.toml"))

MINIMAL = """\
name = "line"
dim = 1

[[generators]]
field = [[{c = 1, m = [1]}]]

[[letters]]
nu = [1]
field = [[{c = "1/2", m = [2]}]]

[frequency]
values = ["2"]
"""


# -- serialization ------------------------------------------------------------

def test_json_roundtrip_exact_and_float(tmp_path):
    m = random_character(2, 3, random.Random(0))
    write_json(tmp_path / "m.json", coeffmap_to_json(m, nonzero_only=False))
    assert coeffmap_from_json(read_json(tmp_path / "m.json")) == m
    f = m.to_float()
    assert coeffmap_from_json(json.loads(json.dumps(coeffmap_to_json(f)))) == f


def test_json_entry_layout():
    m = random_character(2, 1, random.Random(1))
    e = coeffmap_to_json(m)["entries"][0]
    assert set(e) == {"word", "num_re", "den_re", "num_im", "den_im"}


def test_malformed_json():
    with pytest.raises(ConfigError):
        coeffmap_from_json({"alphabet_size": 2, "order": 1, "mode": "exact", "entries": [{"word": [0]}]})


# -- config -------------------------------------------------------------------

def test_minimal_config():
    cfg = parse_model_config(MINIMAL)
    assert cfg.model.alphabet_size == 1 and cfg.v.exact == (cf.gauss(2),)
    assert cfg.experiment.order == 3
    assert cfg.beta(2)[(0,)] == cf.gauss(1)


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
def test_shipped_models_load(path):
    cfg = load_model_config(path)
    assert cfg.model.alphabet_size >= 1


@pytest.mark.parametrize("patch,line", [
    (("nu = [1]", "nu = [1, 2]"), 8),
    (('c = "1/2"', "c = 0.5"), 9),
    (('values = ["2"]', 'values = ["2", "3"]'), 12),
    (('name = "line"', 'name = "line"\nkind = "bogus"'), 2),
    (("dim = 1", "dim = 1\nbogus = 3"), None),
])
def test_config_errors_carry_line_numbers(patch, line):
    with pytest.raises(ConfigError) as info:
        parse_model_config(MINIMAL.replace(*patch))
    if line is not None:
        assert info.value.line == line and f"line {line}" in str(info.value)


def test_experiment_validation():
    bad = MINIMAL + "\n[experiment]\neps = [0.05, 0.1]\n"
    with pytest.raises(ConfigError):
        parse_model_config(bad)
    with pytest.raises(ConfigError):
        parse_model_config(MINIMAL + "\n[experiment]\norder = 0\n")


def test_toml_syntax_error():
    with pytest.raises(ConfigError):
        parse_model_config(MINIMAL + "\n[[letters\n")


# -- CLI ----------------------------------------------------------------------

def run(*args):
    return cli.main([str(a) for a in args])


@pytest.mark.parametrize("path", SHIPPED, ids=lambda p: p.stem)
def test_verify_shipped_models(path, tmp_path):
    assert run("verify", "--model", path, "--order", 3, "--out", tmp_path) == 0
    report = json.loads((tmp_path / "verify.json").read_text())
    assert report["ok"] and all(s["ok"] for s in report["suites"].values())


def test_verify_flags_mutated_frequency(tmp_path):
    text = (MODELS / "saddle_explicit.toml").read_text().replace("nu = [0, 1]", "nu = [1, 1]")
    path = tmp_path / "mutated.toml"
    path.write_text(text)
    assert run("verify", "--model", path, "--out", tmp_path) == 2
    report = json.loads((tmp_path / "verify.json").read_text())
    assert not report["suites"]["assumption"]["ok"]
    assert report["suites"]["assumption"]["detail"]["failed_letters"] == [1]


def test_normal_form_and_independent_residual_check(tmp_path):
    model = MODELS / "pendulum_like.toml"
    assert run("normal-form", "--model", model, "--order", 4, "--out", tmp_path) == 0
    for name in ("normal_form.json", "kappa.json", "beta_hat.json", "resonant_words.txt", "summary.txt"):
        assert (tmp_path / name).exists()
    meta = json.loads((tmp_path / "normal_form.json").read_text())["metadata"]
    assert meta["resonant_word_count"] > 0
    assert run("check-residual", "--model", model, "--in", tmp_path) == 0


def test_broken_gauge_fails_residual_check(tmp_path):
    model = MODELS / "pendulum_like.toml"
    run("normal-form", "--model", model, "--order", 3, "--out", tmp_path)
    cfg = load_model_config(model)
    kappa = coeffmap_from_json(read_json(tmp_path / "kappa.json"))
    w = next(w for w in kappa.words if w and nu_word(cfg.v, w)[1])
    obj = coeffmap_to_json(kappa, nonzero_only=False)
    for e in obj["entries"]:
        if tuple(e["word"]) == w:
            e["num_re"] += e["den_re"]
    write_json(tmp_path / "kappa.json", obj)
    assert run("check-residual", "--model", model, "--in", tmp_path) == 2


def test_nonresonant_model_reports_trivial_normal_form(tmp_path):
    path = tmp_path / "line.toml"
    path.write_text(MINIMAL)
    assert run("normal-form", "--model", path, "--out", tmp_path) == 0
    assert "beta_hat = 0" in (tmp_path / "summary.txt").read_text()
    assert (tmp_path / "resonant_words.txt").read_text().count("\n") == 1


def test_decompose_and_invariants(tmp_path):
    model = MODELS / "action_angle.toml"
    assert run("decompose", "--model", model, "--out", tmp_path) == 0
    assert run("invariants", "--model", model, "--out", tmp_path) == 0
    inv = json.loads((tmp_path / "invariants.json").read_text())
    assert inv["dim_V"] == 1
    assert run("invariants", "--model", MODELS / "saddle.toml", "--out", tmp_path) == 1


def test_drift_command(tmp_path):
    assert run("drift", "--model", MODELS / "action_angle.toml", "--out", tmp_path) == 0
    with open(tmp_path / "drift.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert {r["invariant"] for r in rows} == {"u0", "control"}
    assert len(rows) == 6


def test_flow_compare_command(tmp_path):
    model = MODELS / "pendulum_like.toml"
    assert run("flow-compare", "--model", model, "--order", 2, "--eps", "0.1,0.05,0.025", "--out", tmp_path) == 0
    assert (tmp_path / "flow.csv").exists()


def test_missing_model_file(tmp_path):
    assert run("verify", "--model", tmp_path / "nope.toml", "--out", tmp_path) == 1


def test_bad_order(tmp_path):
    assert run("normal-form", "--model", MODELS / "saddle.toml", "--order", 0, "--out", tmp_path) == 1


def test_small_divisor_exit_code(tmp_path):
    """A letter whose frequency is exactly 2πi cannot be logged back."""
    text = MINIMAL.replace('values = ["2"]', 'model = "generic"\nvalues = [[0.0, 6.283185307179586]]')
    path = tmp_path / "resonant_map.toml"
    path.write_text(text)
    assert run("verify", "--model", path, "--out", tmp_path) == 3
