import json
from pathlib import Path

import pytest

from feynman_silt import EXPERIMENTS, experiment_class
from feynman_silt.errors import ConfigError
from feynman_silt.experiments.chaos import ChaosVerifyExperiment
from feynman_silt.experiments.common.config import coerce, coerce_parameters, load_config, parse_config
from feynman_silt.experiments.scaled import DosExperiment, PropagatorExperiment
from feynman_silt.experiments.silt import SiltConvergenceExperiment, SiltMeanExperiment

SCRIPTS = Path(__file__).resolve().parents[2] / "scripts"

CONFIG = """
[experiment]
kind = silt-mean
seed = 1234
output = results/mean
shards = 4

[parameters]
T = 2.0
eps = 0.1, 0.01
grid_n = 1e3
process = motion
"""


def test_parse_config():
    config = parse_config(CONFIG)
    assert config.kind == "silt-mean"
    assert config.seed == 1234
    assert config.output == "results/mean"
    assert config.shards == 4
    assert config.workers is None
    assert config.parameters == {"T": "2.0", "eps": "0.1, 0.01", "grid_n": "1e3", "process": "motion"}


def test_experiment_from_config():
    experiment = SiltMeanExperiment.from_config(parse_config(CONFIG))
    assert experiment.config["T"] == 2.
    assert experiment.config["eps"] == [0.1, 0.01]
    assert experiment.config["grid_n"] == 1000
    assert experiment.config["process"] == "motion"
    assert experiment.config["shards"] == 4
    assert experiment.config["n_samples"] == SiltMeanExperiment.default_config()["n_samples"]
    with pytest.raises(ConfigError):
        DosExperiment.from_config(parse_config(CONFIG))


@pytest.mark.parametrize("text", [
    "[parameters]\nT = 1",
    "[experiment]\nkind = silt-mean",
    "[experiment]\nseed = 1",
    "[experiment]\nkind = silt-mean\nseed = -1",
    "[experiment]\nkind = silt-mean\nseed = 1.5",
    "[experiment]\nkind = silt-mean\nseed = 1\nshards = 0",
    "[experiment]\nkind = silt-mean\nseed = 1\ncolour = blue",
    "[experiment]\nkind = silt-mean\nseed = 1\n[extra]\nx = 1",
    "kind = silt-mean",
])
def test_invalid_config_text(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_workers_setting():
    assert parse_config("[experiment]\nkind = dos\nseed = 1\nworkers = 3").workers == 3
    assert parse_config("[experiment]\nkind = dos\nseed = 1\nworkers = none").workers is None


@pytest.mark.parametrize("key, raw, default, expected", [
    ("eps", "0.1, 0.01,", [1e-3], [0.1, 0.01]),
    ("eps", [0.1, 0.01], [1e-3], [0.1, 0.01]),
    ("g", "0", [0., 1.], [0.]),
    ("grid_n", "1e5", 1, 100000),
    ("grid_n", 64, 1, 64),
    ("flag", "Yes", False, True),
    ("flag", "off", True, False),
    ("damping_time", "none", None, None),
    ("damping_time", None, None, None),
    ("damping_time", "2", None, 2.),
    ("T", " 1.5 ", 1., 1.5),
    ("process", " motion ", "bridge", "motion"),
])
def test_coerce(key, raw, default, expected):
    assert coerce(key, raw, default) == expected


@pytest.mark.parametrize("raw, default", [("1.5", 1), (True, 1), ("maybe", False), ("fast", 1.), ("a, b", [1.])])
def test_coerce_errors(raw, default):
    with pytest.raises(ConfigError):
        coerce("key", raw, default)


def test_coerce_parameters():
    defaults = SiltMeanExperiment.default_config()
    assert coerce_parameters({"grid_n": "32"}, defaults) == {"grid_n": 32}
    with pytest.raises(ConfigError):
        coerce_parameters({"grid_size": "32"}, defaults)
    with pytest.raises(ConfigError):
        coerce_parameters({"seed": "32"}, defaults)


def test_load_config(tmp_path):
    path = tmp_path / "mean.ini"
    path.write_text(CONFIG)
    assert load_config(path).parameters["eps"] == "0.1, 0.01"
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.ini")
    manifest = tmp_path / "manifest.json"
    manifest.write_text(json.dumps({"config": {"kind": "dos", "seed": 3, "parameters": {"n_energies": 10}}}))
    config = load_config(manifest)
    assert (config.kind, config.seed, config.parameters) == ("dos", 3, {"n_energies": 10})
    manifest.write_text(json.dumps({"kind": "dos"}))
    with pytest.raises(ConfigError):
        load_config(manifest)


def test_workers_environment_default(monkeypatch):
    monkeypatch.setenv("FEYNMAN_SILT_WORKERS", "3")
    assert SiltMeanExperiment({"seed": 1}).config["workers"] == 3
    monkeypatch.setenv("FEYNMAN_SILT_WORKERS", "many")
    with pytest.raises(ConfigError):
        SiltMeanExperiment({"seed": 1})


@pytest.mark.parametrize("cls, config", [
    (SiltMeanExperiment, {}),
    (SiltMeanExperiment, {"seed": -2}),
    (SiltMeanExperiment, {"seed": 1, "eps": [0.1, -0.1]}),
    (SiltMeanExperiment, {"seed": 1, "process": "levy"}),
    (SiltMeanExperiment, {"seed": 1, "oracle": "guess"}),
    (SiltMeanExperiment, {"seed": 1, "workers": 0}),
    (SiltConvergenceExperiment, {"seed": 1, "eps": [0.01, 0.1]}),
    (SiltConvergenceExperiment, {"seed": 1, "eps": []}),
    (PropagatorExperiment, {"seed": 1, "g": [-1.]}),
    (DosExperiment, {"seed": 1, "energy_min": 2., "energy_max": 1.}),
    (DosExperiment, {"seed": 1, "damping": "lorentzian"}),
    (ChaosVerifyExperiment, {"seed": 1, "max_degree": 5}),
])
def test_invalid_experiment_config(cls, config):
    with pytest.raises(ConfigError):
        cls(config)


def test_registry():
    assert set(EXPERIMENTS) == {"silt-mean", "silt-second-moment", "silt-convergence", "exp-silt", "propagator",
                                "dos", "chaos-verify"}
    for kind in EXPERIMENTS:
        assert experiment_class(kind).kind == kind
    with pytest.raises(ConfigError):
        experiment_class("silt-variance")


def test_example_configurations():
    paths = sorted(SCRIPTS.glob("*.ini"))
    assert {load_config(path).kind for path in paths} == set(EXPERIMENTS)
    for path in paths:
        config = load_config(path)
        experiment = experiment_class(config.kind).from_config(config)
        assert experiment.config["seed"] == config.seed
