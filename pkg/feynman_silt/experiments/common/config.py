"""
Experiment configuration files.

A configuration is an INI file with two sections::

    [experiment]
    kind = silt-mean
    seed = 1234
    output = results/silt-mean
    shards = 8

    [parameters]
    T = 1.0
    eps = 0.1, 0.01, 0.001

Parameter values are coerced to the type of the experiment defaults, lists are comma-separated.
"""
import configparser
import json
from pathlib import Path
from typing import Dict, Optional, Union

from feynman_silt.errors import ConfigError

EXPERIMENT_KEYS = ("kind", "seed", "output", "shards", "workers")
TRUE_WORDS = ("1", "true", "yes", "on")
FALSE_WORDS = ("0", "false", "no", "off")
NONE_WORDS = ("", "none", "default")


class ExperimentConfig(object):

    """
    A parsed experiment configuration: its kind, seed and output directory, and raw or typed parameters.

    :param kind: a registered experiment kind
    :param seed: the experiment seed, mandatory
    :param parameters: experiment parameters, as strings or typed values
    :param output: output directory
    :param shards: number of Monte Carlo shards
    :param workers: number of worker processes, None to use the environment default
    """

    def __init__(self, kind: str, seed: Optional[int], parameters: Optional[Dict[str, object]] = None,
                 output: str = "results", shards: int = 1, workers: Optional[int] = None) -> None:
        if not kind:
            raise ConfigError("The experiment kind is missing")
        if seed is None:
            raise ConfigError("The experiment seed is mandatory")
        self.kind = kind
        self.seed = _integer("seed", seed, minimum=0)
        self.parameters = dict(parameters or {})
        self.output = str(output)
        self.shards = _integer("shards", shards, minimum=1)
        self.workers = None if workers is None else _integer("workers", workers, minimum=1)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "output": self.output, "shards": self.shards,
                "workers": self.workers, "parameters": dict(self.parameters)}

    @classmethod
    def from_dict(cls, config: dict) -> "ExperimentConfig":
        unknown = set(config) - set(EXPERIMENT_KEYS) - {"parameters"}
        if unknown:
            raise ConfigError("Unknown experiment keys {}".format(sorted(unknown)))
        return cls(config.get("kind"), config.get("seed"), config.get("parameters"), config.get("output", "results"),
                   config.get("shards", 1), config.get("workers"))

    def __repr__(self) -> str:
        return "ExperimentConfig({}, seed={}, {})".format(self.kind, self.seed, self.parameters)


def _integer(key: str, value: object, minimum: int) -> int:
    try:
        number = coerce(key, value, 0)
    except ConfigError:
        raise ConfigError("{} must be an integer, got {!r}".format(key, value))
    if number < minimum:
        raise ConfigError("{} must be at least {}, got {}".format(key, minimum, number))
    return number


def parse_config(text: str, source: str = "<string>") -> ExperimentConfig:
    """
    Parse the text of an INI configuration.

    :param text: the configuration text
    :param source: name of the source, for error messages
    :return: the configuration, with raw string parameters
    """
    parser = configparser.ConfigParser(interpolation=None)
    parser.optionxform = str
    try:
        parser.read_string(text, source=source)
    except configparser.Error as e:
        raise ConfigError("Cannot parse {}: {}".format(source, e))
    if not parser.has_section("experiment"):
        raise ConfigError("{} has no [experiment] section".format(source))
    unknown = set(parser.sections()) - {"experiment", "parameters"}
    if unknown:
        raise ConfigError("{} has unknown sections {}".format(source, sorted(unknown)))
    experiment = dict(parser.items("experiment"))
    unknown = set(experiment) - set(EXPERIMENT_KEYS)
    if unknown:
        raise ConfigError("{} has unknown [experiment] keys {}".format(source, sorted(unknown)))
    parameters = dict(parser.items("parameters")) if parser.has_section("parameters") else {}
    workers = experiment.get("workers")
    return ExperimentConfig(kind=experiment.get("kind", "").strip(), seed=experiment.get("seed"),
                            parameters=parameters, output=experiment.get("output", "results").strip(),
                            shards=experiment.get("shards", 1),
                            workers=None if workers is None or workers.strip().lower() in NONE_WORDS else workers)


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    """
    Load a configuration file, or the configuration echoed in a run manifest (.json).

    :param path: path of the file
    :return: the configuration
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError("Cannot read configuration {}: {}".format(path, e))
    if path.suffix == ".json":
        try:
            return ExperimentConfig.from_dict(json.loads(text)["config"])
        except (ValueError, KeyError, TypeError) as e:
            raise ConfigError("{} is not a run manifest: {}".format(path, e))
    return parse_config(text, source=str(path))


def coerce(key: str, raw: object, default: object) -> object:
    """
    Convert a raw configuration value to the type of a default value.

    Values that are not strings are checked and converted, so that configurations echoed in manifests load back
    unchanged.

    :param key: parameter name, for error messages
    :param raw: the raw value
    :param default: the default value, giving the type
    :return: the converted value
    """
    try:
        if isinstance(default, (list, tuple)):
            items = [item.strip() for item in raw.split(",") if item.strip()] if isinstance(raw, str) else list(raw)
            element = default[0] if len(default) else 0.
            return [coerce(key, item, element) for item in items]
        if isinstance(raw, str):
            raw = raw.strip()
        if isinstance(default, bool):
            if isinstance(raw, bool):
                return raw
            if str(raw).lower() in TRUE_WORDS:
                return True
            if str(raw).lower() in FALSE_WORDS:
                return False
            raise ValueError(raw)
        if isinstance(default, int):
            if isinstance(raw, bool):
                raise ValueError(raw)
            number = float(raw)
            if not number.is_integer():
                raise ValueError(raw)
            return int(number)
        if isinstance(default, float) or default is None:
            if default is None and (raw is None or str(raw).lower() in NONE_WORDS):
                return None
            return float(raw)
        return str(raw)
    except (ValueError, TypeError, AttributeError):
        expected = "a list" if isinstance(default, (list, tuple)) else \
            "a number" if default is None else type(default).__name__
        raise ConfigError("Invalid value {!r} for {}: expected {}".format(raw, key, expected))


def coerce_parameters(parameters: Dict[str, object], defaults: Dict[str, object]) -> Dict[str, object]:
    """
    Convert raw parameters to the types of the defaults.

    :param parameters: raw parameters
    :param defaults: default configuration of the experiment
    :return: the converted parameters
    :raises ConfigError: on unknown keys or invalid values
    """
    allowed = set(defaults) - set(EXPERIMENT_KEYS)
    unknown = set(parameters) - allowed
    if unknown:
        raise ConfigError("Unknown parameters {}, expected some of {}".format(sorted(unknown), sorted(allowed)))
    return {key: coerce(key, value, defaults[key]) for key, value in parameters.items()}
