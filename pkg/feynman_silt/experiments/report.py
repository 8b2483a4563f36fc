"""Human-readable summaries of run manifests, with gnuplot-ready data files."""
import logging
from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from feynman_silt.errors import InputError
from feynman_silt.experiments.common.manifest import RunManifest

logger = logging.getLogger(__name__)


def write_dat(table: pd.DataFrame, path: Union[str, Path], title: str) -> Path:
    """
    Write a table as whitespace-separated columns with a commented header. Spaces in strings become underscores.

    :param table: the table
    :param path: the file path
    :param title: first header line
    :return: the path
    """
    path = Path(path)
    table = table.copy()
    for name in table.columns:
        if table[name].dtype == bool:
            table[name] = table[name].astype(int)
        elif table[name].dtype == object:
            table[name] = table[name].astype(str).str.replace(" ", "_")
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write("# {}\n".format(title))
        f.write("# {}\n".format(" ".join(table.columns)))
        table.to_csv(f, sep=" ", index=False, header=False, float_format="%.12g")
    return path


def _format_value(value: object) -> str:
    if isinstance(value, float):
        return "{:.8g}".format(value)
    if isinstance(value, dict) and set(value) == {"re", "im"}:
        return "{:.8g}{:+.8g}i".format(value["re"], value["im"])
    return str(value)


def summarize(manifest: RunManifest) -> List[str]:
    """Summary lines of a manifest. Timestamps are left out, so that reruns summarize identically."""
    config = manifest.config
    lines = ["== {} (feynman-silt {}) ==".format(manifest.kind, manifest.version),
             "seed {}, shards {}".format(config.get("seed"), config.get("shards"))]
    parameters = config.get("parameters", {})
    lines += ["  {} = {}".format(key, _format_value(parameters[key])) for key in sorted(parameters)]
    if manifest.summary:
        lines.append("summary:")
        lines += ["  {} = {}".format(key, _format_value(manifest.summary[key])) for key in sorted(manifest.summary)]
    for name in manifest.tables:
        table = manifest.load_table(name)
        lines.append("table {}:".format(name))
        lines += ["  " + line for line in table.to_string(index=False, float_format="{:.6g}".format).splitlines()]
        if "gap" in table and len(table) > 1:
            monotone = bool(np.all(np.diff(table["gap"].to_numpy()) < 0))
            lines.append("  gaps {}".format("decrease monotonically" if monotone else "are NOT monotone"))
    lines.append("oracle comparisons:")
    for comparison in manifest.comparisons:
        lines.append("  [{}] {}: {} vs {} (tolerance {:.3g}) {}".format(
            "pass" if comparison.passed else "FAIL", comparison.name, _format_value(comparison.value),
            _format_value(comparison.reference), comparison.tolerance, comparison.detail).rstrip())
    lines.append("result: {}".format("pass" if manifest.passed else "FAIL"))
    return lines


def report(manifest_paths: Sequence[Union[str, Path]], data_dir: Optional[Union[str, Path]] = None) -> str:
    """
    Summarize run manifests.

    :param manifest_paths: manifest files or run directories
    :param data_dir: if given, a directory where every table is written as a gnuplot data file
    :return: the summary text
    :raises InputError: if no manifest is given
    :raises ManifestError: if a manifest is missing or corrupt
    """
    if not manifest_paths:
        raise InputError("At least one manifest is required")
    manifests = [RunManifest.load(path) for path in manifest_paths]
    if data_dir is not None:
        data_dir = Path(data_dir)
        data_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    for index, manifest in enumerate(manifests):
        lines += summarize(manifest) + [""]
        if data_dir is None:
            continue
        for name in manifest.tables:
            path = data_dir / "{}_{}_{}.dat".format(index, manifest.kind, name)
            write_dat(manifest.load_table(name), path, "{} {} from {}".format(manifest.kind, name, manifest.path))
            logger.info("Wrote {}".format(path))
    return "\n".join(lines).rstrip() + "\n"
