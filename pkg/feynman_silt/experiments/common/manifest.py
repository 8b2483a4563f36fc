"""
Run manifests and result tables.

A run writes its tables as CSV files and a manifest.json file into its output directory. CSV files start with two
comment lines: the format version with the experiment kind and table name, and the column list. Complex columns are
split into <name>_re and <name>_im.
"""
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Dict, List, Optional, Union

import numpy as np
import pandas as pd

from feynman_silt.errors import ManifestError

logger = logging.getLogger(__name__)

MANIFEST_NAME = "manifest.json"
MANIFEST_VERSION = 1
CSV_VERSION = 1
CSV_MAGIC = "# feynman-silt csv v"


def timestamp() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def to_builtin(value: object) -> object:
    """JSON encoder fallback for numpy scalars and arrays, and complex numbers."""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return to_builtin(value.item())
    if isinstance(value, complex):
        return {"re": value.real, "im": value.imag}
    if isinstance(value, Path):
        return str(value)
    raise TypeError("{!r} is not JSON serializable".format(value))


class OracleComparison(object):

    """
    A computed value checked against a reference.

    :param name: name of the check
    :param value: the computed value
    :param reference: the reference value
    :param tolerance: allowed absolute deviation
    :param passed: outcome, defaults to |value - reference| <= tolerance
    :param detail: free text, e.g. the tolerance rule
    """

    def __init__(self, name: str, value: float, reference: float, tolerance: float, passed: Optional[bool] = None,
                 detail: str = "") -> None:
        self.name = name
        self.value = float(value)
        self.reference = float(reference)
        self.tolerance = float(tolerance)
        self.passed = bool(abs(self.value - self.reference) <= self.tolerance if passed is None else passed)
        self.detail = detail

    def to_dict(self) -> dict:
        return {"name": self.name, "value": self.value, "reference": self.reference, "tolerance": self.tolerance,
                "passed": self.passed, "detail": self.detail}

    @classmethod
    def from_dict(cls, data: dict) -> "OracleComparison":
        return cls(data["name"], data["value"], data["reference"], data["tolerance"], data["passed"],
                   data.get("detail", ""))

    def __repr__(self) -> str:
        return "OracleComparison({}: {:.6g} vs {:.6g} ± {:.2g}, {})".format(
            self.name, self.value, self.reference, self.tolerance, "pass" if self.passed else "FAIL")


def split_complex(table: pd.DataFrame) -> pd.DataFrame:
    """Replace every complex column by its real and imaginary parts."""
    columns = {}
    for name in table.columns:
        values = table[name].to_numpy()
        if np.iscomplexobj(values):
            columns["{}_re".format(name)] = values.real
            columns["{}_im".format(name)] = values.imag
        else:
            columns[name] = values
    return pd.DataFrame(columns)


def write_table(table: pd.DataFrame, path: Union[str, Path], kind: str, name: str) -> Path:
    """
    Write a result table as a versioned CSV file.

    :param table: the table
    :param path: the file path
    :param kind: experiment kind
    :param name: table name
    :return: the path
    """
    path = Path(path)
    table = split_complex(table)
    with path.open("w", encoding="utf-8", newline="") as f:
        f.write("{}{} kind={} table={}\n".format(CSV_MAGIC, CSV_VERSION, kind, name))
        f.write("# columns: {}\n".format(",".join(table.columns)))
        table.to_csv(f, index=False, float_format="%.17g")
    return path


def read_table(path: Union[str, Path]) -> pd.DataFrame:
    """
    Read a table written by :py:func:`write_table`.

    :raises ManifestError: if the file is missing or not a result table of a known version
    """
    path = Path(path)
    try:
        with path.open(encoding="utf-8") as f:
            header = f.readline()
    except OSError as e:
        raise ManifestError("Cannot read table {}: {}".format(path, e))
    if not header.startswith(CSV_MAGIC):
        raise ManifestError("{} is not a result table".format(path))
    version = header[len(CSV_MAGIC):].split()[0] if header[len(CSV_MAGIC):].split() else ""
    if version != str(CSV_VERSION):
        raise ManifestError("{} has table version {}, expected {}".format(path, version, CSV_VERSION))
    try:
        return pd.read_csv(path, comment="#")
    except (ValueError, pd.errors.ParserError) as e:
        raise ManifestError("Cannot parse table {}: {}".format(path, e))


class RunManifest(object):

    """
    Record of a run: configuration echo, code version, timestamps, shard seeds, summary, oracle comparisons and the
    result tables it produced.
    """

    def __init__(self, kind: str, config: dict, version: str, started: str, finished: str,
                 shard_seeds: Dict[str, List[dict]], summary: Dict[str, object],
                 comparisons: List[OracleComparison], tables: Dict[str, str],
                 path: Optional[Path] = None) -> None:
        self.kind = kind
        self.config = config
        self.version = version
        self.started = started
        self.finished = finished
        self.shard_seeds = shard_seeds
        self.summary = summary
        self.comparisons = comparisons
        self.tables = tables
        self.path = path

    @property
    def passed(self) -> bool:
        """Whether every oracle comparison passed."""
        return all(comparison.passed for comparison in self.comparisons)

    @property
    def failures(self) -> List[OracleComparison]:
        return [comparison for comparison in self.comparisons if not comparison.passed]

    def to_dict(self) -> dict:
        return {"manifest_version": MANIFEST_VERSION, "kind": self.kind, "version": self.version,
                "config": self.config, "started": self.started, "finished": self.finished,
                "shard_seeds": self.shard_seeds, "summary": self.summary,
                "comparisons": [comparison.to_dict() for comparison in self.comparisons],
                "passed": self.passed, "tables": self.tables}

    def save(self, directory: Union[str, Path], tables: Dict[str, pd.DataFrame]) -> Path:
        """
        Write the result tables and the manifest into a directory.

        :param directory: output directory, created if needed
        :param tables: result tables by name
        :return: the manifest path
        """
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for name, table in tables.items():
            filename = "{}.csv".format(name)
            write_table(table, directory / filename, self.kind, name)
            self.tables[name] = filename
        self.path = directory / MANIFEST_NAME
        self.path.write_text(json.dumps(self.to_dict(), indent=2, default=to_builtin) + "\n", encoding="utf-8")
        logger.info("Wrote manifest {}".format(self.path))
        return self.path

    @classmethod
    def load(cls, path: Union[str, Path]) -> "RunManifest":
        """
        Load a manifest from its file or its directory.

        :raises ManifestError: if the manifest is missing or corrupt
        """
        path = Path(path)
        if path.is_dir():
            path = path / MANIFEST_NAME
        try:
            data = json.loads(path.read_text(encoding="utf-8"))
        except OSError as e:
            raise ManifestError("Cannot read manifest {}: {}".format(path, e))
        except ValueError as e:
            raise ManifestError("Corrupt manifest {}: {}".format(path, e))
        if not isinstance(data, dict) or data.get("manifest_version") != MANIFEST_VERSION:
            raise ManifestError("{} is not a version {} run manifest".format(path, MANIFEST_VERSION))
        try:
            comparisons = [OracleComparison.from_dict(c) for c in data["comparisons"]]
            return cls(data["kind"], data["config"], data["version"], data["started"], data["finished"],
                       data["shard_seeds"], data["summary"], comparisons, dict(data["tables"]), path=path)
        except (KeyError, TypeError, ValueError) as e:
            raise ManifestError("Corrupt manifest {}: missing or invalid {}".format(path, e))

    def load_table(self, name: str) -> pd.DataFrame:
        if name not in self.tables:
            raise ManifestError("Manifest {} has no table {}".format(self.path, name))
        directory = self.path.parent if self.path is not None else Path(".")
        return read_table(directory / self.tables[name])

    def __repr__(self) -> str:
        return "RunManifest({}, {} comparisons, {})".format(self.kind, len(self.comparisons),
                                                            "pass" if self.passed else "FAIL")
