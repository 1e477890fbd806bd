""" (helper) Report record and its canonical JSON / CSV serialization.

Reports are byte-stable: keys are sorted, floats are written with 17
significant digits and nothing time- or host-dependent is included.
"""

import csv
import dataclasses
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional, TextIO

import numpy as np

from constants import __version__, FLOAT_SIGNIFICANT_DIGITS
from matfield import Matrix


@dataclass
class Report:
    """Result of one qf_verify subcommand.

    passed is serialized as "pass"; None means the subcommand computes a
    value rather than checking a claim.
    """
    experiment: str
    params: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    seed: Optional[int] = None
    passed: Optional[bool] = None
    version: str = __version__

    def to_dict(self) -> dict[str, Any]:
        return {
            "experiment": self.experiment,
            "params": self.params,
            "results": self.results,
            "seed": self.seed,
            "version": self.version,
            "pass": self.passed,
        }

    def table(self) -> Optional[list[dict[str, Any]]]:
        """Rows of a table-shaped result, or None."""
        return self.results.get("rows")


def format_float(value: float) -> str:
    """17 significant digits; non-finite values have no JSON form and become null."""
    if not math.isfinite(value):
        return "null"
    text = format(value, f".{FLOAT_SIGNIFICANT_DIGITS}g")
    if text.lstrip("-").isdigit():
        text += ".0"
    return text


def matrix_pairs(m: Matrix) -> list[list[float]]:
    """Flat row-major list of [re, im] pairs."""
    return [[float(z.real), float(z.imag)] for z in m.as_complex().to_numpy().reshape(-1)]


def to_jsonable(value: Any) -> Any:
    """Convert domain and numpy values to plain JSON types."""
    if isinstance(value, Enum):
        return value.value
    if value is None or isinstance(value, (bool, str)):
        return value
    if isinstance(value, (np.bool_,)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, Matrix):
        return matrix_pairs(value)
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if hasattr(value, "_asdict"):
        return to_jsonable(value._asdict())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [to_jsonable(v) for v in items]
    raise TypeError(f"cannot serialize {type(value).__name__}")


class CanonicalEncoder(json.JSONEncoder):
    """Sorted keys and two-space indent; floats go through format_float."""

    def __init__(self, **kwargs):
        kwargs.update(sort_keys=True, indent=2, ensure_ascii=False)
        super().__init__(**kwargs)

    def default(self, o: Any) -> Any:
        return to_jsonable(o)

    def iterencode(self, o: Any, _one_shot: bool = False):
        # the stock encoders format floats with repr and take no hook for it
        chunks = json.encoder._make_iterencode(
            {} if self.check_circular else None, self.default, json.encoder.encode_basestring,
            " " * self.indent, format_float, self.key_separator, self.item_separator,
            self.sort_keys, self.skipkeys, _one_shot)
        return chunks(o, 0)


def dumps_canonical(value: Any) -> str:
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_jsonable(value), cls=CanonicalEncoder) + "\n"


def report_json(report: Report) -> str:
    return dumps_canonical(report.to_dict())


def write_csv(rows: list[dict[str, Any]], stream: TextIO) -> None:
    """Write table rows; columns follow the key order of the first row."""
    if not rows:
        return
    writer = csv.DictWriter(stream, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: _csv_cell(v) for k, v in to_jsonable(row).items()})


def _csv_cell(value: Any) -> Any:
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, bool):
        return "true" if value else "false"
    return value


def report_csv(report: Report) -> str:
    stream = io.StringIO()
    write_csv(report.table() or [], stream)
    return stream.getvalue()
