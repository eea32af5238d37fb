"""JSON state documents and CSV scan files."""
from __future__ import annotations

import csv
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import jsonschema
import numpy as np

from .core import ModePartition, validate
from .errors import ParseError, UnphysicalError, UnphysicalStateWarning
from .measures import PartitionedState

FORMAT_VERSION = 1

STATE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["format_version", "modes", "matrix", "partition"],
    "properties": {
        "format_version": {"type": "integer", "const": FORMAT_VERSION},
        "modes": {"type": "integer", "minimum": 1},
        "matrix": {
            "type": "array",
            "items": {"type": "array", "items": {"type": "number"}},
        },
        "partition": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["label", "mode_indices"],
                "properties": {
                    "label": {"type": "string"},
                    "mode_indices": {
                        "type": "array",
                        "minItems": 1,
                        "items": {"type": "integer", "minimum": 0},
                    },
                },
            },
        },
        "metadata": {"type": "object"},
    },
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["topology", "criteria", "verdict", "tolerances"],
    "properties": {
        "topology": {
            "type": "object",
            "required": ["kind", "n"],
            "properties": {
                "kind": {"enum": ["triangle", "star", "chain"]},
                "n": {"type": "integer", "minimum": 1},
            },
        },
        "criteria": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "value", "threshold", "violated"],
                "properties": {
                    "name": {"type": "string"},
                    "value": {"type": "number"},
                    "threshold": {"type": "number"},
                    "violated": {"type": "boolean"},
                },
            },
        },
        "verdict": {"enum": ["consistent", "excluded"]},
        "tolerances": {"type": "object", "additionalProperties": {"type": "number"}},
        "diagnostics": {"type": "object", "additionalProperties": {"type": "number"}},
    },
}


@dataclass
class StateDocument:
    format_version: int
    modes: int
    matrix: np.ndarray
    partition: ModePartition
    metadata: dict = field(default_factory=dict)

    def to_state(self) -> PartitionedState:
        return PartitionedState(self.matrix, self.partition, dict(self.metadata))


def _num(x: float) -> str:
    s = format(float(x), ".17g")
    if not any(c in s for c in ".en"):
        s += ".0"  # keeps -0.0 and integer-valued floats as JSON floats
    return s


def dumps_state(state: PartitionedState, metadata: dict | None = None) -> str:
    meta = dict(state.metadata)
    if metadata:
        meta.update(metadata)
    V = np.asarray(state.V, dtype=float)
    if not np.all(np.isfinite(V)):
        raise ValueError("cannot serialize non-finite matrix entries")
    rows = ",\n    ".join("[" + ", ".join(_num(x) for x in row) + "]" for row in V)
    parts = [
        f'  "format_version": {FORMAT_VERSION}',
        f'  "modes": {V.shape[0] // 2}',
        f'  "matrix": [\n    {rows}\n  ]',
        f'  "partition": {json.dumps(state.partition.to_list())}',
        f'  "metadata": {json.dumps(meta, sort_keys=True)}',
    ]
    return "{\n" + ",\n".join(parts) + "\n}\n"


def write_state(state: PartitionedState, path, metadata: dict | None = None) -> None:
    Path(path).write_text(dumps_state(state, metadata), encoding="utf-8", newline="\n")


def loads_document(text: str) -> StateDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg} at line {exc.lineno})") from None
    try:
        jsonschema.validate(doc, STATE_SCHEMA)
    except jsonschema.ValidationError as exc:
        raise ParseError(exc.message, exc.json_path) from None
    m = doc["modes"]
    matrix = doc["matrix"]
    if len(matrix) != 2 * m:
        raise ParseError(f"expected {2 * m} rows for {m} modes, got {len(matrix)}", "$.matrix")
    for i, row in enumerate(matrix):
        if len(row) != 2 * m:
            raise ParseError(f"expected {2 * m} columns, got {len(row)}", f"$.matrix[{i}]")
    try:
        partition = ModePartition(tuple((p["label"], p["mode_indices"]) for p in doc["partition"]))
    except ValueError as exc:
        raise ParseError(str(exc), "$.partition") from None
    if partition.n_modes != m:
        raise ParseError(f"partition covers {partition.n_modes} modes, document has {m}", "$.partition")
    return StateDocument(doc["format_version"], m, np.array(matrix, dtype=float), partition,
                         doc.get("metadata", {}))


def read_document(path) -> StateDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError:
        raise ParseError("file is not UTF-8") from None
    return loads_document(text)


def read_state(path, strict: bool = False) -> PartitionedState:
    """Read and validate a state document.

    Unphysical matrices raise :class:`UnphysicalError` when ``strict`` and
    otherwise emit :class:`UnphysicalStateWarning`.
    """
    doc = read_document(path)
    check = validate(doc.matrix)
    if not check.physical:
        msg = f"{path}: state violates the uncertainty relation (min symplectic eigenvalue {check.min_nu:.6g})"
        if strict:
            raise UnphysicalError(msg, nu=check.min_nu)
        warnings.warn(msg, UnphysicalStateWarning, stacklevel=2)
    return doc.to_state()


@dataclass(frozen=True)
class ScanRow:
    b: float
    I: float
    residuals: tuple
    v_minus: float
    v_plus: float


def write_scan_csv(rows, fh) -> None:
    rows = list(rows)
    k = len(rows[0].residuals) if rows else 0
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["b", "I"] + [f"residual_{i + 1}" for i in range(k)] + ["v_minus", "v_plus"])
    for row in rows:
        writer.writerow([repr(float(x)) for x in (row.b, row.I, *row.residuals, row.v_minus, row.v_plus)])
