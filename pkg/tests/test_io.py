import io
import json
import warnings

import jsonschema
import numpy as np
import pytest

from gqnet.core import ModePartition
from gqnet.errors import ParseError, UnphysicalError, UnphysicalStateWarning
from gqnet.io import (
    STATE_SCHEMA,
    ScanRow,
    dumps_state,
    loads_document,
    read_document,
    read_state,
    write_scan_csv,
    write_state,
)
from gqnet.measures import PartitionedState

from conftest import random_physical_cm


def random_state(rng):
    m = int(rng.integers(1, 6))
    V, _ = random_physical_cm(rng, m)
    perm = rng.permutation(m)
    cuts = sorted(rng.choice(np.arange(1, m), size=min(m - 1, int(rng.integers(0, m))), replace=False)) if m > 1 else []
    groups = np.split(perm, cuts)
    partition = ModePartition(tuple((f"P{i}", tuple(int(x) for x in g)) for i, g in enumerate(groups)))
    return PartitionedState(V, partition, {"seed": int(rng.integers(1 << 30))})


class TestRoundTrip:
    def test_bit_exact(self, rng):
        for _ in range(50):
            state = random_state(rng)
            doc = loads_document(dumps_state(state))
            assert np.array_equal(doc.matrix, state.V)
            assert doc.matrix.tobytes() == np.ascontiguousarray(state.V).tobytes()
            assert doc.partition == state.partition
            assert doc.metadata == state.metadata

    def test_special_values(self):
        V = np.eye(2)
        V[0, 1] = V[1, 0] = -0.0
        V[0, 0] = 1.0000000000000002
        V[1, 1] = 5e-324 + 1.0
        doc = loads_document(dumps_state(PartitionedState(V, ModePartition.from_sizes([1]))))
        assert doc.matrix.tobytes() == V.tobytes()
        assert np.signbit(doc.matrix[0, 1])

    def test_schema_valid_output(self, rng):
        text = dumps_state(random_state(rng), {"note": "x"})
        jsonschema.validate(json.loads(text), STATE_SCHEMA)
        assert text.endswith("}\n") and "\r" not in text

    def test_deterministic(self, rng):
        state = random_state(rng)
        assert dumps_state(state, {"b": 1, "a": 2}) == dumps_state(state, {"a": 2, "b": 1})

    def test_file_round_trip(self, tmp_path, rng):
        state = random_state(rng)
        path = tmp_path / "s.json"
        write_state(state, path)
        assert b"\r\n" not in path.read_bytes()
        back = read_state(path, strict=True)
        assert np.array_equal(back.V, state.V)


def _doc(**overrides):
    doc = {
        "format_version": 1,
        "modes": 1,
        "matrix": [[1.0, 0.0], [0.0, 1.0]],
        "partition": [{"label": "A", "mode_indices": [0]}],
    }
    doc.update(overrides)
    return json.dumps(doc)


class TestParseErrors:
    def test_minimal_ok(self):
        doc = loads_document(_doc())
        assert doc.modes == 1 and doc.metadata == {}

    def test_bad_json(self):
        with pytest.raises(ParseError, match="invalid JSON"):
            loads_document("{")

    def test_missing_key(self):
        with pytest.raises(ParseError) as info:
            loads_document(json.dumps({"format_version": 1, "modes": 1, "matrix": []}))
        assert "partition" in str(info.value)

    def test_wrong_version(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(format_version=2))
        assert info.value.path == "$.format_version"

    def test_non_number_entry(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(matrix=[[1.0, "x"], [0.0, 1.0]]))
        assert info.value.path == "$.matrix[0][1]"

    def test_row_count(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(matrix=[[1.0, 0.0]]))
        assert info.value.path == "$.matrix"

    def test_column_count(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(matrix=[[1.0, 0.0], [0.0]]))
        assert info.value.path == "$.matrix[1]"

    def test_partition_coverage(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(partition=[{"label": "A", "mode_indices": [1]}]))
        assert info.value.path == "$.partition"

    def test_negative_index(self):
        with pytest.raises(ParseError) as info:
            loads_document(_doc(partition=[{"label": "A", "mode_indices": [-1]}]))
        assert info.value.path.startswith("$.partition[0].mode_indices")

    def test_message_carries_path(self):
        with pytest.raises(ParseError, match=r"^\$\.matrix: "):
            loads_document(_doc(matrix=[[1.0, 0.0]]))


class TestReadState:
    def test_unphysical(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(_doc(matrix=[[0.5, 0.0], [0.0, 0.5]]))
        with pytest.raises(UnphysicalError) as info:
            read_state(path, strict=True)
        assert info.value.nu == pytest.approx(0.5)
        with pytest.warns(UnphysicalStateWarning):
            state = read_state(path)
        assert state.V[0, 0] == 0.5

    def test_physical_no_warning(self, tmp_path):
        path = tmp_path / "ok.json"
        path.write_text(_doc())
        with warnings.catch_warnings():
            warnings.simplefilter("error")
            read_state(path)

    def test_not_utf8(self, tmp_path):
        path = tmp_path / "bin.json"
        path.write_bytes(b"\xff\xfe\x00")
        with pytest.raises(ParseError):
            read_document(path)


class TestScanCsv:
    def test_layout(self):
        rows = [ScanRow(1.0, 0.0, (0.0, -0.5), 1.0, 1.0), ScanRow(1.5, 0.1, (-1e-3, -0.25), 0.9, 1.2)]
        buf = io.StringIO()
        write_scan_csv(rows, buf)
        lines = buf.getvalue().split("\n")
        assert lines[0] == "b,I,residual_1,residual_2,v_minus,v_plus"
        assert lines[2] == "1.5,0.1,-0.001,-0.25,0.9,1.2"
        assert lines[-1] == ""
        assert float(lines[1].split(",")[0]) == 1.0
