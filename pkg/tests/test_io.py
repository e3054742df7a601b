import json

import numpy as np
import pytest

from crmaps import io
from crmaps.exceptions import DimensionMismatch, ParseError

from conftest import rand_c


def test_matrix_roundtrip(rng):
    A = rand_c(rng, 6, 6)
    text = io.serialize_matrix(A, (2, 3))
    B, dims = io.parse_matrix(text)
    assert dims == (2, 3) and np.array_equal(A, B)
    assert io.serialize_matrix(B, dims) == text


def test_basis_roundtrip(rng):
    bases = [np.linalg.qr(rand_c(rng, 3, 3))[0] for _ in range(2)]
    k, got = io.parse_basis(io.serialize_basis(3, bases))
    assert k == 3 and all(np.array_equal(a, b) for a, b in zip(bases, got))


def test_identity_file():
    obj = io.matrix_to_dict(np.eye(4), (2, 2))
    assert len(obj["data"]) == 16
    assert [obj["data"][i * 5] for i in range(4)] == [[1.0, 0.0]] * 4


def test_wrong_entry_count():
    obj = {"dims": [2, 2], "data": [[0.0, 0.0]] * 15}
    with pytest.raises(DimensionMismatch):
        io.matrix_from_dict(obj)


@pytest.mark.parametrize("obj,where", [
    ({"dims": [2, 2]}, "$"),
    ({"dims": [2], "data": []}, "dims"),
    ({"dims": [1, 1], "data": [[1.0]]}, "data[0]"),
    ({"dims": [1, 1], "data": [["a", 0]]}, "data[0][0]"),
])
def test_parse_errors_have_location(obj, where):
    with pytest.raises(ParseError) as info:
        io.matrix_from_dict(obj)
    assert info.value.where == where


def test_invalid_json():
    with pytest.raises(ParseError):
        io.parse_matrix("{not json")


def test_basis_errors():
    with pytest.raises(DimensionMismatch):
        io.basis_from_dict({"dim": 2, "bases": [[[[1, 0], [0, 0]]]]})
    with pytest.raises(ParseError):
        io.basis_from_dict({"dim": 0, "bases": []})


def test_bundled_fixtures_load():
    names = io.bundled_names()
    assert {"uut2", "realigned_sum3", "invariant_not_ppt3", "mub2_two_bases"} <= set(names)
    A, dims = io.load_matrix("bundled:uut2")
    assert dims == (2, 2) and A[0, 3] == 1
    k, bases = io.load_basis("bundled:mub2_two_bases")
    assert k == 2 and len(bases) == 2
    with pytest.raises(ParseError):
        io.load_matrix("bundled:missing")


def test_save_and_load(tmp_path, rng):
    A = rand_c(rng, 4, 4)
    io.save_matrix(tmp_path / "a.json", A, (2, 2))
    B, _ = io.load_matrix(tmp_path / "a.json")
    assert np.array_equal(A, B)
    json.loads((tmp_path / "a.json").read_text())
