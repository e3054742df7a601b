"""JSON matrix and basis files.

Matrix file::

    {"dims": [k, m], "data": [[re, im], ...]}   # (k*m)^2 entries, row-major

Basis file::

    {"dim": k, "bases": [basis_0, basis_1, ...]}  # each basis: k rows of k [re, im]

Basis vectors are the columns. Floats are written with Python's shortest
round-trip representation, so parse/serialize is lossless.
"""

from __future__ import annotations

import json
import math
from importlib import resources
from pathlib import Path

import numpy as np

from .exceptions import DimensionMismatch, ParseError

BUNDLED_PREFIX = "bundled:"


def matrix_to_pairs(M) -> list:
    M = np.asarray(M, dtype=np.complex128)
    return [[float(z.real), float(z.imag)] for z in M.reshape(-1)]


def _number(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"expected a number, got {type(x).__name__}", where)
    x = float(x)
    if not math.isfinite(x):
        raise ParseError("non-finite value", where)
    return x


def pairs_to_array(pairs, where="data") -> np.ndarray:
    if not isinstance(pairs, list):
        raise ParseError("expected a list of [re, im] pairs", where)
    out = np.empty(len(pairs), dtype=np.complex128)
    for i, p in enumerate(pairs):
        w = f"{where}[{i}]"
        if not isinstance(p, list) or len(p) != 2:
            raise ParseError("expected an [re, im] pair", w)
        out[i] = complex(_number(p[0], w + "[0]"), _number(p[1], w + "[1]"))
    return out


def _load_json(text: str, source: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON ({exc.msg})", f"{source}:{exc.lineno}:{exc.colno}") from exc


def matrix_from_dict(obj) -> tuple[np.ndarray, tuple[int, int]]:
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", "$")
    for key in ("dims", "data"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", "$")
    dims = obj["dims"]
    if (not isinstance(dims, list) or len(dims) != 2
            or not all(isinstance(d, int) and not isinstance(d, bool) and d > 0 for d in dims)):
        raise ParseError("dims must be two positive integers", "dims")
    k, m = dims
    data = pairs_to_array(obj["data"])
    n = k * m
    if data.size != n * n:
        raise DimensionMismatch(f"dims {dims} need {n * n} entries, got {data.size}")
    return data.reshape(n, n), (k, m)


def matrix_to_dict(A, dims) -> dict:
    k, m = (int(d) for d in dims)
    A = np.asarray(A)
    if A.shape != (k * m, k * m):
        raise DimensionMismatch(f"matrix shape {A.shape} does not match dims {(k, m)}")
    return {"dims": [k, m], "data": matrix_to_pairs(A)}


def parse_matrix(text: str, source: str = "<string>"):
    return matrix_from_dict(_load_json(text, source))


def serialize_matrix(A, dims) -> str:
    return json.dumps(matrix_to_dict(A, dims))


def basis_from_dict(obj):
    if not isinstance(obj, dict):
        raise ParseError("top level must be an object", "$")
    for key in ("dim", "bases"):
        if key not in obj:
            raise ParseError(f"missing field {key!r}", "$")
    k = obj["dim"]
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise ParseError("dim must be a positive integer", "dim")
    if not isinstance(obj["bases"], list):
        raise ParseError("bases must be a list", "bases")
    bases = []
    for b, rows in enumerate(obj["bases"]):
        w = f"bases[{b}]"
        if not isinstance(rows, list) or len(rows) != k:
            raise DimensionMismatch(f"{w}: expected {k} rows")
        M = np.empty((k, k), dtype=np.complex128)
        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != k:
                raise DimensionMismatch(f"{w}[{r}]: expected {k} entries")
            M[r] = pairs_to_array(row, f"{w}[{r}]")
        bases.append(M)
    return k, bases


def basis_to_dict(k, bases) -> dict:
    return {
        "dim": int(k),
        "bases": [
            [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(B)]
            for B in bases
        ],
    }


def parse_basis(text: str, source: str = "<string>"):
    return basis_from_dict(_load_json(text, source))


def serialize_basis(k, bases) -> str:
    return json.dumps(basis_to_dict(k, bases))


def _read_text(path) -> tuple[str, str]:
    path = str(path)
    if path.startswith(BUNDLED_PREFIX):
        name = path[len(BUNDLED_PREFIX):]
        if not name.endswith(".json"):
            name += ".json"
        res = resources.files("crmaps") / "data" / name
        if not res.is_file():
            raise ParseError(f"no bundled fixture named {name!r}", "path")
        return res.read_text(), path
    return Path(path).read_text(), path


def load_matrix(path):
    """Read a matrix file; ``bundled:<name>`` reads a packaged fixture."""
    return parse_matrix(*_read_text(path))


def load_basis(path):
    return parse_basis(*_read_text(path))


def save_matrix(path, A, dims) -> None:
    Path(path).write_text(serialize_matrix(A, dims) + "\n")


def save_basis(path, k, bases) -> None:
    Path(path).write_text(serialize_basis(k, bases) + "\n")


def bundled_names() -> list:
    return sorted(p.name[:-5] for p in (resources.files("crmaps") / "data").iterdir()
                  if p.name.endswith(".json"))
