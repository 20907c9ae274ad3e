"""JSON state files: {"dims": [...], "matrix": [[[re, im], ...], ...], "label": ...}."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .qlinalg import DensityMatrix, InvalidStateError


class StateFileError(ValueError):
    pass


def encode_matrix(m: np.ndarray) -> list:
    # repr-based float output is the shortest string that round-trips exactly
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m, dtype=complex)]


def decode_matrix(rows) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise StateFileError(f"matrix: entries must be [re, im] number pairs ({exc})") from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise StateFileError(f"matrix: expected rows of [re, im] pairs, got array of shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def state_to_dict(rho: DensityMatrix, label: str | None = None) -> dict:
    out = {"dims": list(rho.dims), "matrix": encode_matrix(rho.data)}
    if label is not None:
        out["label"] = label
    return out


def dumps_state(rho: DensityMatrix, label: str | None = None) -> str:
    return json.dumps(state_to_dict(rho, label))


def write_state(path, rho: DensityMatrix, label: str | None = None) -> None:
    Path(path).write_text(dumps_state(rho, label) + "\n")


def parse_raw(text: str) -> tuple[np.ndarray, tuple[int, ...], str | None]:
    """Parse without enforcing density-matrix invariants."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"json: {exc}") from None
    if not isinstance(obj, dict) or "matrix" not in obj or "dims" not in obj:
        raise StateFileError("json: state file needs 'dims' and 'matrix' keys")
    m = decode_matrix(obj["matrix"])
    try:
        dims = tuple(int(d) for d in obj["dims"])
    except (TypeError, ValueError):
        raise StateFileError("dims: must be a list of integers") from None
    return m, dims, obj.get("label")


def loads_state(text: str) -> DensityMatrix:
    m, dims, _ = parse_raw(text)
    return DensityMatrix(m, dims)


def read_state(path) -> DensityMatrix:
    return loads_state(Path(path).read_text())


def read_raw(path):
    return parse_raw(Path(path).read_text())


__all__ = [
    "InvalidStateError", "StateFileError", "dumps_state", "loads_state", "parse_raw",
    "read_raw", "read_state", "state_to_dict", "write_state",
]
