"""Reading and writing state files.

A state file is JSON with the shape

    {"dims": [2, 2], "kind": "pure", "amplitudes": [[re, im], ...]}
    {"dims": [2, 2], "kind": "density", "matrix": [[[re, im], ...], ...]}

Amplitudes are listed in row-major order, last subsystem index fastest.
Spectrum files (for the majorization commands) are either a bare JSON array
of probabilities or {"values": [...]}.

Floats survive a write/read cycle bit-exactly: json emits the shortest
repr that round-trips.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import EPS_RANK
from .states import DensityMatrix, PureState, SchmidtSpectrum


class StateFormatError(ValueError):
    """A file does not parse as a state, with field or line context."""


def _complex_pairs(raw, field: str) -> np.ndarray:
    arr = np.asarray(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise StateFormatError(
            f"field '{field}' must be a list of [re, im] pairs"
        )
    return arr[:, 0] + 1j * arr[:, 1]


def _require(payload: dict, field: str, kind: type, where: str):
    if field not in payload:
        raise StateFormatError(f"{where}: missing field '{field}'")
    value = payload[field]
    if not isinstance(value, kind):
        raise StateFormatError(
            f"{where}: field '{field}' must be {kind.__name__}, "
            f"got {type(value).__name__}"
        )
    return value


def read_state_file(path) -> PureState | DensityMatrix:
    """Parse a state file; raises StateFormatError on malformed input."""
    text = Path(path).read_text()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if not isinstance(payload, dict):
        raise StateFormatError(f"{path}: top level must be an object")

    dims_raw = _require(payload, "dims", list, str(path))
    if not all(isinstance(d, int) for d in dims_raw):
        raise StateFormatError(f"{path}: field 'dims' must be a list of integers")
    dims = tuple(dims_raw)
    kind = _require(payload, "kind", str, str(path))

    if kind == "pure":
        raw = _require(payload, "amplitudes", list, str(path))
        try:
            amps = _complex_pairs(raw, "amplitudes")
        except (ValueError, TypeError) as exc:
            raise StateFormatError(
                f"{path}: field 'amplitudes' must be a list of [re, im] pairs"
            ) from exc
        return PureState(dims, amps)
    if kind == "density":
        raw = _require(payload, "matrix", list, str(path))
        try:
            arr = np.asarray(raw, dtype=float)
        except (ValueError, TypeError) as exc:
            raise StateFormatError(
                f"{path}: field 'matrix' must be nested lists of [re, im] pairs"
            ) from exc
        if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
            raise StateFormatError(
                f"{path}: field 'matrix' must be a square matrix of [re, im] pairs"
            )
        return DensityMatrix(arr[:, :, 0] + 1j * arr[:, :, 1], dims)
    raise StateFormatError(
        f"{path}: field 'kind' must be 'pure' or 'density', got {kind!r}"
    )


def write_state_file(path, state: PureState | DensityMatrix) -> None:
    """Serialize a state; reading the file back is bit-exact on every float."""
    if isinstance(state, PureState):
        payload = {
            "dims": list(state.dims),
            "kind": "pure",
            "amplitudes": [[z.real, z.imag] for z in state.amplitudes],
        }
    elif isinstance(state, DensityMatrix):
        payload = {
            "dims": list(state.dims),
            "kind": "density",
            "matrix": [
                [[z.real, z.imag] for z in row] for row in state.matrix
            ],
        }
    else:
        raise TypeError(f"cannot serialize {type(state).__name__}")
    Path(path).write_text(json.dumps(payload, indent=1) + "\n")


def read_spectrum_file(path, eps_rank: float = EPS_RANK) -> SchmidtSpectrum:
    """Parse a spectrum file: a bare array or {"values": [...]}."""
    text = Path(path).read_text()
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StateFormatError(
            f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from exc
    if isinstance(payload, dict):
        payload = _require(payload, "values", list, str(path))
    if not isinstance(payload, list) or not all(
        isinstance(v, (int, float)) for v in payload
    ):
        raise StateFormatError(f"{path}: expected a list of numbers")
    try:
        return SchmidtSpectrum.from_values(payload, eps_rank)
    except ValueError as exc:
        raise StateFormatError(f"{path}: {exc}") from exc
