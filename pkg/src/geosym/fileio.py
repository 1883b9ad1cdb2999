"""JSON formats for states, complex symmetric matrices and Hermitian operators.

Complex numbers are stored as ``[re, im]`` pairs, tensors in row-major order
with party 0 as the most significant index::

    state:    {"n_parties": N, "local_dim": k, "amplitudes": [[re, im], ...]}
    matrix:   {"dim": k, "entries": [[re, im], ...]}
    operator: {"n_parties": N, "local_dim": k, "matrix": [[[re, im], ...], ...]}

Python's ``json`` writes floats with ``repr`` so a dumped state reloads
bit-for-bit.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .operators import HermitianOperator
from .tensor_core import NORM_TOL, StateTensor

LOAD_NORM_TOL = 1e-6


class FormatError(ValueError):
    """Malformed input document; the message names the offending field."""


def _pairs(z) -> list:
    z = np.asarray(z, dtype=complex)
    return [[float(c.real), float(c.imag)] for c in z.reshape(-1)]


def _complex_array(value, field: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"field '{field}' must hold [re, im] number pairs") from exc
    if arr.ndim < 1 or arr.shape[-1] != 2:
        raise FormatError(f"field '{field}' must hold [re, im] number pairs")
    if not np.all(np.isfinite(arr)):
        raise FormatError(f"field '{field}' contains non-finite numbers")
    return arr[..., 0] + 1j * arr[..., 1]


def _int_field(doc: dict, name: str, minimum: int) -> int:
    if name not in doc:
        raise FormatError(f"missing field '{name}'")
    value = doc[name]
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise FormatError(f"field '{name}' must be an integer >= {minimum}")
    return value


def _require_object(doc) -> dict:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    return doc


# -- states --------------------------------------------------------------------

def state_to_dict(state: StateTensor) -> dict:
    return {
        "n_parties": state.n_parties,
        "local_dim": state.local_dim,
        "amplitudes": _pairs(state.amplitudes),
    }


def state_from_dict(doc) -> StateTensor:
    """Parse a state document.

    Norms within ``1e-12`` of one are kept exactly as stored; up to ``1e-6``
    the vector is renormalized; anything else is rejected.
    """
    doc = _require_object(doc)
    n = _int_field(doc, "n_parties", 1)
    k = _int_field(doc, "local_dim", 2)
    if "amplitudes" not in doc:
        raise FormatError("missing field 'amplitudes'")
    amps = _complex_array(doc["amplitudes"], "amplitudes")
    if amps.ndim != 1 or amps.size != k**n:
        raise FormatError(f"field 'amplitudes' must have local_dim**n_parties = {k**n} entries")
    norm = np.linalg.norm(amps)
    if abs(norm - 1.0) > LOAD_NORM_TOL:
        raise FormatError(f"field 'amplitudes' has norm {norm:.9g}, not 1 within {LOAD_NORM_TOL:g}")
    if abs(norm - 1.0) > NORM_TOL:
        amps = amps / norm
    return StateTensor(n, k, amps)


# -- matrices ------------------------------------------------------------------

def matrix_to_dict(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"dim": int(m.shape[0]), "entries": _pairs(m)}


def matrix_from_dict(doc) -> np.ndarray:
    doc = _require_object(doc)
    k = _int_field(doc, "dim", 1)
    if "entries" not in doc:
        raise FormatError("missing field 'entries'")
    entries = _complex_array(doc["entries"], "entries")
    if entries.ndim != 1 or entries.size != k * k:
        raise FormatError(f"field 'entries' must have dim**2 = {k * k} entries")
    return entries.reshape(k, k)


# -- operators -----------------------------------------------------------------

def operator_to_dict(x: HermitianOperator) -> dict:
    return {
        "n_parties": x.n_parties,
        "local_dim": x.local_dim,
        "matrix": [_pairs(row) for row in x.matrix],
    }


def operator_from_dict(doc) -> HermitianOperator:
    doc = _require_object(doc)
    n = _int_field(doc, "n_parties", 1)
    k = _int_field(doc, "local_dim", 2)
    if "matrix" not in doc:
        raise FormatError("missing field 'matrix'")
    m = _complex_array(doc["matrix"], "matrix")
    dim = k**n
    if m.shape != (dim, dim):
        raise FormatError(f"field 'matrix' must be {dim} x {dim}")
    try:
        return HermitianOperator(n, k, m)
    except ValueError as exc:
        raise FormatError(f"field 'matrix': {exc}") from exc


# -- files ---------------------------------------------------------------------

def _read(path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc.msg}") from exc


def load_state(path) -> StateTensor:
    return state_from_dict(_read(path))


def load_matrix(path) -> np.ndarray:
    return matrix_from_dict(_read(path))


def load_operator(path) -> HermitianOperator:
    return operator_from_dict(_read(path))


def save_json(doc: dict, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1) + "\n")
