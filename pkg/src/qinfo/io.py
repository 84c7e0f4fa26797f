"""JSON state documents, built-in named states and operator-set files.

A state document is a JSON object::

    {"kind": "pure" | "matrix" | "named",
     "payload": [...] | [[...], ...] | "bell-phi-plus",
     "dims": [2, 2],          # optional bipartite split
     "label": "free text"}    # optional

Complex numbers are written as ``[re, im]``; bare real numbers are accepted
on input.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from typing import Any

import numpy as np

from .errors import DimensionError, QInfoError, ValidationError
from .measurement import KrausSet, POVMSet, PVMSet, validate_kraus, validate_povm, validate_pvm
from .states import DensityMatrix, as_pure_state, from_pure
from .sampling import random_density, random_pure

KINDS = ("pure", "matrix", "named")


class ParseError(QInfoError):
    """Malformed document text or structure (as opposed to an invalid state)."""


def _bell(a: int, b: int, sign: int) -> np.ndarray:
    v = np.zeros(4, dtype=complex)
    v[a] = 1
    v[b] = sign
    return v / math.sqrt(2)


_PURE_NAMES: dict[str, tuple[np.ndarray, tuple[int, int] | None]] = {
    "bell-phi-plus": (_bell(0, 3, 1), (2, 2)),
    "bell-phi-minus": (_bell(0, 3, -1), (2, 2)),
    "bell-psi-plus": (_bell(1, 2, 1), (2, 2)),
    "bell-psi-minus": (_bell(1, 2, -1), (2, 2)),
    "singlet": (_bell(1, 2, -1), (2, 2)),
    "zero": (np.array([1, 0], dtype=complex), None),
    "one": (np.array([0, 1], dtype=complex), None),
    "plus": (np.array([1, 1], dtype=complex) / math.sqrt(2), None),
    "minus": (np.array([1, -1], dtype=complex) / math.sqrt(2), None),
}
_MIXED_NAMES: dict[str, tuple[np.ndarray, tuple[int, int] | None]] = {
    "rho1": (np.diag([0.5, 0, 0, 0.5]).astype(complex), (2, 2)),
}
_MAX_MIXED = re.compile(r"max-mixed-([1-9][0-9]*)$")

NAMED_STATES = (*_PURE_NAMES, *_MIXED_NAMES, "max-mixed-N")


def is_named_state(name: str) -> bool:
    return name in _PURE_NAMES or name in _MIXED_NAMES or bool(_MAX_MIXED.match(name))


def _lookup(name: str) -> tuple[np.ndarray | None, np.ndarray, tuple[int, int] | None]:
    """``(pure vector or None, density matrix, default dims)`` for a built-in name."""
    if name in _PURE_NAMES:
        vec, dims = _PURE_NAMES[name]
        return vec, np.outer(vec, np.conj(vec)), dims
    if name in _MIXED_NAMES:
        m, dims = _MIXED_NAMES[name]
        return None, m, dims
    match = _MAX_MIXED.match(name)
    if match:
        n = int(match.group(1))
        return None, np.eye(n, dtype=complex) / n, None
    raise ValidationError("state document", [f"unknown named state {name!r}; known: {', '.join(NAMED_STATES)}"])


def encode_complex(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def encode_matrix(m) -> list[list[list[float]]]:
    return [[encode_complex(z) for z in row] for row in np.asarray(m)]


def encode_vector(v) -> list[list[float]]:
    return [encode_complex(z) for z in np.asarray(v)]


def _decode_complex(x, where: str) -> complex:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected a number or [re, im], got {x!r}")
    if isinstance(x, (int, float)):
        return complex(x)
    if isinstance(x, list) and len(x) == 2 and all(
        isinstance(c, (int, float)) and not isinstance(c, bool) for c in x
    ):
        return complex(x[0], x[1])
    raise ParseError(f"{where}: expected a number or [re, im], got {x!r}")


def _decode_vector(x, where: str) -> tuple[complex, ...]:
    if not isinstance(x, list) or not x:
        raise ParseError(f"{where}: expected a non-empty list of amplitudes")
    return tuple(_decode_complex(z, f"{where}[{i}]") for i, z in enumerate(x))


def _decode_matrix(x, where: str) -> tuple[tuple[complex, ...], ...]:
    if not isinstance(x, list) or not x:
        raise ParseError(f"{where}: expected a non-empty list of rows")
    rows = tuple(_decode_vector(row, f"{where}[{i}]") for i, row in enumerate(x))
    if len({len(r) for r in rows}) != 1:
        raise ParseError(f"{where}: rows have different lengths")
    return rows


@dataclass(frozen=True)
class StateDocument:
    """Parsed state file. ``payload`` holds tuples of complex numbers or a name."""

    kind: str
    payload: Any
    dims: tuple[int, int] | None = None
    label: str = ""

    def pure_vector(self) -> np.ndarray | None:
        """Amplitudes when the document describes a pure state, else None."""
        if self.kind == "pure":
            return as_pure_state(np.array(self.payload, dtype=complex))
        if self.kind == "named":
            return _lookup(self.payload)[0]
        return None

    def resolved_dims(self) -> tuple[int, int] | None:
        if self.dims is not None or self.kind != "named":
            return self.dims
        return _lookup(self.payload)[2]

    def density(self) -> DensityMatrix:
        """Validated density matrix, carrying the document's split."""
        dims = self.resolved_dims()
        if self.kind == "pure":
            return from_pure(self.pure_vector(), dims)
        if self.kind == "named":
            return DensityMatrix(_lookup(self.payload)[1], dims)
        return DensityMatrix(np.array(self.payload, dtype=complex), dims)

    def to_json_obj(self) -> dict:
        if self.kind == "named":
            payload: Any = self.payload
        elif self.kind == "pure":
            payload = encode_vector(self.payload)
        else:
            payload = encode_matrix(self.payload)
        obj = {"kind": self.kind, "payload": payload}
        if self.dims is not None:
            obj["dims"] = list(self.dims)
        if self.label:
            obj["label"] = self.label
        return obj

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.to_json_obj(), indent=indent)


def _parse_dims(x) -> tuple[int, int] | None:
    if x is None:
        return None
    if (
        not isinstance(x, list)
        or len(x) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d > 0 for d in x)
    ):
        raise ParseError(f"field 'dims': expected [dim_a, dim_b] of positive integers, got {x!r}")
    return (x[0], x[1])


def document_from_obj(obj) -> StateDocument:
    """Build and validate a StateDocument from decoded JSON."""
    if not isinstance(obj, dict):
        raise ParseError("top level: expected a JSON object")
    unknown = set(obj) - {"kind", "payload", "dims", "label"}
    if unknown:
        raise ParseError(f"unknown field(s): {', '.join(sorted(unknown))}")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ParseError(f"field 'kind': expected one of {', '.join(KINDS)}, got {kind!r}")
    if "payload" not in obj:
        raise ParseError("field 'payload' is missing")
    raw = obj["payload"]
    if kind == "named":
        if not isinstance(raw, str):
            raise ParseError("field 'payload': a named state needs a string")
        payload: Any = raw
    elif kind == "pure":
        payload = _decode_vector(raw, "field 'payload'")
    else:
        payload = _decode_matrix(raw, "field 'payload'")
    label = obj.get("label", "")
    if not isinstance(label, str):
        raise ParseError("field 'label': expected a string")
    doc = StateDocument(kind, payload, _parse_dims(obj.get("dims")), label)
    doc.density()  # surfaces ValidationError / DimensionError unchanged
    return doc


def parse_state_file(text: str) -> StateDocument:
    """Parse state-file text.

    Raises:
        ParseError: bad JSON or document structure, with line/field details.
        ValidationError: the payload is not a valid state, or the name is unknown.
        DimensionError: ``dims`` do not match the payload.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return document_from_obj(obj)


def named_document(name: str) -> StateDocument:
    _lookup(name)
    return StateDocument("named", name, None, name)


def random_state(
    kind: str, dim: int, rank: int | None = None, seed: int | None = None, dims=None
) -> StateDocument:
    """Random pure (Gaussian vector) or mixed (Ginibre) state document."""
    if dims is not None and dims[0] * dims[1] != dim:
        raise DimensionError(f"split {dims[0]}x{dims[1]} does not match dimension {dim}")
    dims = None if dims is None else (int(dims[0]), int(dims[1]))
    if kind == "pure":
        vec = random_pure(dim, seed)
        return StateDocument("pure", tuple(complex(z) for z in vec), dims, f"random pure dim={dim} seed={seed}")
    if kind == "mixed":
        rho = random_density(dim, rank, seed)
        payload = tuple(tuple(complex(z) for z in row) for row in rho.matrix)
        rank_text = dim if rank is None else rank
        return StateDocument("matrix", payload, dims, f"random mixed dim={dim} rank={rank_text} seed={seed}")
    raise ValueError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def operator_document(m, label: str = "") -> dict:
    """Export form for a bare operator such as a witness."""
    obj = {"kind": "operator", "payload": encode_matrix(m)}
    if label:
        obj["label"] = label
    return obj


def parse_operator_set(text: str) -> PVMSet | KrausSet | POVMSet:
    """Parse ``{"kind": "pvm"|"kraus"|"povm", "operators": [...], "labels": [...]}``."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level: expected a JSON object")
    kind = obj.get("kind")
    ops = obj.get("operators")
    if not isinstance(ops, list) or not ops:
        raise ParseError("field 'operators': expected a non-empty list of matrices")
    mats = [np.array(_decode_matrix(m, f"operators[{i}]"), dtype=complex) for i, m in enumerate(ops)]
    labels = obj.get("labels")
    if labels is not None and not isinstance(labels, list):
        raise ParseError("field 'labels': expected a list")
    if kind == "pvm":
        return validate_pvm(mats, labels)
    if kind == "kraus":
        return validate_kraus(mats, labels)
    if kind == "povm":
        return validate_povm(mats, labels)
    raise ParseError(f"field 'kind': expected pvm, kraus or povm, got {kind!r}")
