"""JSON load/save for instances, matrices and constraint systems (UTF-8)."""

from __future__ import annotations

import json
from pathlib import Path

from .indexcoding import IndexCodingInstance
from .matrix import BlockMatrix
from .matroid import MatroidConstraints


class InputError(ValueError):
    """A file could not be read or does not match its schema."""


def load_json(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc
    if not isinstance(data, dict):
        raise InputError(f"{path}: expected a JSON object")
    return data


def save_json(data: dict, path) -> Path:
    path = Path(path)
    path.write_text(json.dumps(data, indent=2) + "\n", encoding="utf-8")
    return path


def _parse(kind, cls, path):
    data = load_json(path)
    try:
        return cls.from_dict(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: not a valid {kind} ({exc})") from exc


def load_instance(path) -> IndexCodingInstance:
    return _parse("instance", IndexCodingInstance, path)


def load_matrix(path) -> BlockMatrix:
    return _parse("matrix", BlockMatrix, path)


def load_constraints(path) -> MatroidConstraints:
    return _parse("constraint system", MatroidConstraints, path)
