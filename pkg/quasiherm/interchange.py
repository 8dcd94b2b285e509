import asyncio
import csv
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np
from numpy.typing import ArrayLike

from quasiherm.errors import InputFormatError
from quasiherm.types.generic_types import MatrixPayload, VectorPayload
from quasiherm.util.util import ComplexArray


def matrix_to_payload(a: ArrayLike) -> MatrixPayload:
    matrix = np.asarray(a, dtype=np.complex128)
    return {
        "dim": int(matrix.shape[0]),
        "re": [float(x) for x in matrix.real.reshape(-1)],
        "im": [float(x) for x in matrix.imag.reshape(-1)],
    }


def matrix_from_payload(payload: Any) -> ComplexArray:
    """Decodifica {"dim", "re", "im"} (row-major) numa matriz complexa."""
    try:
        dim = int(payload["dim"])
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload["im"], dtype=np.float64)
    except (KeyError, TypeError, ValueError) as exc:
        raise InputFormatError(f"malformed matrix payload: {exc}") from exc
    if dim < 1 or re.shape != (dim * dim,) or im.shape != (dim * dim,):
        raise InputFormatError(
            f"matrix payload needs {dim * dim} re/im entries, got {re.size}/{im.size}"
        )
    matrix = (re + 1j * im).reshape(dim, dim)
    if not np.all(np.isfinite(matrix)):
        raise InputFormatError("matrix payload contains NaN or Inf")
    return matrix


def vector_to_payload(v: ArrayLike) -> VectorPayload:
    vector = np.asarray(v, dtype=np.complex128).reshape(-1)
    return {
        "re": [float(x) for x in vector.real],
        "im": [float(x) for x in vector.imag],
    }


def vector_from_payload(payload: Any) -> ComplexArray:
    if isinstance(payload, list):
        try:
            return np.asarray(payload, dtype=np.complex128)
        except (TypeError, ValueError) as exc:
            raise InputFormatError(f"malformed vector: {exc}") from exc
    try:
        re = np.asarray(payload["re"], dtype=np.float64)
        im = np.asarray(payload.get("im", [0.0] * re.size), dtype=np.float64)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise InputFormatError(f"malformed vector payload: {exc}") from exc
    if re.ndim != 1 or re.shape != im.shape:
        raise InputFormatError("vector payload needs equally long re/im arrays")
    return re + 1j * im


def read_json(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InputFormatError(f"{path}: not valid JSON ({exc})") from exc


def read_matrix(path: str | Path) -> ComplexArray:
    return matrix_from_payload(read_json(path))


def read_matrices(path: str | Path) -> list[ComplexArray]:
    """Aceita uma lista de matrizes ou um objeto {"params": [...]}."""
    payload = read_json(path)
    if isinstance(payload, dict) and "params" in payload:
        payload = payload["params"]
    if isinstance(payload, dict):
        return [matrix_from_payload(payload)]
    if not isinstance(payload, list):
        raise InputFormatError(f"{path}: expected a list of matrices")
    return [matrix_from_payload(item) for item in payload]


def read_vector(path: str | Path) -> ComplexArray:
    return vector_from_payload(read_json(path))


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True)


def write_json(path: str | Path, payload: Any) -> None:
    Path(path).write_text(dumps(payload) + "\n", encoding="utf-8")


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(header)
        for row in rows:
            writer.writerow([repr(float(x)) if isinstance(x, float) else x for x in row])


async def save_json(path: str | Path, payload: Any) -> None:
    await asyncio.to_thread(write_json, path, payload)


async def save_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]]) -> None:
    await asyncio.to_thread(write_csv, path, header, list(rows))
