import json

import numpy as np
import pytest

from quasiherm.dieudonne import solve_metric_space
from quasiherm.errors import InputFormatError
from quasiherm.factorchain import build_chain
from quasiherm.interchange import (
    matrix_from_payload,
    matrix_to_payload,
    read_matrices,
    read_vector,
    vector_from_payload,
    write_csv,
    write_json,
)
from quasiherm.types.quasiherm_types import MetricFamily, ObservableChain


def test_matrix_payload_is_row_major():
    payload = matrix_to_payload([[1, 2j], [3, 4]])
    assert payload == {"dim": 2, "re": [1.0, 0.0, 3.0, 4.0], "im": [0.0, 2.0, 0.0, 0.0]}
    assert np.array_equal(matrix_from_payload(payload), [[1, 2j], [3, 4]])


@pytest.mark.parametrize(
    "payload",
    [
        {"dim": 2, "re": [1, 0, 0], "im": [0, 0, 0, 0]},
        {"re": [1], "im": [0]},
        {"dim": 1, "re": [float("nan")], "im": [0]},
        [1, 2, 3],
    ],
)
def test_malformed_matrix(payload):
    with pytest.raises(InputFormatError):
        matrix_from_payload(payload)


def test_vector_forms(tmp_path):
    assert np.array_equal(vector_from_payload([1, 0]), [1, 0])
    assert np.array_equal(vector_from_payload({"re": [1, 2]}), [1, 2])
    path = tmp_path / "state.json"
    write_json(path, {"re": [0.0, 1.0], "im": [1.0, 0.0]})
    assert np.array_equal(read_vector(path), [1j, 1])
    with pytest.raises(InputFormatError):
        vector_from_payload({"re": [1, 2], "im": [0]})


def test_read_matrices_accepts_params_object(tmp_path):
    path = tmp_path / "params.json"
    write_json(path, {"params": [matrix_to_payload(np.eye(2)), matrix_to_payload(np.eye(2))]})
    assert len(read_matrices(path)) == 2


def test_chain_payload(toy_h, toy_theta, parity2):
    chain = build_chain(toy_h, toy_theta, [parity2])
    restored = ObservableChain.from_dict(chain.to_dict())
    assert restored.N == 2
    assert np.array_equal(restored.factor(2), chain.factor(2))


def test_chain_payload_counts(toy_h, toy_theta, parity2):
    payload = build_chain(toy_h, toy_theta, [parity2]).to_dict()
    payload["factors"] = payload["factors"][:1]
    with pytest.raises(InputFormatError):
        ObservableChain.from_dict(payload)


def test_csv_floats_are_exact(tmp_path):
    path = tmp_path / "rows.csv"
    write_csv(path, ["a", "b"], [[0.1, True]])
    assert path.read_text(encoding="utf-8").splitlines() == ["a,b", "0.1,True"]


def test_family_payload(toy_h):
    family = solve_metric_space(toy_h)
    restored = MetricFamily.from_dict(json.loads(family.to_json()))
    assert restored.dim == 2
    assert len(restored.basis) == len(family.basis)
    for a, b in zip(restored.basis, family.basis):
        assert np.array_equal(a, b)


def test_family_payload_missing_basis():
    with pytest.raises(InputFormatError):
        MetricFamily.from_dict({"dim": 2, "kappa_default": [1.0]})
