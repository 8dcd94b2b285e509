from typing import Optional, TypedDict


class MatrixPayload(TypedDict):
    dim: int
    re: list[float]
    im: list[float]


class VectorPayload(TypedDict):
    re: list[float]
    im: list[float]


class FamilyPayload(TypedDict):
    dim: int
    basis: list[MatrixPayload]
    kappa_default: list[float]


class ChainPayload(TypedDict):
    N: int
    dim: int
    H: MatrixPayload
    Theta: MatrixPayload
    params: list[MatrixPayload]
    observables: list[MatrixPayload]
    factors: list[MatrixPayload]


RelationRow = TypedDict("RelationRow", {"relation": str, "residual": float, "pass": bool})


class ReportPayload(TypedDict):
    tol: float
    overall_pass: bool
    relations: list[RelationRow]


class TrajectoryPayload(TypedDict):
    times: list[float]
    norms: list[float]
    drift: float
    states: list[VectorPayload]
    dual_states: list[VectorPayload]


class SweepPayload(TypedDict):
    parameter_values: list[float]
    reality_flags: list[bool]
    positivity_flags: list[bool]
    critical_estimate: Optional[float]
