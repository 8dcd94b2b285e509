from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Literal, Optional, Sequence

import numpy as np
from typing_extensions import Self, override

from quasiherm.errors import InputFormatError
from quasiherm.interchange import (
    dumps,
    matrix_from_payload,
    matrix_to_payload,
    vector_to_payload,
)
from quasiherm.types.generic_types import (
    ChainPayload,
    FamilyPayload,
    RelationRow,
    ReportPayload,
    SweepPayload,
    TrajectoryPayload,
)
from quasiherm.util.util import ComplexArray

Command = Literal["analyze", "metric", "chain", "verify", "evolve", "sweep", "suite"]
OutputFormat = Literal["json", "csv"]
INPUT_COMMANDS = ("analyze", "metric", "chain", "verify", "evolve")


class SerializableABC(ABC):
    @abstractmethod
    def to_dict(self) -> Any:
        pass

    def to_json(self) -> str:
        return dumps(self.to_dict())


@dataclass(frozen=True, eq=False)
class SpectralData(SerializableABC):
    eigenvalues: ComplexArray
    right_vectors: ComplexArray
    left_vectors: ComplexArray
    condition_estimate: float

    @property
    def dim(self) -> int:
        return int(self.eigenvalues.shape[0])

    def reconstruct(self) -> ComplexArray:
        """Σ_n λ_n |R_n⟩⟨L_n|."""
        return (self.right_vectors * self.eigenvalues) @ self.left_vectors.conj().T

    @override
    def to_dict(self) -> dict[str, Any]:
        return {
            "eigenvalues": vector_to_payload(self.eigenvalues),
            "right_vectors": matrix_to_payload(self.right_vectors),
            "left_vectors": matrix_to_payload(self.left_vectors),
            "condition_estimate": self.condition_estimate,
        }


@dataclass(frozen=True, eq=False)
class MetricFamily(SerializableABC):
    dim: int
    basis: tuple[ComplexArray, ...]
    kappa_default: tuple[float, ...]
    spectral: Optional[SpectralData] = None
    spectral_basis: Optional[tuple[ComplexArray, ...]] = None
    degenerate: bool = False
    agreement: Optional[float] = None

    @property
    def has_spectral_path(self) -> bool:
        return self.spectral is not None and self.spectral_basis is not None

    @override
    def to_dict(self) -> FamilyPayload:
        return {
            "dim": self.dim,
            "basis": [matrix_to_payload(b) for b in self.basis],
            "kappa_default": [float(k) for k in self.kappa_default],
        }

    @classmethod
    def from_dict(cls, payload: Any) -> Self:
        try:
            basis = tuple(matrix_from_payload(b) for b in payload["basis"])
            return cls(
                dim=int(payload["dim"]),
                basis=basis,
                kappa_default=tuple(float(k) for k in payload["kappa_default"]),
            )
        except (KeyError, TypeError) as exc:
            raise InputFormatError(f"malformed metric family: {exc}") from exc


@dataclass(frozen=True, eq=False)
class ObservableChain(SerializableABC):
    """Cadeia de observaveis Λ_0 … Λ_{N+1} com fatores Z_1 … Z_N.

    `params` vai de M_1 (o parametro mais interno) ate Z_N.
    """

    N: int
    dim: int
    H: ComplexArray
    theta: ComplexArray
    params: tuple[ComplexArray, ...]
    observables: tuple[ComplexArray, ...]
    factors: tuple[ComplexArray, ...]

    def factor(self, k: int) -> ComplexArray:
        """Z_k, com Z_0 = H."""
        if k == 0:
            return self.H
        return self.factors[k - 1]

    def suffix_product(self, k: int) -> ComplexArray:
        """Z_N · Z_{N−1} · … · Z_{k+1}; identidade quando k = N."""
        product = np.eye(self.dim, dtype=np.complex128)
        for j in range(self.N, k, -1):
            product = product @ self.factors[j - 1]
        return product

    @override
    def to_dict(self) -> ChainPayload:
        return {
            "N": self.N,
            "dim": self.dim,
            "H": matrix_to_payload(self.H),
            "Theta": matrix_to_payload(self.theta),
            "params": [matrix_to_payload(p) for p in self.params],
            "observables": [matrix_to_payload(o) for o in self.observables],
            "factors": [matrix_to_payload(z) for z in self.factors],
        }

    @classmethod
    def from_dict(cls, payload: Any) -> Self:
        try:
            n = int(payload["N"])
            chain = cls(
                N=n,
                dim=int(payload["dim"]),
                H=matrix_from_payload(payload["H"]),
                theta=matrix_from_payload(payload["Theta"]),
                params=tuple(matrix_from_payload(p) for p in payload.get("params", [])),
                observables=tuple(matrix_from_payload(o) for o in payload["observables"]),
                factors=tuple(matrix_from_payload(z) for z in payload["factors"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise InputFormatError(f"malformed chain: {exc}") from exc
        if n < 1 or len(chain.factors) != n or len(chain.observables) != n + 2:
            raise InputFormatError(
                f"chain with N={n} needs {n} factors and {n + 2} observables"
            )
        if any(m.shape != (chain.dim, chain.dim) for m in (chain.H, chain.theta, *chain.factors)):
            raise InputFormatError("chain matrices disagree with the declared dim")
        return chain


@dataclass(frozen=True)
class Relation:
    name: str
    residual: float
    passed: bool

    def to_row(self) -> RelationRow:
        return {"relation": self.name, "residual": self.residual, "pass": self.passed}


@dataclass(frozen=True)
class VerificationReport(SerializableABC):
    relations: tuple[Relation, ...]
    tol: float

    @property
    def overall_pass(self) -> bool:
        return all(r.passed for r in self.relations)

    @property
    def max_residual(self) -> float:
        return max((r.residual for r in self.relations), default=0.0)

    def __getitem__(self, name: str) -> Relation:
        for relation in self.relations:
            if relation.name == name:
                return relation
        raise KeyError(name)

    def names(self) -> list[str]:
        return [r.name for r in self.relations]

    def failing(self) -> list[str]:
        return [r.name for r in self.relations if not r.passed]

    def rows(self) -> list[RelationRow]:
        return [r.to_row() for r in self.relations]

    @override
    def to_dict(self) -> ReportPayload:
        return {"tol": self.tol, "overall_pass": self.overall_pass, "relations": self.rows()}

    @classmethod
    def from_residuals(cls, residuals: Sequence[tuple[str, float]], tol: float) -> Self:
        return cls(
            relations=tuple(Relation(name, float(r), bool(r <= tol)) for name, r in residuals),
            tol=tol,
        )


@dataclass(frozen=True, eq=False)
class TrajectoryRecord(SerializableABC):
    times: tuple[float, ...]
    states: tuple[ComplexArray, ...]
    dual_states: tuple[ComplexArray, ...]
    norms: tuple[float, ...]

    @property
    def drift(self) -> float:
        """max_t |n(t) − n(0)| / n(0)."""
        reference = self.norms[0]
        return max(abs(n - reference) for n in self.norms) / reference

    def csv_header(self) -> list[str]:
        dim = self.states[0].shape[0]
        columns = ["t", "norm"]
        for i in range(dim):
            columns += [f"re_{i}", f"im_{i}"]
        return columns

    def csv_rows(self) -> list[list[float]]:
        rows = []
        for t, norm, state in zip(self.times, self.norms, self.states):
            row = [float(t), float(norm)]
            for amplitude in state:
                row += [float(amplitude.real), float(amplitude.imag)]
            rows.append(row)
        return rows

    @override
    def to_dict(self) -> TrajectoryPayload:
        return {
            "times": [float(t) for t in self.times],
            "norms": [float(n) for n in self.norms],
            "drift": self.drift,
            "states": [vector_to_payload(s) for s in self.states],
            "dual_states": [vector_to_payload(s) for s in self.dual_states],
        }


@dataclass(frozen=True)
class SweepResult(SerializableABC):
    parameter_values: tuple[float, ...]
    reality_flags: tuple[bool, ...]
    positivity_flags: tuple[bool, ...]
    critical_estimate: Optional[float] = None

    def csv_rows(self) -> list[list[Any]]:
        return [
            [float(p), bool(r), bool(q)]
            for p, r, q in zip(self.parameter_values, self.reality_flags, self.positivity_flags)
        ]

    @override
    def to_dict(self) -> SweepPayload:
        return {
            "parameter_values": [float(p) for p in self.parameter_values],
            "reality_flags": list(self.reality_flags),
            "positivity_flags": list(self.positivity_flags),
            "critical_estimate": self.critical_estimate,
        }


@dataclass(frozen=True)
class RunConfig:
    command: Command
    input_paths: tuple[str, ...] = ()
    params_path: Optional[str] = None
    state_path: Optional[str] = None
    tol: float = 1e-9
    n_factors: int = 2
    seed: int = 0
    output_path: Optional[str] = None
    format: OutputFormat = "json"
    t_max: float = 10.0
    samples: int = 101
    range_lo: float = 0.0
    range_hi: float = 2.0
    model: str = "pt_chain"
    dim: int = 2
    seeds: int = 10
    verbose: bool = False

    def __post_init__(self) -> None:
        if not self.tol > 0:
            raise InputFormatError(f"tol must be positive, got {self.tol}")
        if self.n_factors < 1:
            raise InputFormatError(f"n_factors must be at least 1, got {self.n_factors}")
        if self.command in INPUT_COMMANDS and not self.input_paths:
            raise InputFormatError(f"{self.command} requires --input")
        if self.command == "evolve" and not self.state_path:
            raise InputFormatError("evolve requires --state")
        if self.command in ("evolve", "sweep") and self.samples < 2:
            raise InputFormatError(f"{self.command} needs at least 2 samples")
        if self.command == "suite" and (self.seeds < 1 or self.dim < 2):
            raise InputFormatError("suite needs --seeds >= 1 and --dim >= 2")
