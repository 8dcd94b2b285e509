import argparse
import asyncio
import csv
import sys
from typing import Any, Optional, Sequence

import numpy as np

from quasiherm.config import load_settings
from quasiherm.dieudonne import (
    check_quasi_hermitian,
    default_metric,
    metric_from_weights,
    solve_metric_space,
)
from quasiherm.errors import (
    BadDimension,
    BadRange,
    DimensionMismatch,
    InputFormatError,
    QuasiHermError,
    ZeroParameter,
)
from quasiherm.evolution import norm_trajectory, propagate, propagate_dual
from quasiherm.factorchain import (
    build_chain,
    chain_from_factors,
    lemma1_observable,
    table_column,
    verify_chain,
    verify_theorem1,
)
from quasiherm.interchange import (
    dumps,
    matrix_from_payload,
    matrix_to_payload,
    read_json,
    read_matrices,
    read_matrix,
    read_vector,
    save_csv,
    save_json,
    vector_to_payload,
)
from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import eig, is_positive_definite, real_spectrum_defect
from quasiherm.models import (
    pt_chain,
    random_hermitian,
    random_hermitian_parameter,
    random_qh,
    random_weights,
    rng_for,
    spectral_reality,
    sweep_exceptional_async,
    toy_2x2,
)
from quasiherm.types.quasiherm_types import ObservableChain, RunConfig
from quasiherm.util.util import ComplexArray, relative_residual

logger = get_logger()

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
COMMANDS = ("analyze", "metric", "chain", "verify", "evolve", "sweep", "suite")
MODELS = ("pt_chain", "toy")


def build_parser() -> argparse.ArgumentParser:
    settings = load_settings()
    parser = argparse.ArgumentParser(
        prog="quasiherm",
        description="Metric operators and quasi-Hermitian observable chains.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument(
        "--input", action="append", default=[], help="matrix JSON (H, then optional Θ)"
    )
    parser.add_argument(
        "--params", help="JSON list of Hermitian parameters, M_1 first and Z_N last"
    )
    parser.add_argument("--state", help="state vector JSON")
    parser.add_argument("--tol", type=float, default=settings.tol)
    parser.add_argument("--n-factors", type=int, default=2)
    parser.add_argument("--seed", type=int, default=settings.seed)
    parser.add_argument("--out")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--t-max", type=float, default=10.0)
    parser.add_argument("--samples", type=int, default=101)
    parser.add_argument("--range-lo", type=float, default=0.0)
    parser.add_argument("--range-hi", type=float, default=2.0)
    parser.add_argument("--model", choices=MODELS, default="pt_chain")
    parser.add_argument("--dim", type=int, default=2)
    parser.add_argument(
        "--seeds", type=int, default=10, help="random systems per (N, dim) in suite"
    )
    parser.add_argument("--verbose", action="store_true", default=settings.verbose)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input_paths=tuple(args.input),
        params_path=args.params,
        state_path=args.state,
        tol=args.tol,
        n_factors=args.n_factors,
        seed=args.seed,
        output_path=args.out,
        format=args.format,
        t_max=args.t_max,
        samples=args.samples,
        range_lo=args.range_lo,
        range_hi=args.range_hi,
        model=args.model,
        dim=args.dim,
        seeds=args.seeds,
        verbose=args.verbose,
    )


async def emit(
    config: RunConfig,
    payload: Any,
    header: Sequence[str] = (),
    rows: Sequence[Sequence[Any]] = (),
) -> None:
    if config.format == "csv" and header:
        if config.output_path:
            await save_csv(config.output_path, header, rows)
        else:
            writer = csv.writer(sys.stdout)
            writer.writerow(header)
            writer.writerows(rows)
        return
    if config.output_path:
        await save_json(config.output_path, payload)
    else:
        print(dumps(payload))


def _hamiltonian_and_metric(config: RunConfig) -> tuple[ComplexArray, ComplexArray]:
    hamiltonian = read_matrix(config.input_paths[0])
    if len(config.input_paths) > 1:
        return hamiltonian, read_matrix(config.input_paths[1])
    return hamiltonian, default_metric(solve_metric_space(hamiltonian))


async def run_analyze(config: RunConfig) -> int:
    hamiltonian = read_matrix(config.input_paths[0])
    real, max_imag = spectral_reality(hamiltonian, config.tol)
    spectral = eig(hamiltonian)
    rows = [
        [n, float(value.real), float(value.imag)]
        for n, value in enumerate(spectral.eigenvalues)
    ]
    payload = {
        "tol": config.tol,
        "real": real,
        "max_imag": max_imag,
        "condition_estimate": spectral.condition_estimate,
        "eigenvalues": vector_to_payload(spectral.eigenvalues),
    }
    await emit(config, payload, ["n", "re", "im"], rows)
    return EXIT_OK if real else EXIT_FAILED


async def run_metric(config: RunConfig) -> int:
    hamiltonian = read_matrix(config.input_paths[0])
    family = solve_metric_space(hamiltonian)
    payload = {
        "tol": config.tol,
        "family": family.to_dict(),
        "spectral": family.spectral.to_dict() if family.spectral is not None else None,
        "rank": len(family.basis),
        "degenerate": family.degenerate,
        "agreement": family.agreement,
    }
    if not family.has_spectral_path:
        payload.update(
            Theta=None,
            positive_definite=False,
            smallest_eigenvalue=None,
            residual=None,
            diagnostic="no spectral path: only the null-space basis is available",
        )
        await emit(config, payload)
        return EXIT_FAILED
    theta = default_metric(family)
    positive, smallest = is_positive_definite(theta, 1e-12)
    residual = check_quasi_hermitian(hamiltonian, theta)
    payload.update(
        Theta=matrix_to_payload(theta),
        positive_definite=positive,
        smallest_eigenvalue=smallest,
        residual=residual,
    )
    await emit(config, payload)
    ok = positive and residual <= config.tol and (family.agreement or 0.0) <= 1e-8
    return EXIT_OK if ok else EXIT_FAILED


def _params(config: RunConfig, dim: int) -> list[ComplexArray]:
    if config.params_path:
        params = read_matrices(config.params_path)
        if len(params) != config.n_factors - 1:
            logger.warning(
                f"{len(params)} parameters given, building N={len(params) + 1} "
                f"instead of {config.n_factors}"
            )
        return params
    rng = rng_for(config.seed)
    return [random_hermitian_parameter(dim, rng) for _ in range(config.n_factors - 1)]


async def run_chain(config: RunConfig) -> int:
    hamiltonian, theta = _hamiltonian_and_metric(config)
    chain = build_chain(hamiltonian, theta, _params(config, hamiltonian.shape[0]))
    ladder = verify_chain(chain, config.tol)
    theorem = verify_theorem1(chain, config.tol)
    payload: dict[str, Any] = dict(chain.to_dict())
    payload["table"] = table_column(chain.N)
    payload["reports"] = {"verify_chain": ladder.to_dict(), "theorem1": theorem.to_dict()}
    await emit(config, payload)
    return EXIT_OK if ladder.overall_pass and theorem.overall_pass else EXIT_FAILED


def load_chain(path: str) -> ObservableChain:
    """Le uma cadeia completa ou so {"H", "factors"} escrita a mao."""
    payload = read_json(path)
    if not isinstance(payload, dict):
        raise InputFormatError(f"{path}: expected a JSON object")
    if "observables" not in payload and "factors" in payload and "H" in payload:
        return chain_from_factors(
            matrix_from_payload(payload["H"]),
            [matrix_from_payload(z) for z in payload["factors"]],
        )
    return ObservableChain.from_dict(payload)


async def run_verify(config: RunConfig) -> int:
    chain = load_chain(config.input_paths[0])
    ladder = verify_chain(chain, config.tol)
    theorem = verify_theorem1(chain, config.tol)
    payload = {"verify_chain": ladder.to_dict(), "theorem1": theorem.to_dict()}
    rows = [[r["relation"], r["residual"], r["pass"]] for r in ladder.rows() + theorem.rows()]
    await emit(config, payload, ["relation", "residual", "pass"], rows)
    for name in ladder.failing() + theorem.failing():
        logger.error(f"relation {name} fails at tol {config.tol:.1e}")
    return EXIT_OK if ladder.overall_pass and theorem.overall_pass else EXIT_FAILED


async def run_evolve(config: RunConfig) -> int:
    hamiltonian, theta = _hamiltonian_and_metric(config)
    psi0 = read_vector(config.state_path)
    times = np.linspace(0.0, config.t_max, config.samples)
    record = norm_trajectory(hamiltonian, theta, psi0, times)
    payload = {"tol": config.tol, "trajectory": record.to_dict()}
    await emit(config, payload, record.csv_header(), record.csv_rows())
    return EXIT_OK if record.drift <= config.tol else EXIT_FAILED


def _family(config: RunConfig):
    if config.model == "toy":
        return toy_2x2
    return lambda gamma: pt_chain(config.dim, gamma)


async def run_sweep(config: RunConfig) -> int:
    result = await sweep_exceptional_async(
        _family(config), config.range_lo, config.range_hi, config.samples
    )
    await emit(config, result.to_dict(), ["parameter", "reality", "positivity"], result.csv_rows())
    return EXIT_OK


def _dual_gap(
    hamiltonian: ComplexArray, theta: ComplexArray, psi0: ComplexArray, t: float
) -> float:
    expected = theta @ propagate(hamiltonian, psi0, t)
    return relative_residual(propagate_dual(hamiltonian, theta, psi0, t), expected, expected)


def suite_case(n: int, dim: int, seed: int, t_max: float, samples: int) -> dict[str, float]:
    """Um sistema aleatorio passando por todo o pipeline; devolve os piores residuos."""
    hamiltonian, _ = random_qh(dim, seed)
    rng = rng_for(seed + 1)
    family = solve_metric_space(hamiltonian)
    theta = metric_from_weights(family, random_weights(dim, rng))
    chain = build_chain(
        hamiltonian, theta, [random_hermitian_parameter(dim, rng) for _ in range(n - 1)]
    )
    psi0 = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    times = np.linspace(0.0, t_max, samples)
    hermitian_m = random_hermitian(dim, rng)
    skew = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    non_hermitian_m = hermitian_m + 0.5 * (skew - skew.conj().T)
    dual_gap = max(_dual_gap(hamiltonian, theta, psi0, t) for t in (0.5, 1.0, 2.0))
    return {
        "theorem1": verify_theorem1(chain).max_residual,
        "ladder": verify_chain(chain).max_residual,
        "real_spectra": max(real_spectrum_defect(o) for o in chain.observables),
        "metric_rank_gap": float(abs(len(family.basis) - dim)),
        "metric_agreement": family.agreement if family.agreement is not None else float("inf"),
        "unitarity_drift": norm_trajectory(hamiltonian, theta, psi0, times).drift,
        "control_drift": norm_trajectory(
            hamiltonian, np.eye(dim), psi0, times, check=False
        ).drift,
        "dual_identity": dual_gap,
        "lemma1": check_quasi_hermitian(lemma1_observable(hermitian_m, theta), theta),
        "lemma1_contrapositive": check_quasi_hermitian(non_hermitian_m @ theta, theta),
    }


# criterio -> (limite, True quando o valor precisa ficar abaixo dele)
SUITE_CRITERIA: dict[str, tuple[float, bool]] = {
    "theorem1": (1e-8, True),
    "ladder": (1e-9, True),
    "real_spectra": (1e-8, True),
    "metric_rank_gap": (0.5, True),
    "metric_agreement": (1e-8, True),
    "unitarity_drift": (1e-8, True),
    "control_drift": (1e-2, False),
    "dual_identity": (1e-9, True),
    "lemma1": (1e-10, True),
    "lemma1_contrapositive": (1e-4, False),
}


def summarize(cases: list[dict[str, float]]) -> dict[str, Any]:
    summary: dict[str, Any] = {}
    for name, (threshold, below) in SUITE_CRITERIA.items():
        values = [case[name] for case in cases]
        passed = [v <= threshold if below else v >= threshold for v in values]
        summary[name] = {
            "threshold": threshold,
            "bound": "max" if below else "min",
            "worst": max(values) if below else min(values),
            "passed": sum(passed),
            "total": len(values),
        }
    return summary


async def run_suite(config: RunConfig) -> int:
    grid = [
        (n, dim, config.seed + s)
        for n in range(1, config.n_factors + 1)
        for dim in range(2, config.dim + 1)
        for s in range(config.seeds)
    ]
    logger.info(f"Suite over {len(grid)} random systems")
    cases = await asyncio.gather(
        *(
            asyncio.to_thread(suite_case, n, dim, seed, config.t_max, config.samples)
            for n, dim, seed in grid
        )
    )
    summary = summarize(list(cases))
    ok = all(entry["passed"] == entry["total"] for entry in summary.values())
    await emit(config, {"tol": config.tol, "systems": len(grid), "criteria": summary, "pass": ok})
    return EXIT_OK if ok else EXIT_FAILED


HANDLERS = {
    "analyze": run_analyze,
    "metric": run_metric,
    "chain": run_chain,
    "verify": run_verify,
    "evolve": run_evolve,
    "sweep": run_sweep,
    "suite": run_suite,
}


INPUT_ERRORS = (
    InputFormatError,
    DimensionMismatch,
    BadRange,
    BadDimension,
    ZeroParameter,
    OSError,
)


async def run(config: RunConfig) -> int:
    logger.info(f"Running {config.command}")
    try:
        return await HANDLERS[config.command](config)
    except INPUT_ERRORS as exc:
        logger.error(f"{config.command}: bad input: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except QuasiHermError as exc:
        logger.error(f"{config.command}: {exc}")
        print(f"error: {exc}", file=sys.stderr)
        await emit(
            config,
            {"command": config.command, "error": type(exc).__name__, "diagnostic": str(exc)},
        )
        return EXIT_FAILED


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        get_logger(verbose=True)
    try:
        config = config_from_args(args)
    except InputFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return asyncio.run(run(config))


if __name__ == "__main__":
    sys.exit(main())
