from .dieudonne import (
    check_quasi_hermitian,
    default_metric,
    metric_from_weights,
    physical_inner_product,
    solve_metric_space,
)
from .evolution import expectation, norm_trajectory, propagate, propagate_dual
from .factorchain import (
    build_chain,
    lemma1_observable,
    n2_named_operators,
    n3_named_operators,
    verify_chain,
    verify_theorem1,
)
from .types.quasiherm_types import (
    MetricFamily,
    ObservableChain,
    SpectralData,
    TrajectoryRecord,
    VerificationReport,
)

__all__ = [
    "MetricFamily",
    "ObservableChain",
    "SpectralData",
    "TrajectoryRecord",
    "VerificationReport",
    "build_chain",
    "check_quasi_hermitian",
    "default_metric",
    "expectation",
    "lemma1_observable",
    "metric_from_weights",
    "n2_named_operators",
    "n3_named_operators",
    "norm_trajectory",
    "physical_inner_product",
    "propagate",
    "propagate_dual",
    "solve_metric_space",
    "verify_chain",
    "verify_theorem1",
]
