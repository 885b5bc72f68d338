"""Core value objects for scalebb - lightweight dataclasses."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import NDArray

from scalebb.core.errors import AsymmetricInput, StructuralError

FloatArray = NDArray[np.float64]


def _frozen(values: Any) -> FloatArray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


def _floats(values: FloatArray) -> list[float]:
    return [float(v) for v in values]


class ScalingStatus(str, Enum):
    """Why a scaling heuristic stopped."""

    ALL_SATURATED = "all_saturated"  # Hd <= 0
    CONVEX = "convex"  # Hd >= 0
    TOLERANCE_STOP = "tolerance_stop"
    ITERATION_CAP = "iteration_cap"


class StepKind(str, Enum):
    ROW_UPDATE = "row_update"
    SUBSYSTEM_UPDATE = "subsystem_update"


class Method(str, Enum):
    """Scaling-vector heuristics."""

    LI1 = "li1"
    LI2 = "li2"


class Family(str, Enum):
    """Random matrix families of the iteration-count experiment."""

    GENERAL = "general"
    TRIDIAGONAL = "tridiagonal"


@dataclass
class ScalingConfig:
    """Tolerances and caps for the scaling heuristics."""

    # tau = saturation_rtol * max(1, ||H||_inf)
    saturation_rtol: float = 1e-9
    # singular when a pivot is below pivot_rtol * ||H_I||_inf
    pivot_rtol: float = 1e-12
    li1_max_sweeps: int = 1000
    li1_improvement_rtol: float = 1e-12


@dataclass(frozen=True, eq=False)
class IntervalMatrix:
    """A square interval matrix given by its endpoint matrices."""

    lower: FloatArray
    upper: FloatArray

    def __post_init__(self) -> None:
        lower, upper = _frozen(self.lower), _frozen(self.upper)
        if lower.ndim != 2 or lower.shape[0] != lower.shape[1] or lower.shape != upper.shape:
            raise StructuralError(
                f"interval matrix endpoints must be square and of equal shape, "
                f"got {lower.shape} and {upper.shape}"
            )
        if np.any(lower > upper):
            raise StructuralError("interval matrix has an entry with lower > upper")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def n(self) -> int:
        return int(self.lower.shape[0])

    @property
    def magnitude(self) -> FloatArray:
        """Entrywise max(|lower|, |upper|)."""
        return np.maximum(np.abs(self.lower), np.abs(self.upper))

    def is_symmetric(self) -> bool:
        return bool(
            np.array_equal(self.lower, self.lower.T) and np.array_equal(self.upper, self.upper.T)
        )

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "lower": self.lower.tolist(), "upper": self.upper.tolist()}


@dataclass(frozen=True, eq=False)
class PointMatrix:
    """Symmetric real matrix with nonpositive off-diagonal entries."""

    h: FloatArray

    def __post_init__(self) -> None:
        h = _frozen(self.h)
        if h.ndim != 2 or h.shape[0] != h.shape[1] or h.shape[0] < 1:
            raise StructuralError(f"point matrix must be square and nonempty, got shape {h.shape}")
        if not np.array_equal(h, h.T):
            raise AsymmetricInput("point matrix is not symmetric")
        off_diagonal = h[~np.eye(h.shape[0], dtype=bool)]
        if np.any(off_diagonal > 0):
            raise StructuralError("point matrix has a positive off-diagonal entry")
        object.__setattr__(self, "h", h)

    @property
    def n(self) -> int:
        return int(self.h.shape[0])

    @property
    def norm_inf(self) -> float:
        return float(np.abs(self.h).sum(axis=1).max())

    def submatrix(self, indices: tuple[int, ...]) -> "PointMatrix":
        idx = np.asarray(indices, dtype=int)
        return PointMatrix(self.h[np.ix_(idx, idx)])

    def to_dict(self) -> dict[str, Any]:
        return {"n": self.n, "h": self.h.tolist()}


@dataclass(frozen=True, eq=False)
class AlphaVector:
    values: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values))

    def __len__(self) -> int:
        return len(self.values)

    def to_list(self) -> list[float]:
        return _floats(self.values)


@dataclass(frozen=True, eq=False)
class RowValues:
    """Per-row saturation quantities at a scaling vector d."""

    hd_over_d: FloatArray
    hd: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "hd_over_d", _frozen(self.hd_over_d))
        object.__setattr__(self, "hd", _frozen(self.hd))

    @property
    def deficit(self) -> FloatArray:
        return np.maximum(0.0, -self.hd_over_d)


@dataclass(frozen=True, eq=False)
class Subsystem:
    """The linear system H_I d_I = a of one Local Improvement II step."""

    indices: tuple[int, ...]
    h_i: FloatArray
    a: FloatArray
    # max d of the full vector, the reference scale for positivity
    scale: float = 1.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "h_i", _frozen(self.h_i))
        object.__setattr__(self, "a", _frozen(self.a))


@dataclass(frozen=True, eq=False)
class TraceStep:
    kind: StepKind
    indices: tuple[int, ...]
    d_after: FloatArray
    deficit_objective_after: float

    def to_dict(self) -> dict[str, Any]:
        index_or_set: int | list[int]
        if self.kind is StepKind.ROW_UPDATE:
            index_or_set = self.indices[0]
        else:
            index_or_set = list(self.indices)
        return {
            "kind": self.kind.value,
            "index_or_set": index_or_set,
            "d_after": _floats(self.d_after),
            "deficit_objective_after": self.deficit_objective_after,
        }


@dataclass(frozen=True, eq=False)
class ScalingState:
    """Result of a scaling heuristic: the final d and how it got there."""

    d: FloatArray
    trace: tuple[TraceStep, ...]
    status: ScalingStatus
    method: Method

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def to_dict(self, include_trace: bool = False) -> dict[str, Any]:
        data: dict[str, Any] = {
            "method": self.method.value,
            "d": _floats(self.d),
            "status": self.status.value,
            "iterations": self.iterations,
        }
        if include_trace:
            data["trace"] = [step.to_dict() for step in self.trace]
        return data


@dataclass
class ConditionCheck:
    """Verdict of one optimality condition plus its witness."""

    name: str
    passed: bool
    message: str
    witness: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "message": self.message,
            "witness": self.witness,
        }


@dataclass
class OptimalityReport:
    i_star: tuple[int, ...]
    c1_saturation: ConditionCheck
    c2_equal_on_istar: ConditionCheck
    c3_dominance: ConditionCheck
    c4_diag_dominant_exclusion: ConditionCheck
    c3_unnormalized: ConditionCheck  # informational only
    tolerance: float
    saturation: list[float]
    deficit_objective: float
    alpha_objective: float
    zero_objective: bool

    @property
    def conditions(self) -> list[ConditionCheck]:
        return [
            self.c1_saturation,
            self.c2_equal_on_istar,
            self.c3_dominance,
            self.c4_diag_dominant_exclusion,
        ]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.conditions)

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "i_star": list(self.i_star),
            "conditions": [check.to_dict() for check in self.conditions],
            "informational": [self.c3_unnormalized.to_dict()],
            "tolerance": self.tolerance,
            "saturation": self.saturation,
            "deficit_objective": self.deficit_objective,
            "alpha_objective": self.alpha_objective,
            "zero_objective": self.zero_objective,
        }


@dataclass
class OracleResult:
    d_star: FloatArray
    alpha_objective: float
    deficit_objective: float
    grid_step: float
    evaluations: int = 0

    def to_dict(self) -> dict[str, Any]:
        return {
            "d_star": _floats(self.d_star),
            "alpha_objective": self.alpha_objective,
            "deficit_objective": self.deficit_objective,
            "grid_step": self.grid_step,
            "evaluations": self.evaluations,
        }


@dataclass
class Counterexample:
    """An instance where Local Improvement II lost to the oracle."""

    h: list[list[float]]
    d_li2: list[float]
    d_oracle: list[float]
    alpha_objective_li2: float
    alpha_objective_oracle: float
    allowance: float

    def to_dict(self) -> dict[str, Any]:
        return {
            "matrix": {"n": len(self.h), "h": self.h},
            "d_li2": self.d_li2,
            "d_oracle": self.d_oracle,
            "alpha_objective_li2": self.alpha_objective_li2,
            "alpha_objective_oracle": self.alpha_objective_oracle,
            "allowance": self.allowance,
        }


@dataclass
class ConjectureReport:
    n: int
    trials: int
    seed: int
    grid_step: float
    passes: int = 0
    failures: int = 0
    counterexamples: list[Counterexample] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "grid_step": self.grid_step,
            "passes": self.passes,
            "failures": self.failures,
            "counterexamples": [c.to_dict() for c in self.counterexamples],
        }


@dataclass
class UnderestimationReport:
    samples: int
    seed: int
    max_underestimation_gap: float  # max of g - f, must be <= 0
    max_separation: float  # max of f - g
    argmax: list[float]
    midpoint_separation: float
    analytic_separation: float
    min_eigenvalue: float
    slack: float

    @property
    def underestimates(self) -> bool:
        return self.max_underestimation_gap <= self.slack

    def to_dict(self) -> dict[str, Any]:
        return {
            "samples": self.samples,
            "seed": self.seed,
            "underestimates": self.underestimates,
            "max_underestimation_gap": self.max_underestimation_gap,
            "max_separation": self.max_separation,
            "argmax": self.argmax,
            "midpoint_separation": self.midpoint_separation,
            "analytic_separation": self.analytic_separation,
            "min_eigenvalue": self.min_eigenvalue,
        }


@dataclass
class TrialStats:
    n: int
    family: Family
    trials_requested: int
    trials_counted: int
    skipped: int
    anomalies: int
    average_iterations: float | None
    max_iterations: int | None
    seed: int
    iteration_histogram: dict[int, int] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "n": self.n,
            "family": self.family.value,
            "trials_requested": self.trials_requested,
            "trials_counted": self.trials_counted,
            "skipped": self.skipped,
            "anomalies": self.anomalies,
            "average_iterations": self.average_iterations,
            "max_iterations": self.max_iterations,
            "seed": self.seed,
            "iteration_histogram": {str(k): v for k, v in sorted(self.iteration_histogram.items())},
        }
