"""Necessary optimality conditions for a scaling vector.

Everything is checked in normalized coordinates: H' = normalize(H, rad) and
c = d / rad, so that the radii drop out of the objective.
"""

from collections.abc import Sequence

import numpy as np
import structlog

from scalebb.core.errors import NonpositiveRadius, NonpositiveScaling
from scalebb.core.gersch import (
    alpha_objective,
    deficit_objective,
    normalize,
    positive_vector,
    saturation,
    tolerance,
)
from scalebb.core.schemas import (
    ConditionCheck,
    FloatArray,
    OptimalityReport,
    PointMatrix,
    ScalingConfig,
)

logger = structlog.get_logger()

# Condition rules: what each check states and what a failure means
CONDITION_RULES = {
    "c1_saturation": {
        "statement": "every row is saturated: (H'c)_i <= tau",
        "failure": "an unsaturated row remains, so lowering its c_i reduces the objective",
    },
    "c2_equal_on_istar": {
        "statement": "c is constant on the strictly saturated rows I*",
        "failure": "rows of I* carry different scalings",
    },
    "c3_dominance": {
        "statement": "c_i <= c_j for every i outside I* and j in I*",
        "failure": "a row outside I* is scaled above a row of I*",
    },
    "c4_diag_dominant_exclusion": {
        "statement": "no row with sum_j H'_kj >= 0 belongs to I*",
        "failure": "a diagonally dominant row is strictly saturated",
    },
    "c3_unnormalized": {
        "statement": "d_i rad_i <= d_j rad_j for every i outside I* and j in I*",
        "failure": "the radius-weighted ordering is violated (informational)",
    },
}


def _check(name: str, passed: bool, witness: dict[str, object]) -> ConditionCheck:
    rule = CONDITION_RULES[name]
    return ConditionCheck(
        name=name,
        passed=passed,
        message=rule["statement"] if passed else rule["failure"],
        witness=witness,
    )


def _check_saturation(s: FloatArray, tau: float) -> ConditionCheck:
    worst = int(np.argmax(s))
    return _check(
        "c1_saturation",
        bool(s[worst] <= tau),
        {"row": worst, "value": float(s[worst]), "slack": float(tau - s[worst])},
    )


def _check_equal(c: FloatArray, i_star: list[int], allowance: float) -> ConditionCheck:
    if not i_star:
        return _check("c2_equal_on_istar", True, {"common_ratio": None, "max_deviation": 0.0})
    values = c[i_star]
    deviation = float(values.max() - values.min())
    return _check(
        "c2_equal_on_istar",
        deviation <= allowance,
        {"common_ratio": float(values.max()), "max_deviation": deviation},
    )


def _check_dominance(
    name: str, c: FloatArray, i_star: list[int], allowance: float
) -> ConditionCheck:
    outside = [i for i in range(len(c)) if i not in i_star]
    if not i_star or not outside:
        return _check(name, True, {"pair": None})
    i = outside[int(np.argmax(c[outside]))]
    j = i_star[int(np.argmin(c[i_star]))]
    excess = float(c[i] - c[j])
    return _check(name, excess <= allowance, {"pair": [i, j], "excess": excess})


def _check_dominant_rows(
    row_sums: FloatArray, i_star: list[int], tau: float
) -> ConditionCheck:
    dominant = np.flatnonzero(row_sums >= -tau).tolist()
    violators = [k for k in dominant if k in i_star]
    return _check(
        "c4_diag_dominant_exclusion",
        not violators,
        {"dominant_rows": dominant, "row": violators[0] if violators else None},
    )


def check_optimality(
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    rad: Sequence[float] | FloatArray | None = None,
    tol: float | None = None,
    config: ScalingConfig | None = None,
) -> OptimalityReport:
    """
    Check the necessary optimality conditions at a scaling vector.

    Args:
        h: Irreducible point matrix
        d: Positive scaling vector
        rad: Box radii, all ones by default
        tol: Saturation tolerance; tau of the normalized matrix by default
        config: Tolerances used when ``tol`` is not given

    Returns:
        OptimalityReport with the four verdicts, I* and the objectives at d
    """
    scaling = positive_vector(d, NonpositiveScaling, "scaling vector")
    r = np.ones(h.n) if rad is None else positive_vector(rad, NonpositiveRadius, "radius")
    normalized = normalize(h, r)
    c = scaling / r
    tau = tolerance(normalized, config) if tol is None else tol
    s = saturation(normalized, c)
    i_star = np.flatnonzero(s < -tau).tolist()
    allowance = tau * float(c.max())

    weighted = scaling * r
    report = OptimalityReport(
        i_star=tuple(i_star),
        c1_saturation=_check_saturation(s, tau),
        c2_equal_on_istar=_check_equal(c, i_star, allowance),
        c3_dominance=_check_dominance("c3_dominance", c, i_star, allowance),
        c4_diag_dominant_exclusion=_check_dominant_rows(
            normalized.h.sum(axis=1), i_star, tau
        ),
        c3_unnormalized=_check_dominance(
            "c3_unnormalized", weighted, i_star, tau * float(weighted.max())
        ),
        tolerance=tau,
        saturation=[float(v) for v in s],
        deficit_objective=deficit_objective(h, scaling, r),
        alpha_objective=alpha_objective(h, scaling, r),
        zero_objective=bool(np.all(s >= -tau)),
    )

    logger.debug(
        "Optimality checked",
        n=h.n,
        i_star=list(report.i_star),
        passed=report.passed,
        failed=[check.name for check in report.conditions if not check.passed],
    )
    return report
