"""Scaling-vector heuristics: Local Improvement I and II.

Local Improvement I lowers one unsaturated row's d_i at a time until the row
is exactly saturated. Local Improvement II collects the unsaturated rows, closes
the set over exactly saturated neighbours and solves the M-matrix subsystem
H_I d_I = a for all of them at once.
"""

import warnings
from collections.abc import Sequence

import numpy as np
from scipy.linalg import LinAlgWarning, lu_factor, lu_solve

from scalebb.core.errors import (
    DegenerateRow,
    IterationAnomaly,
    NonpositiveRadius,
    NonpositiveScaling,
    NonpositiveSolution,
    RowSaturated,
    SingularSubsystem,
)
from scalebb.core.gersch import (
    decompose_blocks,
    deficit_objective,
    positive_vector,
    saturation,
    tolerance,
)
from scalebb.core.schemas import (
    FloatArray,
    Method,
    PointMatrix,
    ScalingConfig,
    ScalingState,
    ScalingStatus,
    StepKind,
    Subsystem,
    TraceStep,
)


def initial_d(rad: Sequence[float] | FloatArray) -> FloatArray:
    """Starting scaling vector d = rad; zero-width variables must be removed first."""
    return positive_vector(rad, NonpositiveRadius, "radius").copy()


def li1_row_update(
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    i: int,
    tol: float | None = None,
) -> float:
    """Smallest d_i keeping row i saturated: -(1/h_ii) sum_{j!=i} h_ij d_j."""
    scaling = np.asarray(d, dtype=float)
    tau = tolerance(h) if tol is None else tol
    s = saturation(h, scaling)
    if s[i] <= tau:
        raise RowSaturated(
            f"row {i} is not unsaturated (saturation {s[i]:.6g}, tolerance {tau:.3g})"
        )
    off_sum = float(h.h[i] @ scaling - h.h[i, i] * scaling[i])
    if off_sum == 0:
        raise DegenerateRow(f"row {i} has no off-diagonal coupling at the current scaling")
    return -off_sum / float(h.h[i, i])


def _convex(s: FloatArray, tau: float) -> bool:
    return bool(np.all(s >= -tau))


def _all_saturated(s: FloatArray, tau: float) -> bool:
    return bool(np.all(s <= tau))


def li1(
    h: PointMatrix,
    d0: Sequence[float] | FloatArray,
    tol: float | None = None,
    max_sweeps: int | None = None,
    rad: Sequence[float] | FloatArray | None = None,
    config: ScalingConfig | None = None,
) -> ScalingState:
    """Local Improvement I.

    Sweeps rows in ascending order and updates each unsaturated row in place,
    so later rows of a sweep see the fresh values. Stops on a sweep without
    updates, on a convex certificate, when a sweep improves the deficit
    objective by less than ``li1_improvement_rtol`` relatively, or after
    ``max_sweeps`` sweeps.
    """
    config = config or ScalingConfig()
    tau = tolerance(h, config) if tol is None else tol
    sweeps = config.li1_max_sweeps if max_sweeps is None else max_sweeps
    d = positive_vector(d0, NonpositiveScaling, "initial scaling vector").copy()
    objective = deficit_objective(h, d, rad)
    trace: list[TraceStep] = []

    def finish(status: ScalingStatus) -> ScalingState:
        return ScalingState(d=d, trace=tuple(trace), status=status, method=Method.LI1)

    for _ in range(sweeps):
        if _convex(saturation(h, d), tau):
            return finish(ScalingStatus.CONVEX)
        before = objective
        updated = False
        for i in range(h.n):
            if saturation(h, d)[i] <= tau:
                continue
            d = d.copy()
            d[i] = li1_row_update(h, d, i, tau)
            objective = deficit_objective(h, d, rad)
            trace.append(TraceStep(StepKind.ROW_UPDATE, (i,), d, objective))
            updated = True
        if not updated:
            return finish(ScalingStatus.ALL_SATURATED)
        if before - objective <= config.li1_improvement_rtol * before:
            return finish(ScalingStatus.TOLERANCE_STOP)

    s = saturation(h, d)
    if _convex(s, tau):
        return finish(ScalingStatus.CONVEX)
    if _all_saturated(s, tau):
        return finish(ScalingStatus.ALL_SATURATED)
    return finish(ScalingStatus.ITERATION_CAP)


def identify_I(  # noqa: N802
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    tol: float | None = None,
) -> tuple[int, ...]:
    """Strictly unsaturated rows, closed over exactly saturated coupled rows."""
    tau = tolerance(h) if tol is None else tol
    s = saturation(h, d)
    members = set(np.flatnonzero(s > tau).tolist())
    if not members:
        return ()
    saturated = set(np.flatnonzero(np.abs(s) <= tau).tolist())
    grew = True
    while grew:
        grew = False
        for i in sorted(saturated - members):
            if any(h.h[i, j] != 0 for j in members):
                members.add(i)
                grew = True
    return tuple(sorted(members))


def build_subsystem(
    h: PointMatrix,
    d: Sequence[float] | FloatArray,
    indices: Sequence[int],
) -> Subsystem:
    """H_I and a_i = -sum_{j not in I} h_ij d_j for the index set I."""
    scaling = np.asarray(d, dtype=float)
    idx = np.asarray(sorted(indices), dtype=int)
    outside = np.ones(h.n, dtype=bool)
    outside[idx] = False
    a = -(h.h[np.ix_(idx, outside)] @ scaling[outside])
    return Subsystem(
        indices=tuple(int(i) for i in idx),
        h_i=h.h[np.ix_(idx, idx)],
        a=a + 0.0,
        scale=float(scaling.max()),
    )


def solve_subsystem(s: Subsystem, config: ScalingConfig | None = None) -> FloatArray:
    """Solve H_I d_I = a by LU with partial pivoting."""
    config = config or ScalingConfig()
    norm = float(np.abs(s.h_i).sum(axis=1).max())
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = lu_factor(s.h_i)
    min_pivot = float(np.abs(np.diag(lu)).min())
    if min_pivot == 0 or min_pivot < config.pivot_rtol * norm:
        raise SingularSubsystem(
            f"subsystem on rows {list(s.indices)} is singular (smallest pivot {min_pivot:.3g})"
        )
    d_i = np.asarray(lu_solve((lu, piv), s.a), dtype=float)
    if np.any(d_i <= config.saturation_rtol * s.scale):
        raise NonpositiveSolution(
            f"subsystem on rows {list(s.indices)} has a nonpositive solution {d_i.tolist()}"
        )
    return d_i


def li2(
    h: PointMatrix,
    d0: Sequence[float] | FloatArray,
    tol: float | None = None,
    max_iters: int | None = None,
    rad: Sequence[float] | FloatArray | None = None,
    config: ScalingConfig | None = None,
) -> ScalingState:
    """Local Improvement II on an irreducible H.

    Raises IterationAnomaly when more than n - 1 iterations are needed.
    """
    config = config or ScalingConfig()
    tau = tolerance(h, config) if tol is None else tol
    limit = h.n if max_iters is None else max_iters
    d = positive_vector(d0, NonpositiveScaling, "initial scaling vector").copy()
    trace: list[TraceStep] = []

    while True:
        s = saturation(h, d)
        if _all_saturated(s, tau):
            status = ScalingStatus.ALL_SATURATED
            break
        if _convex(s, tau):
            status = ScalingStatus.CONVEX
            break
        if len(trace) >= limit:
            raise IterationAnomaly(f"guard still open after {len(trace)} iterations (n={h.n})")
        indices = identify_I(h, d, tau)
        d_i = solve_subsystem(build_subsystem(h, d, indices), config)
        d = d.copy()
        d[list(indices)] = d_i
        trace.append(
            TraceStep(StepKind.SUBSYSTEM_UPDATE, indices, d, deficit_objective(h, d, rad))
        )

    if len(trace) > h.n - 1:
        raise IterationAnomaly(f"needed {len(trace)} iterations, more than n - 1 = {h.n - 1}")
    return ScalingState(d=d, trace=tuple(trace), status=status, method=Method.LI2)


def run_method(
    method: Method,
    h: PointMatrix,
    d0: Sequence[float] | FloatArray,
    tol: float | None = None,
    max_steps: int | None = None,
    rad: Sequence[float] | FloatArray | None = None,
    config: ScalingConfig | None = None,
) -> ScalingState:
    if method is Method.LI1:
        return li1(h, d0, tol=tol, max_sweeps=max_steps, rad=rad, config=config)
    return li2(h, d0, tol=tol, max_iters=max_steps, rad=rad, config=config)


def improve_blocks(
    h: PointMatrix,
    rad: Sequence[float] | FloatArray,
    method: Method,
    tol: float | None = None,
    max_steps: int | None = None,
    config: ScalingConfig | None = None,
) -> tuple[FloatArray, list[tuple[tuple[int, ...], ScalingState]]]:
    """Run a heuristic on every irreducible block from d = rad and reassemble d."""
    r = initial_d(rad)
    d = r.copy()
    results: list[tuple[tuple[int, ...], ScalingState]] = []
    for block in decompose_blocks(h):
        sub = h.submatrix(block)
        sub_rad = r[list(block)]
        state = run_method(method, sub, sub_rad, tol, max_steps, sub_rad, config)
        d[list(block)] = state.d
        results.append((block, state))
    return d, results
