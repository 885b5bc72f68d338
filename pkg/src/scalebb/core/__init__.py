"""
scalebb core - scaled Gerschgorin alpha computation.

A dependency-light library (numpy, scipy): no logging, no settings, no files.

Usage:
    from scalebb.core import parse, interval_hessian, point_matrix, li2, alpha
    from scalebb.core import Box, interval_matrix

    f = parse("5*x1*x2^2 + (100/3)*x1^3 - (7/6)*x2^3", n=2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    h = point_matrix(interval_matrix(interval_hessian(f, box)))

    state = li2(h, d0=[0.5, 0.5])
    print(alpha(h, state.d).to_list())
"""

from scalebb.core.errors import (
    AsymmetricInput,
    DegenerateRow,
    DimensionTooLarge,
    ExpressionSyntaxError,
    InputError,
    InvalidInterval,
    IterationAnomaly,
    NegativeAlpha,
    NonpositiveRadius,
    NonpositiveScaling,
    NonpositiveSolution,
    NumericalFailure,
    ReducibleInput,
    RowSaturated,
    ScaleBBError,
    SingularSubsystem,
    StructuralError,
    VariableIndexError,
)
from scalebb.core.expr import (
    Expr,
    differentiate,
    eval_batch,
    eval_interval,
    eval_point,
    hessian,
    interval_hessian,
    load_expression,
    parse,
)
from scalebb.core.gersch import (
    alpha,
    alpha_from_interval,
    alpha_objective,
    decompose_blocks,
    deficit_objective,
    interval_matrix,
    is_irreducible,
    normalize,
    point_matrix,
    psd_certificate,
    row_values,
    saturation,
    separation_objective,
    tolerance,
)
from scalebb.core.interval import (
    Box,
    Interval,
    box_midpoint,
    box_radius,
    iv_add,
    iv_int_pow,
    iv_mul,
)
from scalebb.core.scaling import (
    build_subsystem,
    identify_I,
    improve_blocks,
    initial_d,
    li1,
    li1_row_update,
    li2,
    run_method,
    solve_subsystem,
)
from scalebb.core.schemas import (
    AlphaVector,
    Family,
    IntervalMatrix,
    Method,
    PointMatrix,
    RowValues,
    ScalingConfig,
    ScalingState,
    ScalingStatus,
    Subsystem,
    TraceStep,
)

__all__ = [
    # Errors
    "ScaleBBError",
    "InputError",
    "InvalidInterval",
    "DimensionTooLarge",
    "NegativeAlpha",
    "NumericalFailure",
    "RowSaturated",
    "SingularSubsystem",
    "NonpositiveSolution",
    "StructuralError",
    "AsymmetricInput",
    "NonpositiveRadius",
    "NonpositiveScaling",
    "DegenerateRow",
    "ReducibleInput",
    "IterationAnomaly",
    "ExpressionSyntaxError",
    "VariableIndexError",
    # Intervals
    "Interval",
    "Box",
    "iv_add",
    "iv_mul",
    "iv_int_pow",
    "box_radius",
    "box_midpoint",
    # Expressions
    "Expr",
    "parse",
    "load_expression",
    "differentiate",
    "hessian",
    "eval_point",
    "eval_batch",
    "eval_interval",
    "interval_hessian",
    # Gerschgorin
    "interval_matrix",
    "point_matrix",
    "decompose_blocks",
    "is_irreducible",
    "normalize",
    "row_values",
    "saturation",
    "alpha",
    "alpha_from_interval",
    "separation_objective",
    "deficit_objective",
    "alpha_objective",
    "psd_certificate",
    "tolerance",
    # Scaling
    "initial_d",
    "li1_row_update",
    "li1",
    "identify_I",
    "build_subsystem",
    "solve_subsystem",
    "li2",
    "run_method",
    "improve_blocks",
    # Data classes
    "AlphaVector",
    "Family",
    "IntervalMatrix",
    "Method",
    "PointMatrix",
    "RowValues",
    "ScalingConfig",
    "ScalingState",
    "ScalingStatus",
    "Subsystem",
    "TraceStep",
]
