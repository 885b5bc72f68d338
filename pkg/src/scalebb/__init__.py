"""
scalebb - scaled Gerschgorin alpha for alphaBB convex underestimators.

Chooses the scaling vector d of the scaled Gerschgorin bound on an interval
Hessian, checks candidate vectors against necessary optimality conditions and
reproduces the iteration-count statistics on random matrices.

Quick Start (Core Library):
    from scalebb import Box, alpha, interval_hessian, interval_matrix, li2, parse, point_matrix

    f = parse("5*x1*x2^2 + (100/3)*x1^3 - (7/6)*x2^3", n=2)
    box = Box.from_pairs([[1, 2], [1, 2]])
    h = point_matrix(interval_matrix(interval_hessian(f, box)))

    state = li2(h, d0=[0.5, 0.5])
    print(alpha(h, state.d).to_list())

Full Application:
    Install with: pip install scalebb[app]
    Then use the CLI: `scalebb improve matrix.json --method li2 --trace`
"""

__version__ = "0.1.0"

# Re-export core API for convenience
from scalebb.core import (
    AlphaVector,
    Box,
    Interval,
    IntervalMatrix,
    Method,
    PointMatrix,
    ScaleBBError,
    ScalingState,
    ScalingStatus,
    alpha,
    decompose_blocks,
    hessian,
    improve_blocks,
    interval_hessian,
    interval_matrix,
    li1,
    li2,
    parse,
    point_matrix,
)

__all__ = [
    # Version
    "__version__",
    # Pipeline
    "parse",
    "hessian",
    "interval_hessian",
    "interval_matrix",
    "point_matrix",
    "decompose_blocks",
    "alpha",
    "li1",
    "li2",
    "improve_blocks",
    # Data classes
    "AlphaVector",
    "Box",
    "Interval",
    "IntervalMatrix",
    "Method",
    "PointMatrix",
    "ScalingState",
    "ScalingStatus",
    "ScaleBBError",
]
