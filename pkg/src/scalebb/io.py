"""Readers for the CLI's input files and the JSON writer for its output."""

import json
from pathlib import Path
from typing import Any

import numpy as np

from scalebb.core.expr import Expr, load_expression
from scalebb.core.gersch import point_matrix
from scalebb.core.interval import Box
from scalebb.core.schemas import FloatArray, IntervalMatrix, PointMatrix
from scalebb.schemas import (
    BoxSchema,
    IntervalMatrixSchema,
    ScalingSchema,
    matrix_schema,
)


def read_json(path: str | Path) -> Any:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def load_box(path: str | Path) -> Box:
    return BoxSchema.model_validate(read_json(path)).to_box()


def load_matrix(path: str | Path) -> IntervalMatrix | PointMatrix:
    """Interval form ``{"n", "lower", "upper"}`` or point form ``{"n", "h"}``."""
    schema = matrix_schema(read_json(path))
    if isinstance(schema, IntervalMatrixSchema):
        return schema.to_interval_matrix()
    return schema.to_point_matrix()


def load_point_matrix(path: str | Path) -> PointMatrix:
    """Load a matrix file, reducing interval form to its point matrix."""
    matrix = load_matrix(path)
    if isinstance(matrix, IntervalMatrix):
        return point_matrix(matrix)
    return matrix


def load_scaling(path: str | Path) -> FloatArray:
    """Scaling vector file ``{"d": [...]}``; positivity is checked by the consumer."""
    return np.array(ScalingSchema.model_validate(read_json(path)).d, dtype=float)


def load_expression_file(path: str | Path) -> tuple[int, Expr]:
    """Expression file: ``n=<dim>`` on the first line, the expression on the second."""
    return load_expression(Path(path).read_text(encoding="utf-8"))


def _plain(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


def dump_json(payload: Any) -> str:
    """Serialize a result document; floats use the shortest round-trip repr."""
    return json.dumps(payload, indent=2, default=_plain, allow_nan=False)
