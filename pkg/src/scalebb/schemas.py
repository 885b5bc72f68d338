"""Pydantic schemas for the JSON files read by the CLI."""

from typing import Any, Self

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from scalebb.core.interval import Box
from scalebb.core.schemas import IntervalMatrix, PointMatrix


class BoxSchema(BaseModel):
    """``{"box": [[lo, hi], ...]}``"""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    box: list[tuple[float, float]] = Field(min_length=1)

    @model_validator(mode="after")
    def _ordered(self) -> Self:
        for i, (lo, hi) in enumerate(self.box):
            if lo > hi:
                raise ValueError(f"box component {i} has lo > hi: [{lo}, {hi}]")
        return self

    def to_box(self) -> Box:
        return Box.from_pairs(self.box)


def _check_square(name: str, rows: list[list[float]], n: int) -> None:
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"'{name}' must be a {n}x{n} matrix")


class IntervalMatrixSchema(BaseModel):
    """``{"n": k, "lower": [[...]], "upper": [[...]]}``"""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int = Field(ge=1)
    lower: list[list[float]]
    upper: list[list[float]]

    @model_validator(mode="after")
    def _shape(self) -> Self:
        _check_square("lower", self.lower, self.n)
        _check_square("upper", self.upper, self.n)
        for i, (lo_row, hi_row) in enumerate(zip(self.lower, self.upper, strict=True)):
            for j, (lo, hi) in enumerate(zip(lo_row, hi_row, strict=True)):
                if lo > hi:
                    raise ValueError(f"entry ({i}, {j}) has lower > upper: [{lo}, {hi}]")
        return self

    def to_interval_matrix(self) -> IntervalMatrix:
        return IntervalMatrix(np.array(self.lower), np.array(self.upper))


class PointMatrixSchema(BaseModel):
    """``{"n": k, "h": [[...]]}``"""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    n: int = Field(ge=1)
    h: list[list[float]]

    @model_validator(mode="after")
    def _shape(self) -> Self:
        _check_square("h", self.h, self.n)
        return self

    def to_point_matrix(self) -> PointMatrix:
        return PointMatrix(np.array(self.h))


class ScalingSchema(BaseModel):
    """``{"d": [...]}``"""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)

    d: list[float] = Field(min_length=1)


def matrix_schema(data: Any) -> IntervalMatrixSchema | PointMatrixSchema:
    """Pick the matrix schema by its keys: ``h`` for point form, ``lower``/``upper`` otherwise."""
    if isinstance(data, dict) and "h" in data:
        return PointMatrixSchema.model_validate(data)
    return IntervalMatrixSchema.model_validate(data)
