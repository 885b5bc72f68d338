"""Aligned text table of iteration statistics, one row per dimension."""

from collections.abc import Iterable

import pandas as pd

from scalebb.core.schemas import Family, TrialStats

COLUMNS = ("average", "maximal")


def _format_average(value: float | None) -> str:
    return "-" if value is None else f"{value:.4f}"


def _format_max(value: int | None) -> str:
    return "-" if value is None else str(value)


def stats_frame(stats: Iterable[TrialStats]) -> pd.DataFrame:
    """Rows indexed by n, columns (family, average|maximal) for the families present."""
    items = list(stats)
    families = [family for family in Family if any(item.family is family for item in items)]
    dims = sorted({item.n for item in items})
    cells = {(item.n, item.family): item for item in items}

    rows = []
    for n in dims:
        row: list[str] = []
        for family in families:
            item = cells.get((n, family))
            row.append(_format_average(item.average_iterations) if item else "-")
            row.append(_format_max(item.max_iterations) if item else "-")
        rows.append(row)

    columns = pd.MultiIndex.from_product([[family.value for family in families], COLUMNS])
    return pd.DataFrame(rows, index=pd.Index(dims, name="n"), columns=columns)


def render_table(stats: Iterable[TrialStats]) -> str:
    """Text rendering of :func:`stats_frame`; empty input gives an empty string."""
    frame = stats_frame(stats)
    if frame.empty:
        return ""
    return frame.to_string(justify="right")
