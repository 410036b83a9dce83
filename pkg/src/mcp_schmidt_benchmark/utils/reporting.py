"""
표 출력 (고정 폭 텍스트)
"""

from dataclasses import dataclass
from typing import Any, Callable, List, Optional, Sequence

import pandas as pd


def fmt6(value: Any) -> str:
    """Six significant digits for floats; ``-`` for missing values."""
    if value is None or (isinstance(value, float) and pd.isna(value)):
        return "-"
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


@dataclass(frozen=True)
class Column:
    key: str
    header: str
    width: int
    align: str = ">"
    formatter: Callable[[Any], str] = fmt6


def render_table(df: pd.DataFrame, columns: Sequence[Column], title: Optional[str] = None) -> str:
    """Fixed-width table; cell text longer than the column is kept whole."""
    lines: List[str] = []
    if title:
        lines.append(title)
    lines.append(" ".join(f"{c.header:{c.align}{c.width}}" for c in columns).rstrip())
    lines.append(" ".join("-" * c.width for c in columns))
    for record in df.to_dict(orient="records"):
        cells = [f"{c.formatter(record.get(c.key)):{c.align}{c.width}}" for c in columns]
        lines.append(" ".join(cells).rstrip())
    return "\n".join(lines)


def render_pairs(pairs: Sequence[tuple], key_width: int = 28) -> str:
    """``key : value`` block for single-record outputs."""
    return "\n".join(f"{key:<{key_width}} {fmt6(value)}" for key, value in pairs)
