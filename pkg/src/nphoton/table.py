"""Rectangular result tables and their CSV rendering."""
from __future__ import annotations

import enum
import io
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

SIG_DIGITS = 15


def format_cell(value) -> str:
    if isinstance(value, enum.Enum):
        return str(value.value)
    if isinstance(value, (bool, np.bool_)):
        return "1" if value else "0"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = f"{float(value):.{SIG_DIGITS}g}"
        return "0" if text == "-0" else text
    return str(value)


@dataclass
class Table:
    columns: tuple[str, ...]
    rows: list[tuple] = field(default_factory=list)

    def __post_init__(self):
        self.columns = tuple(self.columns)
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(
                    f"row has {len(row)} cells but table has {len(self.columns)} columns"
                )

    def append(self, row: Sequence) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells but table has {len(self.columns)} columns")
        self.rows.append(tuple(row))

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])

    def __len__(self) -> int:
        return len(self.rows)

    def write_csv(self, fh) -> None:
        # explicit "\n" so output bytes do not depend on the platform
        fh.write(",".join(self.columns) + "\n")
        for row in self.rows:
            fh.write(",".join(format_cell(v) for v in row) + "\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()
