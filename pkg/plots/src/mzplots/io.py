"""Reading the experiment-harness CSV schema."""

from __future__ import annotations

import csv
from dataclasses import dataclass


class SchemaError(ValueError):
    pass


class MissingColumn(SchemaError):
    def __init__(self, column: str, path: str):
        super().__init__(f"missing column {column!r} in {path}")
        self.column = column


class NoRows(SchemaError):
    def __init__(self, path: str):
        super().__init__(f"no rows in {path}")


@dataclass
class Table:
    path: str
    columns: list
    rows: list                      # list of dicts, raw strings

    def floats(self, column: str, skip_blank: bool = True) -> list:
        if column not in self.columns:
            raise MissingColumn(column, self.path)
        out = []
        for row in self.rows:
            cell = row[column]
            if cell == "":
                if skip_blank:
                    continue
                raise SchemaError(f"blank {column!r} cell in {self.path}")
            out.append(float(cell))
        return out

    def require(self, *columns: str):
        for c in columns:
            if c not in self.columns:
                raise MissingColumn(c, self.path)


def read_table(path: str) -> Table:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise NoRows(path)
        rows = list(reader)
    if not rows:
        raise NoRows(path)
    return Table(path, list(reader.fieldnames), rows)
