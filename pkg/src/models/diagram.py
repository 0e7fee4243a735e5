"""
Data models for cell diagrams in SkewBetti.

CellDiagram: A staircase-shaped set of cells in a row x column grid.
Piece / EmptyRectangle: The two kinds of parts of a rectangular decomposition.
RectangularDecomposition: Ordered pieces plus empty rectangles.

Rows and columns carry positive integer labels (row i is x_i, column j is
y_j). Restriction never re-indexes, so sub-diagrams stay traceable.
"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional

from src.utils.errors import DiagramError

Cell = tuple[int, int]


@dataclass(frozen=True)
class CellDiagram:
    """A skew Ferrers (staircase) diagram.

    Attributes:
        row_labels: Row identifiers, top to bottom.
        col_labels: Column identifiers, left to right.
        row_intervals: Per row, (first, last) positions into col_labels,
                       or None for an empty row.
    """
    row_labels: tuple[int, ...]
    col_labels: tuple[int, ...]
    row_intervals: tuple[Optional[tuple[int, int]], ...]

    def __post_init__(self):
        if len(self.row_intervals) != len(self.row_labels):
            raise DiagramError(
                f"{len(self.row_labels)} rows but {len(self.row_intervals)} intervals"
            )
        if len(set(self.row_labels)) != len(self.row_labels):
            raise DiagramError(f"duplicate row labels in {self.row_labels}")
        if len(set(self.col_labels)) != len(self.col_labels):
            raise DiagramError(f"duplicate column labels in {self.col_labels}")

        prev: Optional[tuple[int, int]] = None
        for label, interval in zip(self.row_labels, self.row_intervals):
            if interval is None:
                continue
            first, last = interval
            if not 0 <= first <= last < len(self.col_labels):
                raise DiagramError(
                    f"row x{label}: interval {interval} outside {len(self.col_labels)} columns"
                )
            # Staircase: both endpoints move weakly right going down
            if prev is not None and (first < prev[0] or last < prev[1]):
                raise DiagramError(
                    f"row x{label}: interval {interval} breaks the staircase "
                    f"after {prev}"
                )
            prev = interval

    @property
    def num_rows(self) -> int:
        return len(self.row_labels)

    @property
    def num_cols(self) -> int:
        return len(self.col_labels)

    @cached_property
    def cells(self) -> frozenset[Cell]:
        """All cells as (row_label, col_label) pairs."""
        out = set()
        for label, interval in zip(self.row_labels, self.row_intervals):
            if interval is None:
                continue
            first, last = interval
            out.update((label, self.col_labels[c]) for c in range(first, last + 1))
        return frozenset(out)

    @property
    def num_cells(self) -> int:
        return len(self.cells)

    @property
    def is_empty(self) -> bool:
        return not self.cells

    def row_cols(self, row: int) -> tuple[int, ...]:
        """Column labels of the cells in one row."""
        interval = self.row_intervals[self.row_labels.index(row)]
        if interval is None:
            return ()
        first, last = interval
        return self.col_labels[first:last + 1]

    def col_rows(self, col: int) -> tuple[int, ...]:
        """Row labels of the cells in one column."""
        pos = self.col_labels.index(col)
        return tuple(
            label
            for label, interval in zip(self.row_labels, self.row_intervals)
            if interval is not None and interval[0] <= pos <= interval[1]
        )

    @cached_property
    def nonempty_rows(self) -> tuple[int, ...]:
        return tuple(
            label
            for label, interval in zip(self.row_labels, self.row_intervals)
            if interval is not None
        )

    @cached_property
    def nonempty_cols(self) -> tuple[int, ...]:
        used = {col for _, col in self.cells}
        return tuple(col for col in self.col_labels if col in used)

    def __str__(self) -> str:
        width = max([len(f"y{c}") for c in self.col_labels] + [2])
        head = " " * 4 + " ".join(f"{f'y{c}':>{width}}" for c in self.col_labels)
        lines = [head]
        for row in self.row_labels:
            marks = set(self.row_cols(row))
            body = " ".join(
                f"{'x' if c in marks else '.':>{width}}" for c in self.col_labels
            )
            lines.append(f"{f'x{row}':<4}{body}")
        return "\n".join(lines)


@dataclass(frozen=True)
class Piece:
    """One rectangular piece D_(x_i, y_j) of a decomposition.

    Attributes:
        top_cell: The (row, col) cell the piece was grown from.
        rows: X', rows meeting the top cell's column.
        cols: Y', columns meeting the top cell's row.
        cells: Every cell in rows X' or columns Y' of the current remainder.
    """
    top_cell: Cell
    rows: tuple[int, ...]
    cols: tuple[int, ...]
    cells: frozenset[Cell]

    def to_dict(self) -> dict:
        return {
            "top_cell": list(self.top_cell),
            "rows": list(self.rows),
            "cols": list(self.cols),
            "cells": [list(c) for c in sorted(self.cells)],
        }


class EmptyKind(str, Enum):
    """Whether an empty rectangle consists of rows (X'') or columns (Y'')."""
    ROW = "row"
    COLUMN = "column"


@dataclass(frozen=True)
class EmptyRectangle:
    """A set of rows or columns harvested without cells."""
    kind: EmptyKind
    labels: tuple[int, ...]

    def __str__(self) -> str:
        prefix = "x" if self.kind is EmptyKind.ROW else "y"
        return "{" + ", ".join(f"{prefix}{label}" for label in self.labels) + "}"


@dataclass(frozen=True)
class RectangularDecomposition:
    """Pieces and empty rectangles partitioning a diagram's rows and columns."""
    pieces: tuple[Piece, ...]
    empties: tuple[EmptyRectangle, ...]

    @property
    def rect(self) -> int:
        """Rectangularity number: the number of pieces."""
        return len(self.pieces)

    @property
    def spherical(self) -> bool:
        """No empty rectangles; a diagram without cells is vacuously spherical."""
        return self.degenerate or not self.empties

    @property
    def degenerate(self) -> bool:
        """No pieces at all: the source diagram had no cells."""
        return not self.pieces

    def empty_rows(self) -> tuple[int, ...]:
        return tuple(
            label
            for e in self.empties if e.kind is EmptyKind.ROW
            for label in e.labels
        )

    def empty_cols(self) -> tuple[int, ...]:
        return tuple(
            label
            for e in self.empties if e.kind is EmptyKind.COLUMN
            for label in e.labels
        )

    def to_dict(self) -> dict:
        return {
            "rect": self.rect,
            "spherical": self.spherical,
            "degenerate": self.degenerate,
            "pieces": [p.to_dict() for p in self.pieces],
            "empties": [
                {"kind": e.kind.value, "labels": list(e.labels)} for e in self.empties
            ],
        }
