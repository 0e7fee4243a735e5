"""
Skew Ferrers diagrams: construction, restriction and rectangular decomposition.

A diagram with parameters (lambda, mu) and m = lambda_1 columns puts row i
in columns m + 1 - lambda_i .. m - mu_i. Rows with lambda_i = mu_i are empty.

The decomposition repeatedly takes the top-left cell of what is left,
claims every cell in a row or column through it as one piece, and sets
aside rows and columns left without cells as empty rectangles.
"""

import logging
from typing import Iterable, Optional, Sequence

from src.models.diagram import (
    CellDiagram, Cell, Piece, EmptyKind, EmptyRectangle, RectangularDecomposition,
)
from src.utils.errors import DiagramError, StructuralError, ValidationError

logger = logging.getLogger(__name__)


# =============================================================================
# Construction
# =============================================================================

def new_skew_ferrers(lam: Sequence[int], mu: Sequence[int]) -> CellDiagram:
    """Build the skew Ferrers diagram of (lambda, mu).

    Args:
        lam: Nonincreasing positive integers; lam[0] is the column count m.
        mu: Nonincreasing nonnegative integers, same length, mu_i <= lambda_i.

    Returns:
        CellDiagram with rows x_1..x_n and columns y_1..y_m.

    Raises:
        DiagramError: On any monotonicity or length violation.
    """
    lam = tuple(lam)
    mu = tuple(mu)
    if not lam:
        raise DiagramError("lambda is empty")
    if len(mu) != len(lam):
        raise DiagramError(f"lambda has {len(lam)} parts but mu has {len(mu)}")
    for i, part in enumerate(lam, start=1):
        if part < 1:
            raise DiagramError(f"lambda_{i} = {part} is not positive")
    for i, part in enumerate(mu, start=1):
        if part < 0:
            raise DiagramError(f"mu_{i} = {part} is negative")
    for i in range(1, len(lam)):
        if lam[i] > lam[i - 1]:
            raise DiagramError(
                f"lambda is not nonincreasing: lambda_{i} = {lam[i - 1]} < lambda_{i + 1} = {lam[i]}"
            )
        if mu[i] > mu[i - 1]:
            raise DiagramError(
                f"mu is not nonincreasing: mu_{i} = {mu[i - 1]} < mu_{i + 1} = {mu[i]}"
            )
    for i, (a, b) in enumerate(zip(lam, mu), start=1):
        if a < b:
            raise DiagramError(f"lambda_{i} = {a} < mu_{i} = {b}")

    m = lam[0]
    intervals = []
    for a, b in zip(lam, mu):
        # 0-based positions of columns m+1-a .. m-b
        intervals.append((m - a, m - b - 1) if a > b else None)

    return CellDiagram(
        row_labels=tuple(range(1, len(lam) + 1)),
        col_labels=tuple(range(1, m + 1)),
        row_intervals=tuple(intervals),
    )


def cells(diagram: CellDiagram) -> frozenset[Cell]:
    """The (row, col) cells of a diagram."""
    return diagram.cells


def restrict(diagram: CellDiagram, rows: Iterable[int],
             cols: Iterable[int]) -> CellDiagram:
    """Sub-diagram on a subset of rows and columns, keeping labels.

    Raises:
        DiagramError: If a row or column label is not in the diagram.
    """
    rows = set(rows)
    cols = set(cols)
    unknown_rows = rows - set(diagram.row_labels)
    unknown_cols = cols - set(diagram.col_labels)
    if unknown_rows:
        raise DiagramError(f"unknown row labels {sorted(unknown_rows)}")
    if unknown_cols:
        raise DiagramError(f"unknown column labels {sorted(unknown_cols)}")

    kept_cols = [pos for pos, c in enumerate(diagram.col_labels) if c in cols]
    new_pos = {old: new for new, old in enumerate(kept_cols)}

    row_labels = []
    intervals: list[Optional[tuple[int, int]]] = []
    for label, interval in zip(diagram.row_labels, diagram.row_intervals):
        if label not in rows:
            continue
        row_labels.append(label)
        if interval is None:
            intervals.append(None)
            continue
        inside = [new_pos[p] for p in kept_cols if interval[0] <= p <= interval[1]]
        intervals.append((inside[0], inside[-1]) if inside else None)

    try:
        return CellDiagram(
            row_labels=tuple(row_labels),
            col_labels=tuple(diagram.col_labels[p] for p in kept_cols),
            row_intervals=tuple(intervals),
        )
    except DiagramError as e:
        raise StructuralError(f"restriction lost the staircase shape: {e}") from e


# =============================================================================
# Rectangular decomposition
# =============================================================================

def _strip_empty(rows: list[int], cols: list[int], occupied: set[Cell],
                 empties: list[EmptyRectangle]) -> tuple[list[int], list[int]]:
    """Move rows/columns without remaining cells into empty rectangles."""
    live_rows = {r for r, c in occupied if c in cols}
    live_cols = {c for r, c in occupied if r in rows}
    dead_rows = [r for r in rows if r not in live_rows]
    dead_cols = [c for c in cols if c not in live_cols]
    if dead_rows:
        empties.append(EmptyRectangle(EmptyKind.ROW, tuple(dead_rows)))
    if dead_cols:
        empties.append(EmptyRectangle(EmptyKind.COLUMN, tuple(dead_cols)))
    return ([r for r in rows if r in live_rows],
            [c for c in cols if c in live_cols])


def rectangular_decomposition(diagram: CellDiagram) -> RectangularDecomposition:
    """Split a diagram into rectangular pieces and empty rectangles.

    Raises:
        StructuralError: If the top-left position of a stripped remainder
                         is not a cell.
    """
    rows = list(diagram.row_labels)
    cols = list(diagram.col_labels)
    occupied = set(diagram.cells)
    pieces: list[Piece] = []
    empties: list[EmptyRectangle] = []

    rows, cols = _strip_empty(rows, cols, occupied, empties)
    while rows and cols:
        top = (rows[0], cols[0])
        if top not in occupied:
            raise StructuralError(
                f"top-left position (x{top[0]}, y{top[1]}) of the remainder is not a cell"
            )
        piece_rows = tuple(r for r in rows if (r, top[1]) in occupied)
        piece_cols = tuple(c for c in cols if (top[0], c) in occupied)
        row_set, col_set = set(piece_rows), set(piece_cols)
        piece_cells = frozenset(
            (r, c) for r, c in occupied
            if (r in row_set or c in col_set) and r in rows and c in cols
        )
        pieces.append(Piece(top, piece_rows, piece_cols, piece_cells))
        logger.debug(f"piece {len(pieces)}: top (x{top[0]}, y{top[1]}), "
                     f"X'={piece_rows}, Y'={piece_cols}, {len(piece_cells)} cells")

        occupied -= piece_cells
        rows = [r for r in rows if r not in row_set]
        cols = [c for c in cols if c not in col_set]
        rows, cols = _strip_empty(rows, cols, occupied, empties)

    if occupied:
        raise StructuralError(f"{len(occupied)} cells left outside every piece")

    return RectangularDecomposition(tuple(pieces), tuple(empties))


def row_masks(diagram: CellDiagram) -> tuple[int, ...]:
    """Per row, a bitmask of its cells over column positions."""
    masks = []
    for interval in diagram.row_intervals:
        if interval is None:
            masks.append(0)
        else:
            first, last = interval
            masks.append(((1 << (last + 1)) - 1) ^ ((1 << first) - 1))
    return tuple(masks)


def spherical_rect(masks: Sequence[int], rows: Sequence[int], cols: int) -> Optional[int]:
    """Decompose a restriction on bitmasks without building diagrams.

    Args:
        masks: row_masks() of the full diagram.
        rows: Row positions of the restriction, ascending.
        cols: Bitmask of the restriction's column positions.

    Returns:
        rect of the restriction if it is spherical and nonempty, else None.
    """
    remaining = list(rows)
    count = 0
    while True:
        if not remaining and not cols:
            return count or None
        live_cols = 0
        for r in remaining:
            hit = masks[r] & cols
            if not hit:
                return None
            live_cols |= hit
        if live_cols != cols:
            return None
        top_col = cols & -cols
        if not masks[remaining[0]] & top_col:
            raise StructuralError("top-left position of a stripped remainder is not a cell")
        cols &= ~masks[remaining[0]]
        remaining = [r for r in remaining if not masks[r] & top_col]
        count += 1


def rect(diagram: CellDiagram) -> int:
    """Rectangularity number: pieces in the rectangular decomposition."""
    return rectangular_decomposition(diagram).rect


def is_spherical(diagram: CellDiagram) -> bool:
    """True iff the decomposition has no empty rectangles."""
    return rectangular_decomposition(diagram).spherical


def is_degenerate(diagram: CellDiagram) -> bool:
    """A diagram without cells: rect 0 and vacuously spherical."""
    return diagram.is_empty


# =============================================================================
# Shapes, text
# =============================================================================

def ferrers_shape(diagram: CellDiagram) -> Optional[tuple[int, ...]]:
    """Row lengths if the diagram is an honest Ferrers shape, else None.

    An honest Ferrers shape has no empty rows, its first row spans every
    column and every row ends in the last column (mu = 0).
    """
    if diagram.is_empty:
        return None
    last = diagram.num_cols - 1
    lengths = []
    for interval in diagram.row_intervals:
        if interval is None or interval[1] != last:
            return None
        lengths.append(interval[1] - interval[0] + 1)
    if lengths[0] != diagram.num_cols:
        return None
    return tuple(lengths)


def to_parameters(diagram: CellDiagram) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """(lambda, mu) of the diagram once empty rows and columns are dropped.

    Feeding the result to new_skew_ferrers rebuilds the same cells up to
    relabeling rows and columns 1, 2, ...

    Raises:
        DiagramError: For a diagram without cells.
    """
    if diagram.is_empty:
        raise DiagramError("diagram has no cells")
    stripped = restrict(diagram, diagram.nonempty_rows, diagram.nonempty_cols)
    m = stripped.num_cols
    lam, mu = [], []
    for first, last in stripped.row_intervals:
        lam.append(m - first)
        mu.append(m - 1 - last)
    return tuple(lam), tuple(mu)


def render_diagram(diagram: CellDiagram) -> str:
    """Text grid: one line per row x_i, 'x' for a cell, '.' otherwise."""
    return str(diagram)


def parse_int_list(text: str, flag: str) -> tuple[int, ...]:
    """Parse a comma-separated integer list from the command line.

    Raises:
        ValidationError: Naming the flag and the 1-based position of the bad item.
    """
    if text is None or not text.strip():
        raise ValidationError(f"{flag}: empty list")
    values = []
    for pos, item in enumerate(text.split(","), start=1):
        item = item.strip()
        try:
            values.append(int(item))
        except ValueError:
            raise ValidationError(f"{flag}: item {pos} {item!r} is not an integer") from None
    return tuple(values)
