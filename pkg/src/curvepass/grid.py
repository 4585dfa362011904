"""Grid geometry and conversion of drawn strokes into cell traces.

A stroke is a polyline in canvas pixels.  The canvas is divided into
``rows x cols`` equal rectangular cells; a trace is the ordered sequence of
cells the stroke enters.  Adjacency is 8-connected (king moves): a continuous
curve can leave a cell through a corner, so diagonal transitions are real.

Conventions, fixed so results are exact and testable:

* a point on an interior gridline belongs to the higher-index cell
  (right / bottom);
* the canvas is the closed region ``[0, width] x [0, height]``; points on
  the outer edge map into the last row/column;
* a segment crossing a vertical and a horizontal gridline at the same
  parameter (a corner crossing) produces a single diagonal transition,
  with no side-step through an edge-adjacent cell.

All functions here are pure and operate on immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import OutOfBounds

#: A point in canvas pixels.
Point = tuple[float, float]

#: A single continuous stroke: ordered points, length >= 1.
Polyline = Sequence[Point]


@dataclass(frozen=True)
class GridSpec:
    """A rows x cols grid laid over a pixel canvas."""

    rows: int
    cols: int
    canvas_width: float = 600.0
    canvas_height: float = 400.0

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("grid needs at least one row and one column")
        if self.rows * self.cols < 2:
            raise ValueError("grid needs at least two cells")
        if self.canvas_width <= 0 or self.canvas_height <= 0:
            raise ValueError("canvas dimensions must be positive")

    @property
    def cell_width(self) -> float:
        return self.canvas_width / self.cols

    @property
    def cell_height(self) -> float:
        return self.canvas_height / self.rows

    def contains(self, point: Point) -> bool:
        x, y = point
        return 0.0 <= x <= self.canvas_width and 0.0 <= y <= self.canvas_height

    def cells(self) -> Iterator["Cell"]:
        """All cells in row-major order."""
        for r in range(self.rows):
            for c in range(self.cols):
                yield Cell(r, c)

    def in_grid(self, cell: "Cell") -> bool:
        return 0 <= cell.row < self.rows and 0 <= cell.col < self.cols


@dataclass(frozen=True, order=True)
class Cell:
    row: int
    col: int

    def __post_init__(self) -> None:
        if self.row < 0 or self.col < 0:
            raise ValueError("cell indices must be non-negative")


def chebyshev(a: Cell, b: Cell) -> int:
    """King-move distance: max of the row and column offsets."""
    return max(abs(a.row - b.row), abs(a.col - b.col))


@dataclass(frozen=True)
class CellTrace:
    """Ordered cells entered by a stroke.

    Invariants: no two consecutive cells are equal, consecutive cells are
    8-adjacent.  Revisiting a cell after leaving it is allowed and counts
    again toward the trace length.
    """

    cells: tuple[Cell, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "cells", tuple(self.cells))
        if not self.cells:
            raise ValueError("trace needs at least one cell")
        for a, b in zip(self.cells, self.cells[1:]):
            if a == b:
                raise ValueError("consecutive duplicate cell in trace")
            if chebyshev(a, b) != 1:
                raise ValueError(f"cells {a} and {b} are not 8-adjacent")

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[Cell]:
        return iter(self.cells)


def trace_length(trace: CellTrace) -> int:
    """Number of cell-entry events, counting re-entries after leaving."""
    return len(trace.cells)


def cell_at(point: Point, grid: GridSpec) -> Cell:
    """Cell whose rectangle contains the point.

    Interior gridline points go to the right/bottom cell; outer-edge points
    map into the last row/column.  Raises OutOfBounds outside the canvas.
    """
    x, y = point
    if not grid.contains(point):
        raise OutOfBounds(f"point ({x}, {y}) outside canvas")
    col = int(x // grid.cell_width)
    row = int(y // grid.cell_height)
    return Cell(min(row, grid.rows - 1), min(col, grid.cols - 1))


def cell_center(cell: Cell, grid: GridSpec) -> Point:
    return (
        (cell.col + 0.5) * grid.cell_width,
        (cell.row + 0.5) * grid.cell_height,
    )


def _axis_crossings(
    coord: float, delta: float, start: int, end: int, size: float
) -> list[tuple[float, float, int]]:
    """Gridline crossings of one axis, ordered along the segment.

    Each entry is ``(num, den, step)`` where ``num/den`` (den > 0) is the
    segment parameter of the crossing and ``step`` is the index increment.
    The crossing count is derived from the start/end indices, so the
    boundary-ownership rule is already baked in.
    """
    if start == end:
        return []
    step = 1 if end > start else -1
    den = delta if delta > 0 else -delta
    out = []
    for k in range(1, abs(end - start) + 1):
        boundary = (start + k) * size if step > 0 else (start - k + 1) * size
        num = boundary - coord if delta > 0 else coord - boundary
        out.append((num, den, step))
    return out


def discretize(stroke: Polyline, grid: GridSpec) -> CellTrace:
    """Convert a stroke into the ordered sequence of cells it enters.

    Walks each segment's gridline crossings exactly (no sampling).  Crossings
    are ordered by comparing parameter fractions cross-multiplied, so an
    exact corner hit (equal parameters) is detected and emitted as a single
    diagonal step.
    """
    points = list(stroke)
    if not points:
        raise ValueError("stroke needs at least one point")
    cells = [cell_at(points[0], grid)]
    for a, b in zip(points, points[1:]):
        _walk_segment(a, b, cells, grid)
    return CellTrace(tuple(cells))


def _walk_segment(a: Point, b: Point, cells: list[Cell], grid: GridSpec) -> None:
    end = cell_at(b, grid)
    cur = cells[-1]
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    col_xs = _axis_crossings(a[0], dx, cur.col, end.col, grid.cell_width)
    row_xs = _axis_crossings(a[1], dy, cur.row, end.row, grid.cell_height)

    i = j = 0
    r, c = cur.row, cur.col
    while i < len(col_xs) or j < len(row_xs):
        if j >= len(row_xs):
            take_col, take_row = True, False
        elif i >= len(col_xs):
            take_col, take_row = False, True
        else:
            nx, dnx, _ = col_xs[i]
            ny, dny, _ = row_xs[j]
            lhs = nx * dny
            rhs = ny * dnx
            take_col = lhs <= rhs
            take_row = rhs <= lhs
        if take_col:
            c += col_xs[i][2]
            i += 1
        if take_row:
            r += row_xs[j][2]
            j += 1
        cells.append(Cell(r, c))


def chain_min_length(waypoints: Iterable[Cell], grid: GridSpec) -> int:
    """Minimum trace length visiting the waypoints in order.

    One for the starting cell plus, per consecutive pair, the minimum number
    of king-move steps between them (the Chebyshev distance).
    """
    wps = list(waypoints)
    if not wps:
        raise ValueError("need at least one waypoint")
    for w in wps:
        if not grid.in_grid(w):
            raise OutOfBounds(f"waypoint {w} outside grid")
    return 1 + sum(chebyshev(p, q) for p, q in zip(wps, wps[1:]))


def king_path(a: Cell, b: Cell) -> list[Cell]:
    """One shortest king-move path from a to b, inclusive of both ends.

    Moves diagonally while both offsets remain, then straight.
    """
    path = [a]
    r, c = a.row, a.col
    while (r, c) != (b.row, b.col):
        r += (b.row > r) - (b.row < r)
        c += (b.col > c) - (b.col < c)
        path.append(Cell(r, c))
    return path


def chain_path(waypoints: Iterable[Cell]) -> list[Cell]:
    """Concatenated shortest king paths through the waypoints in order.

    The result has exactly ``chain_min_length`` cells.
    """
    it = iter(waypoints)
    try:
        prev = next(it)
    except StopIteration:
        raise ValueError("need at least one waypoint") from None
    path = [prev]
    for wp in it:
        path.extend(king_path(prev, wp)[1:])
        prev = wp
    return path
