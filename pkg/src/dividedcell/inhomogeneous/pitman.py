"""Neighbors of Gaussian cells and the existence of divided cells.

A Gaussian cell and its two neighboring N-cells have inner boxes that tile
the plane modulo the lattice.  Locating the origin in that tiling gives a
divided cell for any problem whose linear part can be reduced.
"""

from __future__ import annotations

from ..exactnum import floor
from ..errors import DividedCellError, NotGaussian
from ..homogeneous import reduce
from .cells import Cell, DividedCell, classify, is_divided, is_I_reduced, normalize

__all__ = ["neighbors", "initial_cell", "box_tiles"]

# transition matrices; the first pair for a G-cell whose b0 > 0 (a1 <= 0)
PLUS = (
    ((1, 0, 0), (1, 1, 0), (0, 0, 1)),
    ((1, -1, 1), (0, 1, 0), (0, 0, 1)),
)
MINUS = (
    ((1, 1, 0), (0, 1, 0), (0, 0, 1)),
    ((1, 0, 0), (-1, 1, 0), (0, 0, 1)),
)


def _is_n_cell(cell: Cell) -> bool:
    return is_I_reduced(cell) and classify(cell).nongaussian


def neighbors(g: Cell):
    """The two I-reduced N-cells attached to the G-cell ``g``."""
    if not (is_I_reduced(g) and classify(g).gaussian):
        raise NotGaussian("neighbors() needs an I-reduced G-cell")
    a1 = g.a1 if g.a1 else -g.b0
    pairs = (PLUS, MINUS) if a1.sign() <= 0 else (MINUS, PLUS)
    for pair in pairs:
        out = tuple(normalize(g.times(m)) for m in pair)
        if all(_is_n_cell(c) for c in out):
            return out
    raise DividedCellError("no transition pair yields two N-cells")


def box_tiles(g: Cell):
    """The G-cell and its neighbors, in tie-break order."""
    return (g,) + neighbors(g)


def _lattice_position(cell: Cell):
    """Real coordinates ``(s, t)`` with ``c + s*g1 + t*g2 = 0``."""
    det = cell.det
    s = (-cell.c0 * cell.b1 + cell.c1 * cell.b0) / det
    t = (-cell.a0 * cell.c1 + cell.a1 * cell.c0) / det
    return s, t


def initial_cell(problem: Cell) -> DividedCell:
    """A divided cell for ``problem``, found in the three-box tiling.

    Raises :class:`~dividedcell.errors.Degenerate` when the linear part has a
    lattice direction on an axis and is not already reduced.
    """
    _, u = reduce(problem.linear)
    t = ((u[0][0], u[0][1], 0), (u[1][0], u[1][1], 0), (0, 0, 1))
    g = problem.times(t)
    for cell in box_tiles(g):
        s, r = _lattice_position(cell)
        fs, fr = floor(s), floor(r)
        for m in (fs, fs - 1):
            for n in (fr, fr - 1):
                found = is_divided(cell.translated(m, n))
                if found is not None:
                    return found
    raise DividedCellError("origin not located in the three-box fundamental domain")
