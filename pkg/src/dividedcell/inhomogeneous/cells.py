"""Cells, divided cells, inner boxes and their classification.

A cell is the 2x3 matrix ``[[a0, b0, c0], [a1, b1, c1]]``: the first two
columns are the viewing images of the lattice generators ``g1, g2``, the third
is the image ``c`` of the lattice origin.  Each cell also carries ``basis``,
the integer affine matrix relating it to the problem it came from, so that
``cell.rows == problem.rows * basis`` always holds exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .._linalg import identity, matmul
from ..errors import AxisParallel, FieldMismatch, NotReduced
from ..exactnum import Surd, as_surd
from ..homogeneous import HomForm

__all__ = [
    "Cell",
    "DividedCell",
    "InnerBox",
    "Classification",
    "evaluate",
    "normalize",
    "is_divided",
    "is_I_reduced",
    "classify",
    "inner_box",
    "quadrant_of",
]

# vertex offsets (i, j) -> quadrant of c + i*g1 + j*g2 in a divided cell
VERTEX_QUADRANTS = {(0, 0): 3, (1, 0): 4, (0, 1): 2, (1, 1): 1}

_NEG_G1 = ((-1, 0, 1), (0, 1, 0), (0, 0, 1))
_NEG_G2 = ((1, 0, 0), (0, -1, 1), (0, 0, 1))
_SWAP = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


@dataclass(frozen=True)
class Cell:
    rows: tuple
    basis: tuple = field(default=identity(3))

    def __post_init__(self):
        rows = tuple(tuple(as_surd(v) for v in row) for row in self.rows)
        if len(rows) != 2 or any(len(r) != 3 for r in rows):
            raise ValueError("Cell needs a 2x3 matrix")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "basis", tuple(tuple(int(v) for v in r) for r in self.basis))
        self.field()

    @classmethod
    def of(cls, g1, g2, c=(0, 0), basis=None) -> Cell:
        rows = ((g1[0], g2[0], c[0]), (g1[1], g2[1], c[1]))
        return cls(rows) if basis is None else cls(rows, basis)

    a0 = property(lambda self: self.rows[0][0])
    b0 = property(lambda self: self.rows[0][1])
    c0 = property(lambda self: self.rows[0][2])
    a1 = property(lambda self: self.rows[1][0])
    b1 = property(lambda self: self.rows[1][1])
    c1 = property(lambda self: self.rows[1][2])
    g1 = property(lambda self: (self.a0, self.a1))
    g2 = property(lambda self: (self.b0, self.b1))
    c = property(lambda self: (self.c0, self.c1))

    def field(self) -> int:
        ds = {v.d for row in self.rows for v in row if v.d}
        if len(ds) > 1:
            raise FieldMismatch(f"entries from several fields {sorted(ds)}")
        return ds.pop() if ds else 0

    @property
    def det(self) -> Surd:
        return self.a0 * self.b1 - self.a1 * self.b0

    def delta(self) -> Surd:
        return abs(self.det)

    @property
    def linear(self) -> HomForm:
        return HomForm.of(self.a0, self.b0, self.a1, self.b1)

    def times(self, s) -> Cell:
        """Right-multiply by an integer affine matrix (a change of lattice basis)."""
        rows = matmul(self.rows + ((0, 0, 1),), s)[:2]
        return Cell(rows, matmul(self.basis, s))

    def translated(self, m: int, n: int) -> Cell:
        return self.times(((1, 0, m), (0, 1, n), (0, 0, 1)))

    def rebased(self, problem: Cell) -> Cell:
        """The same cell expressed over ``problem`` (whose basis must be trivial)."""
        return problem.times(self.basis)

    def view(self, i, j) -> tuple:
        """Viewing coordinates of ``c + i*g1 + j*g2``."""
        return (self.c0 + i * self.a0 + j * self.b0, self.c1 + i * self.a1 + j * self.b1)

    def lattice(self, i, j) -> tuple:
        """Problem lattice coordinates of ``c + i*g1 + j*g2``."""
        t = self.basis
        return (t[0][0] * i + t[0][1] * j + t[0][2], t[1][0] * i + t[1][1] * j + t[1][2])

    def __call__(self, x: int, y: int) -> Surd:
        xi, eta = self.view(x, y)
        return xi * eta

    def vertices(self) -> list:
        """``[(offset, lattice point, viewing point)]`` for the four vertices."""
        return [(ij, self.lattice(*ij), self.view(*ij)) for ij in VERTEX_QUADRANTS]

    def same_vertices(self, other: Cell) -> bool:
        return {v[1] for v in self.vertices()} == {v[1] for v in other.vertices()}


def evaluate(cell: Cell, point) -> Surd:
    """``F_I(x, y) = (a0 x + b0 y + c0)(a1 x + b1 y + c1)`` in the cell's own coordinates."""
    return cell(*point)


def quadrant_of(xi: Surd, eta: Surd) -> set:
    """Closed quadrants (1..4) containing the viewing point."""
    out = set()
    sx, sy = xi.sign(), eta.sign()
    for q, (px, py) in {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}.items():
        if sx in (0, px) and sy in (0, py):
            out.add(q)
    return out


@dataclass(frozen=True)
class DividedCell:
    cell: Cell
    quadrants: dict = field(compare=False)

    @property
    def infinite(self) -> bool:
        """True when ``F_I`` vanishes at a vertex, forcing ``M_I`` to infinity."""
        return any(not (v[0] * v[1]) for _, _, v in self.cell.vertices())

    def vertex(self, quadrant: int) -> tuple:
        for point, q in self.quadrants.items():
            if q == quadrant:
                return point
        raise KeyError(quadrant)

    def vertex_set(self) -> frozenset:
        return frozenset(self.quadrants)


def normalize(cell: Cell) -> Cell:
    """Re-choose generators so that ``a0 > 0`` and ``b1 > 0``; vertices are unchanged."""
    if not cell.det:
        raise AxisParallel("singular cell")
    if (not cell.a0 or not cell.b1) or abs(cell.a0 * cell.b1) < abs(cell.a1 * cell.b0):
        cell = cell.times(_SWAP)
    if not cell.a0 or not cell.b1:
        raise AxisParallel("no choice of generators gives a0 > 0 and b1 > 0")
    if cell.a0 < 0:
        cell = cell.times(_NEG_G1)
    if cell.b1 < 0:
        cell = cell.times(_NEG_G2)
    return cell


def _divided_normalized(cell: Cell) -> Optional[DividedCell]:
    for (i, j), q in VERTEX_QUADRANTS.items():
        if q not in quadrant_of(*cell.view(i, j)):
            return None
    return DividedCell(cell, {cell.lattice(i, j): q for (i, j), q in VERTEX_QUADRANTS.items()})


def is_divided(cell: Cell) -> Optional[DividedCell]:
    """The witness of dividedness, or ``None``."""
    try:
        cell = normalize(cell)
    except AxisParallel:
        return None
    found = _divided_normalized(cell)
    if found is None and abs(cell.a0 * cell.b1) == abs(cell.a1 * cell.b0):
        alt = cell.times(_SWAP)
        if alt.a0 and alt.b1:
            if alt.a0 < 0:
                alt = alt.times(_NEG_G1)
            if alt.b1 < 0:
                alt = alt.times(_NEG_G2)
            found = _divided_normalized(alt)
    return found


def is_I_reduced(cell) -> bool:
    a0, b0, a1, b1 = cell.a0, cell.b0, cell.a1, cell.b1
    return a0 > 0 and b1 > 0 and a0 >= abs(b0) and b1 >= abs(a1)


@dataclass(frozen=True)
class Classification:
    gaussian: bool
    nongaussian: bool
    neighbor_of_g: bool
    superfluous: bool

    @property
    def kind(self) -> str:
        if self.gaussian and self.nongaussian:
            return "G-and-N"
        return "G" if self.gaussian else "N"


def classify(cell) -> Classification:
    a0, b0, a1, b1 = cell.a0, cell.b0, cell.a1, cell.b1
    prod = (a1 * b0).sign()
    wide = abs(a0) >= 2 * abs(b0)
    tall = abs(b1) >= 2 * abs(a1)
    return Classification(
        gaussian=prod <= 0,
        nongaussian=prod >= 0,
        neighbor_of_g=prod >= 0 and (wide or tall),
        superfluous=prod > 0 and not wide and not tall,
    )


@dataclass(frozen=True)
class InnerBox:
    """Admissible origin offsets from the base vertex, plus that base vertex."""

    xi_lo: Surd
    xi_hi: Surd
    eta_lo: Surd
    eta_hi: Surd
    base: tuple = (Surd(), Surd())

    @property
    def width(self) -> Surd:
        return self.xi_hi - self.xi_lo

    @property
    def height(self) -> Surd:
        return self.eta_hi - self.eta_lo

    @property
    def area(self) -> Surd:
        return self.width * self.height

    def absolute(self) -> tuple:
        """``(xi_lo, xi_hi, eta_lo, eta_hi)`` in viewing coordinates."""
        bx, by = self.base
        return (bx + self.xi_lo, bx + self.xi_hi, by + self.eta_lo, by + self.eta_hi)

    def contains(self, point=(0, 0)) -> bool:
        x0, x1, y0, y1 = self.absolute()
        return x0 <= point[0] <= x1 and y0 <= point[1] <= y1

    def relative(self) -> tuple:
        return (self.xi_lo, self.xi_hi, self.eta_lo, self.eta_hi)


def inner_box(cell) -> InnerBox:
    if not is_I_reduced(cell):
        raise NotReduced("inner boxes exist only for I-reduced bases")
    a0, b0, a1, b1 = cell.a0, cell.b0, cell.a1, cell.b1
    zero = Surd()
    base = cell.c if isinstance(cell, Cell) else (zero, zero)
    return InnerBox(
        xi_lo=max(zero, b0),
        xi_hi=a0 + min(zero, b0),
        eta_lo=max(zero, a1),
        eta_hi=b1 + min(zero, a1),
        base=tuple(as_surd(v) for v in base),
    )
