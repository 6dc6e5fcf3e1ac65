"""The divided cell algorithm: steps, successor enumeration and chains."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..errors import Degenerate, DividedCellError, Terminated
from ..exactnum import Surd, floor
from .cells import VERTEX_QUADRANTS, Cell, DividedCell, InnerBox, classify, inner_box, is_divided, is_I_reduced

__all__ = [
    "StepChoice",
    "Successor",
    "ChainEntry",
    "ChainRecord",
    "InhomMarkoffResult",
    "step_matrix",
    "step_forward",
    "step_backward",
    "successors",
    "chain",
    "markoff_inhom",
    "vertex_values",
]

_SWAP = ((0, 1, 0), (1, 0, 0), (0, 0, 1))


def _ceil(x) -> int:
    return -floor(-x)


@dataclass(frozen=True)
class StepChoice:
    h: int
    k: int
    direction: str = "forward"
    branch: int = 1  # sign of b0 (a1 for backward steps) that selected the matrix
    alternatives: int = 0  # further valid (h, k) pairs on a boundary tie

    @property
    def shape(self) -> int:
        return self.h + self.k


def step_matrix(h: int, k: int, branch: int):
    """Right multiplier taking a divided cell to its successor."""
    n = h + k
    if branch > 0:
        return ((0, -1, 1), (1, n, -k), (0, 0, 1))
    return ((0, 1, 0), (-1, n, 1 - h), (0, 0, 1))


def _nominal(cell: Cell):
    a0, b0, c0 = cell.a0, cell.b0, cell.c0
    if b0 > 0:
        h = floor(-c0 / b0)
        k = max(1, _ceil((c0 + a0) / b0))
    else:
        h = max(1, _ceil(-c0 / -b0))
        k = floor((c0 + a0) / -b0)
    return max(h, 1), max(k, 1)


def _forward(cell: Cell, direction: str):
    if not cell.b0:
        raise Terminated("b0 = 0: a cell side is parallel to an axis")
    branch = cell.b0.sign()
    h0, k0 = _nominal(cell)
    valid = []
    for h in (h0 - 1, h0, h0 + 1):
        for k in (k0 - 1, k0, k0 + 1):
            if h < 1 or k < 1:
                continue
            nxt = _divided_exact(cell.times(step_matrix(h, k, branch)))
            if nxt is not None:
                valid.append((h, k, nxt))
    if not valid:
        raise DividedCellError("no divided successor found; input was not divided")
    h, k, nxt = min(valid, key=lambda v: (v[0], v[1]))
    return nxt, StepChoice(h, k, direction, branch, len(valid) - 1)


def _divided_exact(cell: Cell) -> Optional[DividedCell]:
    """Dividedness without re-choosing generators (step results are already normalized)."""
    if not (cell.a0 > 0 and cell.b1 > 0):
        return None
    found = is_divided(cell)
    return found if found is not None and found.cell == cell else None


def step_forward(dc: DividedCell):
    """Successor divided cell; ties prefer the smaller ``h``, then smaller ``k``."""
    return _forward(dc.cell, "forward")


def _conjugate(cell: Cell) -> Cell:
    # swap the two rows (axes) by hand, the generator columns through the basis
    return Cell((cell.rows[1], cell.rows[0]), cell.basis).times(_SWAP)


def step_backward(dc: DividedCell):
    """Predecessor divided cell, by conjugating with the axis/generator swap."""
    cell = dc.cell
    if not cell.a1:
        raise Terminated("a1 = 0: a cell side is parallel to an axis")
    nxt, choice = _forward(_conjugate(cell), "backward")
    back = _conjugate(nxt.cell)
    found = is_divided(back)
    if found is None or found.cell != back:
        raise DividedCellError("backward step lost dividedness")
    return found, choice


@dataclass(frozen=True)
class Successor:
    h: int
    k: int
    kind: str
    box: InnerBox  # the successor's own inner box, relative to its base vertex
    interval: tuple  # xi-range of origin offsets (parent-relative) it takes over

    @property
    def shape(self) -> int:
        return self.h + self.k


def successors(basis) -> list:
    """All successor shapes/positions of an I-reduced basis, left to right.

    ``basis`` may be a Cell or HomForm; only its linear part is used.
    """
    if not is_I_reduced(basis):
        raise DividedCellError("successors() needs an I-reduced basis")
    a0, b0, a1, b1 = basis.a0, basis.b0, basis.a1, basis.b1
    if not b0:
        raise Terminated("b0 = 0")
    branch = b0.sign()
    parent = inner_box(Cell.of((a0, a1), (b0, b1)))
    r = a0 / abs(b0)
    shapes = [n for n in range(max(2, floor(r) - 1), floor(r) + 3) if (n - 1) <= r <= (n + 1)]
    out = []
    for n in shapes:
        for h in range(1, n):
            k = n - h
            s = step_matrix(h, k, branch)
            g1 = (s[0][0] * a0 + s[1][0] * b0, s[0][0] * a1 + s[1][0] * b1)
            g2 = (s[0][1] * a0 + s[1][1] * b0, s[0][1] * a1 + s[1][1] * b1)
            w = (s[0][2] * a0 + s[1][2] * b0, s[0][2] * a1 + s[1][2] * b1)
            succ = Cell.of(g1, g2)
            box = inner_box(succ)
            lo = max(w[0] + box.xi_lo, parent.xi_lo)
            hi = min(w[0] + box.xi_hi, parent.xi_hi)
            if lo < hi or (lo == hi and parent.width == 0):
                kind = "G" if classify(succ).gaussian else "N"
                out.append(Successor(h, k, kind, box, (lo, hi)))
    out.sort(key=lambda s: (s.interval[0], s.interval[1]))
    return out


def vertex_values(cell: Cell, delta: Surd) -> dict:
    """``delta / |F_I|`` at each vertex, keyed by quadrant (``None`` for infinity)."""
    out = {}
    for (i, j), q in VERTEX_QUADRANTS.items():
        xi, eta = cell.view(i, j)
        prod = xi * eta
        out[q] = delta / abs(prod) if prod else None
    return out


@dataclass(frozen=True)
class ChainEntry:
    index: int
    cell: DividedCell
    choice: Optional[StepChoice]  # the step that produced this entry (None at 0)
    values: dict
    kind: str = ""

    @property
    def box(self) -> InnerBox:
        return inner_box(self.cell.cell)


@dataclass
class ChainRecord:
    entries: list
    delta: Surd
    terminated_forward: bool = False
    terminated_backward: bool = False
    problem: Optional[Cell] = field(default=None, repr=False)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def at(self, index: int) -> ChainEntry:
        for e in self.entries:
            if e.index == index:
                return e
        raise KeyError(index)

    def vertex_chains(self) -> dict:
        """Per-quadrant ordered lists of distinct lattice vertices."""
        out = {q: [] for q in (1, 2, 3, 4)}
        for e in self.entries:
            for point, q in sorted(e.cell.quadrants.items(), key=lambda kv: kv[1]):
                if not out[q] or out[q][-1] != point:
                    out[q].append(point)
        return out

    def vertex_set(self) -> set:
        return {p for e in self.entries for p in e.cell.quadrants}

    def widths(self) -> list:
        return [e.box.width for e in self.entries]

    def heights(self) -> list:
        return [e.box.height for e in self.entries]


def _entry(index, dc, choice, delta):
    return ChainEntry(index, dc, choice, vertex_values(dc.cell, delta), classify(dc.cell).kind)


def chain(problem: Cell, n_back: int, n_fwd: int, start: Optional[DividedCell] = None) -> ChainRecord:
    """Chain of divided cells around ``start`` (default: :func:`initial_cell`)."""
    from .pitman import initial_cell

    dc0 = start if start is not None else initial_cell(problem)
    delta = problem.delta()
    entries = [_entry(0, dc0, None, delta)]
    rec = ChainRecord(entries, delta, problem=problem)
    dc = dc0
    for i in range(1, n_fwd + 1):
        try:
            dc, choice = step_forward(dc)
        except Terminated:
            rec.terminated_forward = True
            break
        entries.append(_entry(i, dc, choice, delta))
    dc = dc0
    back = []
    for i in range(1, n_back + 1):
        try:
            dc, choice = step_backward(dc)
        except Terminated:
            rec.terminated_backward = True
            break
        back.append(_entry(-i, dc, choice, delta))
    rec.entries = back[::-1] + entries
    return rec


def _key(cell: Cell) -> tuple:
    return (cell.b0 / cell.a0, cell.c0 / cell.a0, cell.a1 / cell.b1, cell.c1 / cell.b1)


def _closes(entries) -> bool:
    seen = set()
    for e in entries:
        k = _key(e.cell.cell)
        if k in seen:
            return True
        seen.add(k)
    return False


@dataclass(frozen=True)
class InhomMarkoffResult:
    value: Optional[Surd]  # None encodes infinity
    vertex: Optional[tuple]
    exact: bool
    terminated: bool = False

    @property
    def infinite(self) -> bool:
        return self.value is None


def markoff_inhom(problem: Cell, depth: int = 64, window: int = 50) -> InhomMarkoffResult:
    """Maximum of ``delta/|F_I|`` over the chain's vertices.

    Exact when the chain closes a period in both directions.  A terminated
    chain falls back to the brute-force oracle over ``window``.
    """
    from ..oracle import Window, brute_min

    try:
        rec = chain(problem, depth, depth)
    except Degenerate:
        rec = None
    best, where = Surd(), None
    if rec is not None:
        # nearest entries first, so ties report a vertex close to the start
        for e in sorted(rec.entries, key=lambda e: (abs(e.index), e.index)):
            for q, v in e.values.items():
                if v is None:
                    return InhomMarkoffResult(None, e.cell.vertex(q), True, False)
                if where is None or v > best:
                    best, where = v, e.cell.vertex(q)
    terminated = rec is None or rec.terminated_forward or rec.terminated_backward
    if terminated:
        m, args = brute_min(problem, Window(window, 0))
        if not m:
            return InhomMarkoffResult(None, args[0], False, True)
        v = problem.delta() / m
        if where is None or v > best:
            best, where = v, args[0]
        return InhomMarkoffResult(best, where, False, True)
    fwd = [e for e in rec.entries if e.index >= 0]
    bwd = [e for e in rec.entries if e.index <= 0]
    return InhomMarkoffResult(best, where, _closes(fwd) and _closes(bwd), False)
