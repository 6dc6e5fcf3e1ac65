"""Anchors of superfluous runs, and placing cells without walking the chain."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import Diverged, Mismatch, NotSuperfluous
from ..homogeneous import _step, _step_back, reduce
from .._linalg import matmul
from .cells import DividedCell, classify, is_divided
from .dca import step_backward, step_forward

__all__ = ["anchors", "superfluous_run", "Location", "locate", "compare_cells"]

MAX_ANCHOR_STEPS = 1_000_000
MAX_LOCATE_STEPS = 100_000


def _forward_anchor(cell) -> bool:
    return abs(cell.a0) >= 2 * abs(cell.b0) or classify(cell).gaussian


def _backward_anchor(cell) -> bool:
    return abs(cell.b1) >= 2 * abs(cell.a1) or classify(cell).gaussian


def _walk(dc, stepper, done):
    cur, path = dc, []
    for _ in range(MAX_ANCHOR_STEPS):
        cur, _ = stepper(cur)
        path.append(cur)
        if done(cur.cell):
            return cur, path
    raise Diverged("no anchor within the step limit")


def anchors(dc: DividedCell):
    """``(backward, forward)`` anchors of a superfluous divided cell."""
    if not classify(dc.cell).superfluous:
        raise NotSuperfluous("anchors() needs a superfluous cell")
    back, _ = _walk(dc, step_backward, _backward_anchor)
    fwd, _ = _walk(dc, step_forward, _forward_anchor)
    return back, fwd


def superfluous_run(dc: DividedCell) -> list:
    """Every cell from the backward anchor to the forward anchor, in chain order."""
    if not classify(dc.cell).superfluous:
        raise NotSuperfluous("superfluous_run() needs a superfluous cell")
    _, back = _walk(dc, step_backward, _backward_anchor)
    _, fwd = _walk(dc, step_forward, _forward_anchor)
    return back[::-1] + [dc] + fwd


@dataclass(frozen=True, order=True)
class Location:
    """Position of a divided cell relative to the homogeneous reduced bases.

    ``cf_index`` is the index in the homogeneous chain of the problem's linear
    part; the first generator equals ``+-(u - offset*s*v)`` for that basis
    ``(u, v)`` with ``s`` the sign of its ``b0``.  ``height`` separates cells
    sharing a first generator.
    """

    cf_index: int
    offset: int
    height: object


def _column(u, i):
    return (u[0][i], u[1][i])


def _xi(problem, p):
    return abs(problem.a0 * p[0] + problem.b0 * p[1])


def _semiconvergent(g1, u, v, s):
    # solve +-g1 = u - j*s*v for an integer j >= 0
    for t in (1, -1):
        dx, dy = u[0] - t * g1[0], u[1] - t * g1[1]
        if v[0]:
            if dx % v[0]:
                continue
            q = dx // v[0]
            if q * v[1] != dy:
                continue
        elif v[1]:
            if dx or dy % v[1]:
                continue
            q = dy // v[1]
        else:
            continue
        j = q * s
        if j >= 0:
            return j
    return None


def locate(dc: DividedCell, problem) -> Location:
    """Place ``dc`` among the reduced bases of ``problem``'s linear part."""
    cell = dc.cell
    if problem.times(cell.basis).rows != cell.rows or is_divided(cell) is None:
        raise Mismatch("cell is not a divided cell of this problem")
    g1 = _column(cell.basis, 0)
    target = _xi(problem, g1)
    g, u = reduce(problem.linear)
    n = 0
    for _ in range(MAX_LOCATE_STEPS):
        if target > _xi(problem, _column(u, 0)):
            g, _, _, w = _step_back(g)
            u, n = matmul(u, w), n - 1
            continue
        nxt, _, _, w = _step(g)
        if _xi(problem, _column(matmul(u, w), 0)) >= target:
            g, u, n = nxt, matmul(u, w), n + 1
            continue
        j = _semiconvergent(g1, _column(u, 0), _column(u, 1), g.b0.sign())
        if j is None:
            raise Mismatch("first generator is not a semi-convergent")
        return Location(n, j, cell.b1)
    raise Diverged("locate() exceeded the step limit")


def compare_cells(a: DividedCell, b: DividedCell, problem) -> int:
    """-1, 0 or 1 as ``a`` comes before, with, or after ``b`` in the chain."""
    la, lb = locate(a, problem), locate(b, problem)
    return (la > lb) - (la < lb)
