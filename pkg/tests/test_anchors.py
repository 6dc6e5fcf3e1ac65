import random

import pytest

from dividedcell.errors import Mismatch, NotSuperfluous
from dividedcell.exactnum import sqrt
from dividedcell.inhomogeneous import (
    Cell,
    anchors,
    chain,
    classify,
    compare_cells,
    inner_box,
    is_divided,
    locate,
    step_forward,
    superfluous_run,
)
from dividedcell.oracle import dominates

from helpers import problems

R3, R5 = sqrt(3), sqrt(5)


def _superfluous():
    g1, g2 = (3 + R5, -1), (-4, 3 + R5)
    box = inner_box(Cell.of(g1, g2))
    centre = ((box.xi_lo + box.xi_hi) / 2, (box.eta_lo + box.eta_hi) / 2)
    dc = is_divided(Cell.of(g1, g2, (-centre[0], -centre[1])))
    assert dc is not None and not classify(dc.cell).superfluous
    nxt, _ = step_forward(dc)
    assert classify(nxt.cell).superfluous
    return nxt


def test_superfluous_run_shape():
    run = superfluous_run(_superfluous())
    assert len(run) == 4
    boxes = {inner_box(dc.cell).relative() for dc in run}
    assert boxes == {(0, R5 - 1, 0, 2 + R5)}


def test_anchor_vertices_dominate_outer_vertices():
    dc = _superfluous()
    back, fwd = anchors(dc)
    assert back.vertex_set() == {(0, 0), (0, 1), (1, 0), (1, 1)}
    assert fwd.vertex_set() == {(0, 0), (1, 1), (-2, -3), (3, 4)}
    run = superfluous_run(dc)
    assert run[0].cell.rows == back.cell.rows and run[-1].cell.rows == fwd.cell.rows
    problem = Cell(run[0].cell.rows)
    pairs = {(1, 2): (0, 1), (0, -1): (1, 0), (2, 3): (3, 4), (-1, -2): (-2, -3)}
    for outer, anchor in pairs.items():
        assert dominates(problem.view(*anchor), problem.view(*outer), "extended")


def test_anchors_need_superfluous():
    dc = is_divided(Cell.of((1 + R3, 1 - R3), (1, 1), (-1 - R3 / 2, -1 + R3 / 2)))
    with pytest.raises(NotSuperfluous):
        anchors(dc)
    with pytest.raises(NotSuperfluous):
        superfluous_run(dc)


def test_locate_matches_chain_order():
    for p in problems(51, 8):
        rec = chain(p, 6, 6)
        cells = [e.cell for e in rec]
        locs = [locate(dc, p) for dc in cells]
        assert locs == sorted(locs)
        assert len(set(locs)) == len(locs)
        rng = random.Random(52)
        a, b = sorted(rng.sample(range(len(cells)), 2))
        assert compare_cells(cells[a], cells[b], p) == -1
        assert compare_cells(cells[b], cells[a], p) == 1
        assert compare_cells(cells[a], cells[a], p) == 0


def test_locate_rejects_foreign_cell():
    p = problems(53, 1)[0]
    q = problems(54, 1)[0]
    dc = chain(q, 0, 0).entries[0].cell
    with pytest.raises(Mismatch):
        locate(dc, p)
