import random
from itertools import product

import pytest

from dividedcell.errors import NotGaussian
from dividedcell.exactnum import sqrt
from dividedcell.inhomogeneous import Cell, classify, initial_cell, inner_box, is_I_reduced, neighbors
from dividedcell.inhomogeneous.pitman import box_tiles

from helpers import problems, reduced_basis

R3 = sqrt(3)
G = Cell.of((1 + R3, 1 - R3), (1, 1))


def test_neighbor_generators():
    n1, n2 = neighbors(G)
    found = {(n.g1, n.g2) for n in (n1, n2)}
    assert ((1 + R3 + 1, 1 - R3 + 1), (1, 1)) in found
    assert ((1 + R3, 1 - R3), (1 - 1 - R3, 1 - 1 + R3)) in found


def test_neighbor_areas_sqrt3():
    areas = sorted((inner_box(c).area for c in box_tiles(G)), key=float)
    assert areas == [2 * R3 - 3, 1, 2]
    assert sum(areas) == G.delta() == 2 * R3


def _open_overlap(a, b):
    return a[0] < b[1] and b[0] < a[1] and a[2] < b[3] and b[2] < a[3]


def _shift(box, v):
    return (box[0] + v[0], box[1] + v[0], box[2] + v[1], box[3] + v[1])


def _assert_tiles(g):
    boxes = [inner_box(c).absolute() for c in box_tiles(g)]
    assert sum((b[1] - b[0]) * (b[3] - b[2]) for b in boxes) == g.delta()
    for (i, a), (j, b) in product(enumerate(boxes), repeat=2):
        for m, n in product((-1, 0, 1), repeat=2):
            if i == j and m == n == 0:
                continue
            v = g.view(m, n)
            v = (v[0] - g.c[0], v[1] - g.c[1])
            assert not _open_overlap(a, _shift(b, v)), (i, j, m, n)


def test_tiling_sqrt3():
    _assert_tiles(G)


def test_tiling_random_gaussian():
    rng = random.Random(41)
    for _ in range(200):
        g = reduced_basis(rng, gaussian=True)
        for n in neighbors(g):
            assert is_I_reduced(n) and classify(n).nongaussian
            assert n.delta() == g.delta()
        _assert_tiles(g)


def test_neighbors_reject_n_cell():
    with pytest.raises(NotGaussian):
        neighbors(Cell.of((2 + R3, 1), (1, 1)))


def test_initial_cell_random():
    for p in problems(42, 500):
        dc = initial_cell(p)
        assert dc.cell.rows == p.times(dc.cell.basis).rows
        assert is_I_reduced(dc.cell)
        assert inner_box(dc.cell).contains()
