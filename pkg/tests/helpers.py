"""Seeded generators of random cells and problems shared by the tests."""

import random
from fractions import Fraction

from dividedcell.exactnum import Surd, sqrt
from dividedcell.inhomogeneous import Cell, classify, inner_box, is_I_reduced

FIELDS = (2, 3, 5)


def surd(rng, d, lo=-6, hi=6):
    return Fraction(rng.randint(lo, hi), rng.randint(1, 3)) + Fraction(rng.randint(lo, hi), rng.randint(1, 3)) * sqrt(d)


def irrational_direction(a, b) -> bool:
    return bool(a) and not (b / a).is_rational()


def problem(rng):
    """A 2x3 problem whose linear part represents no zero."""
    d = rng.choice(FIELDS)
    while True:
        rows = [[surd(rng, d) for _ in range(3)] for _ in range(2)]
        c = Cell(rows)
        if c.det and all(irrational_direction(r[0], r[1]) for r in c.rows):
            return c


def problems(seed, n):
    rng = random.Random(seed)
    return [problem(rng) for _ in range(n)]


def _pair(rng, d, lo, hi):
    return Surd(d, rng.randint(lo, hi), rng.randint(lo, hi))


def reduced_basis(rng, gaussian=None, lo=-9, hi=9):
    """Integer pairs in Q(sqrt d) as generators, rejected until I-reduced."""
    d = rng.choice(FIELDS)
    while True:
        a0, b0, a1, b1 = (_pair(rng, d, lo, hi) for _ in range(4))
        cell = Cell.of((a0, a1), (b0, b1))
        if not (cell.det and b0 and a1 and is_I_reduced(cell)):
            continue
        if gaussian is not None and classify(cell).gaussian != gaussian:
            continue
        if classify(cell).gaussian and classify(cell).nongaussian:
            continue
        return cell


def divided_cell(rng, **kw):
    """A reduced basis with the origin at a random rational point of its inner box."""
    basis = reduced_basis(rng, **kw)
    box = inner_box(basis)
    s = Fraction(rng.randint(1, 99), 100)
    t = Fraction(rng.randint(1, 99), 100)
    x = box.xi_lo + s * box.width
    y = box.eta_lo + t * box.height
    return Cell.of(basis.g1, basis.g2, (-x, -y))
