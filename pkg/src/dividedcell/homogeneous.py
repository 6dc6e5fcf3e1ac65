"""Indefinite binary quadratic forms and their continued-fraction chains.

A form ``F(x, y) = (a0 x + b0 y)(a1 x + b1 y)`` is stored as the 2x2 matrix
``[[a0, b0], [a1, b1]]``.  Rows are the two linear factors; columns are the
viewing coordinates ``(xi, eta)`` of the lattice generators.  Right
multiplication by a unimodular integer matrix changes the lattice basis, left
multiplication by a +-1 diagonal flips the orientation of an axis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ._linalg import det2, identity, matmul
from .errors import Degenerate, FieldMismatch, NotIndefinite, Terminated
from .exactnum import Surd, as_surd, floor, floor_quot, sqrt

__all__ = [
    "HomForm",
    "HomChainStep",
    "MarkoffResult",
    "from_coefficients",
    "is_reduced",
    "reduce",
    "step",
    "step_back",
    "chain",
    "markoff",
    "lagrange_sequence",
    "axis_point",
]

MAX_REDUCE_STEPS = 100_000


@dataclass(frozen=True)
class HomForm:
    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_surd(v) for v in row) for row in self.rows)
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError("HomForm needs a 2x2 matrix")
        object.__setattr__(self, "rows", rows)
        self.field()  # rejects mixed kernels

    @classmethod
    def of(cls, a0, b0, a1, b1) -> HomForm:
        return cls(((a0, b0), (a1, b1)))

    a0 = property(lambda self: self.rows[0][0])
    b0 = property(lambda self: self.rows[0][1])
    a1 = property(lambda self: self.rows[1][0])
    b1 = property(lambda self: self.rows[1][1])

    def field(self) -> int:
        ds = {v.d for row in self.rows for v in row if v.d}
        if len(ds) > 1:
            raise FieldMismatch(f"entries from several fields {sorted(ds)}")
        return ds.pop() if ds else 0

    @property
    def det(self) -> Surd:
        return det2(self.rows)

    def delta(self) -> Surd:
        return abs(self.det)

    def times(self, u) -> HomForm:
        return HomForm(matmul(self.rows, u))

    def signed(self, s0: int, s1: int) -> HomForm:
        return HomForm(((s0 * self.a0, s0 * self.b0), (s1 * self.a1, s1 * self.b1)))

    def __call__(self, x: int, y: int) -> Surd:
        return (self.a0 * x + self.b0 * y) * (self.a1 * x + self.b1 * y)

    def key(self) -> tuple:
        """Scale-free state: first row over a0, second row over b1."""
        return (self.b0 / self.a0, self.a1 / self.b1)


@dataclass(frozen=True)
class HomChainStep:
    index: int
    matrix: HomForm
    digit: Optional[int]
    point: tuple
    value: Optional[Surd]
    basis: tuple = field(default=((1, 0), (0, 1)), repr=False)


@dataclass(frozen=True)
class MarkoffResult:
    value: Optional[Surd]  # None encodes infinity
    point: tuple
    exact: bool

    @property
    def infinite(self) -> bool:
        return self.value is None


def from_coefficients(A, B, C) -> HomForm:
    """Factor ``A x^2 + B xy + C y^2`` over Q(sqrt(D))."""
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    D = B * B - 4 * A * C
    if D <= 0:
        raise NotIndefinite(f"discriminant {D} is not positive")
    # sqrt(D) for rational D = N/M equals sqrt(N*M)/M
    root = sqrt(D.numerator * D.denominator) / D.denominator
    if A == 0:
        return HomForm.of(B, C, 0, 1)
    return HomForm.of(A, (B - root) / 2, 1, (B + root) / (2 * A))


def is_reduced(f: HomForm) -> bool:
    a0, b0, a1, b1 = f.a0, f.b0, f.a1, f.b1
    return a0 > 0 and b1 > 0 and (a1 * b0).sign() <= 0 and a0 >= abs(b0) and b1 >= abs(a1)


def axis_point(a: Surd, b: Surd) -> Optional[tuple]:
    """Primitive lattice vector on the line ``a x + b y = 0``, if any."""
    if not a:
        return (1, 0)
    ratio = b / a
    if not ratio.is_rational():
        return None
    r = ratio.r
    return (-r.numerator, r.denominator)


def _flip_columns(f: HomForm, u):
    """Negate generators so that a0 > 0 and b1 > 0."""
    s0 = -1 if f.a0 < 0 else 1
    s1 = -1 if f.b1 < 0 else 1
    if s0 == 1 and s1 == 1:
        return f, u
    d = ((s0, 0), (0, s1))
    return f.times(d), matmul(u, d)


def _check_axes(f: HomForm):
    for a, b in f.rows:
        pt = axis_point(a, b)
        if pt is not None:
            raise Degenerate(f"lattice direction {pt} lies on an axis", pt)


def reduce(f: HomForm):
    """Return ``(g, U)`` with ``g = f.times(U)`` reduced and ``det U = +-1``."""
    if not f.det:
        raise Degenerate("singular form")
    u = identity(2)
    g, u = _flip_columns(f, u)
    if is_reduced(g):
        return g, u
    _check_axes(f)
    for _ in range(MAX_REDUCE_STEPS):
        a = floor_quot(g.a0, abs(g.b0))
        v = ((0, -1), (1, a)) if g.b0 > 0 else ((0, 1), (-1, a))
        g, u = _flip_columns(g.times(v), matmul(u, v))
        if is_reduced(g):
            return g, u
    raise Degenerate("reduction did not converge")


def _step(f: HomForm):
    """One continued-fraction step: ``(next, digit, signs, U)``, next = signs*f*U."""
    if not f.b0:
        raise Terminated("b0 = 0: the second generator lies on an axis")
    a = floor_quot(f.a0, abs(f.b0))
    if f.b0 > 0:
        u, signs = ((0, 1), (1, -a)), (1, -1)
    else:
        u, signs = ((0, 1), (-1, a)), (1, 1)
    return f.times(u).signed(*signs), a, signs, u


def step(f: HomForm):
    """Advance a reduced matrix one step; returns ``(next, digit)``."""
    nxt, a, _, _ = _step(f)
    return nxt, a


def _swap(f: HomForm) -> HomForm:
    return HomForm.of(f.b1, f.a1, f.b0, f.a0)


def _step_back(f: HomForm):
    # Exchanging both the axes and the generators turns a backward step
    # into a forward one.
    if not f.a1:
        raise Terminated("a1 = 0: the first generator lies on an axis")
    g, a, (s0, s1), u = _step(_swap(f))
    return _swap(g), a, (s1, s0), ((u[1][1], u[1][0]), (u[0][1], u[0][0]))


def step_back(f: HomForm):
    """Inverse of :func:`step`; returns ``(previous, digit)``."""
    prev, a, _, _ = _step_back(f)
    return prev, a


def _value(g: HomForm, delta: Surd) -> Optional[Surd]:
    prod = g.a0 * g.a1
    return delta / abs(prod) if prod else None


def _entry(index, g, u, delta):
    digit = floor_quot(g.a0, abs(g.b0)) if g.b0 else None
    return HomChainStep(index, g, digit, (u[0][0], u[1][0]), _value(g, delta), u)


def chain(f: HomForm, n_back: int, n_fwd: int) -> list:
    """Two-sided chain of reduced matrices around the reduction of ``f``.

    A side stops early when it hits an axis-parallel generator.
    """
    g0, u0 = reduce(f)
    delta = f.delta()
    out = [_entry(0, g0, u0, delta)]
    g, u = g0, u0
    for i in range(1, n_fwd + 1):
        try:
            g, _, _, v = _step(g)
        except Terminated:
            break
        u = matmul(u, v)
        out.append(_entry(i, g, u, delta))
    g, u = g0, u0
    back = []
    for i in range(1, n_back + 1):
        try:
            g, _, _, v = _step_back(g)
        except Terminated:
            break
        u = matmul(u, v)
        back.append(_entry(-i, g, u, delta))
    return back[::-1] + out


def _best(entries: Sequence[HomChainStep]):
    best = None
    for e in entries:
        if e.value is None:
            return e
        if best is None or e.value > best.value:
            best = e
    return best


def markoff(f: HomForm, depth: int = 64) -> MarkoffResult:
    """M(F) from the chain; exact when a full period closes within ``depth``.

    Otherwise the value is the maximum over ``depth`` steps in each
    direction, a lower bound for M(F).
    """
    try:
        steps = chain(f, 0, depth + 1)
    except Degenerate as exc:
        return MarkoffResult(None, exc.point, True)
    for e in steps:
        if e.value is None:
            return MarkoffResult(None, e.point, True)
    # Index 0 carries the sign convention of reduce(), later matrices that of
    # step(); periods are therefore searched from index 1.
    if len(steps) > 1:
        start = steps[1].matrix.key()
        for j in range(2, len(steps)):
            if steps[j].matrix.key() == start:
                top = _best(steps[1:j])
                return MarkoffResult(top.value, top.point, True)
    top = _best(chain(f, depth, depth))
    return MarkoffResult(top.value, top.point, top.value is None)


def lagrange_sequence(alpha, n_max: int) -> list:
    """Convergents ``p/q`` of ``alpha`` with ``M_n = 1 / (q |q alpha - p|)``."""
    alpha = as_surd(alpha)
    if alpha.is_rational():
        raise Degenerate("alpha is rational")
    if not (0 < alpha < 1):
        raise ValueError("alpha must lie in (0, 1)")
    out = []
    p_prev, q_prev, p, q = 1, 0, 0, 1
    x = alpha
    for n in range(1, n_max + 1):
        x = 1 / (x - floor(x))
        a = floor(x)
        p_prev, q_prev, p, q = p, q, a * p + p_prev, a * q + q_prev
        out.append((n, Fraction(p, q), 1 / (q * abs(q * alpha - p))))
    return out
