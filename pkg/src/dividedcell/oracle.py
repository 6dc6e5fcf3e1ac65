"""Brute-force ground truth over finite windows of the lattice.

Everything here is deliberately naive: exhaustive scans with exact
arithmetic.  Results are the reference against which the chain algorithms
are checked.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DividedCellError, Unbounded
from .exactnum import Surd
from .homogeneous import HomForm
from .inhomogeneous.cells import Cell, quadrant_of

__all__ = [
    "Window",
    "LineMax",
    "brute_min",
    "brute_min_form",
    "line_max",
    "minimal_points",
    "dominates",
    "certifiable",
]

_SIGNS = {1: (1, 1), 2: (-1, 1), 3: (-1, -1), 4: (1, -1)}


@dataclass(frozen=True)
class Window:
    N: int
    margin: int = 5

    def __post_init__(self):
        if self.N <= 0 or not (0 <= self.margin < self.N):
            raise ValueError("need N > 0 and 0 <= margin < N")

    def points(self):
        r = range(-self.N, self.N + 1)
        return [(x, y) for x in r for y in r]

    def inner(self, p) -> bool:
        n = self.N - self.margin
        return abs(p[0]) <= n and abs(p[1]) <= n


def _as_problem(problem) -> Cell:
    if isinstance(problem, HomForm):
        return Cell.of((problem.a0, problem.a1), (problem.b0, problem.b1))
    return problem


def _homogeneous(problem: Cell) -> bool:
    return not problem.c0 and not problem.c1


def _views(problem: Cell, w: Window):
    a0, b0, c0, a1, b1, c1 = problem.a0, problem.b0, problem.c0, problem.a1, problem.b1, problem.c1
    skip_origin = _homogeneous(problem)
    out = {}
    for x in range(-w.N, w.N + 1):
        xi_x, eta_x = a0 * x + c0, a1 * x + c1
        for y in range(-w.N, w.N + 1):
            if skip_origin and x == 0 and y == 0:
                continue
            out[(x, y)] = (xi_x + b0 * y, eta_x + b1 * y)
    return out


def brute_min(problem, w: Window):
    """Exact ``min |F_I|`` over the window and all points attaining it.

    Homogeneous problems (zero translation) skip the lattice origin.
    """
    problem = _as_problem(problem)
    best, args = None, []
    for p, (xi, eta) in _views(problem, w).items():
        v = abs(xi * eta)
        if best is None or v < best:
            best, args = v, [p]
        elif v == best:
            args.append(p)
    return best, sorted(args)


def brute_min_form(A: int, B: int, C: int, N: int):
    """``min |A x^2 + B xy + C y^2|`` over nonzero points of the window, in integers."""
    best, args = None, []
    for x in range(-N, N + 1):
        for y in range(-N, N + 1):
            if x == 0 and y == 0:
                continue
            v = abs(A * x * x + B * x * y + C * y * y)
            if best is None or v < best:
                best, args = v, [(x, y)]
            elif v == best:
                args.append((x, y))
    return best, args


@dataclass(frozen=True)
class LineMax:
    t: Surd
    location: tuple
    value: Surd
    interval: tuple


def line_max(problem, point, direction, quadrant: int) -> LineMax:
    """Maximum of ``|F_I|`` on ``point + t*direction`` inside a closed quadrant.

    ``point`` and ``direction`` are in lattice coordinates.  The maximizer is
    the midpoint of the parameter interval, where both factors vanish at the
    ends.
    """
    problem = _as_problem(problem)
    sx, sy = _SIGNS[quadrant]
    xi_p, eta_p = problem.view(*point)
    xi_v = problem.a0 * direction[0] + problem.b0 * direction[1]
    eta_v = problem.a1 * direction[0] + problem.b1 * direction[1]
    if not xi_v or not eta_v or (sx * xi_v).sign() == (sy * eta_v).sign():
        raise Unbounded("the line meets the quadrant in an unbounded set")
    t_xi = -xi_p / xi_v
    t_eta = -eta_p / eta_v
    lo, hi = min(t_xi, t_eta), max(t_xi, t_eta)
    # direction of increasing sx*xi tells which root bounds from below
    inside = lambda t: (sx * (xi_p + t * xi_v)).sign() >= 0 and (sy * (eta_p + t * eta_v)).sign() >= 0
    mid = (lo + hi) / 2
    if not inside(mid):
        raise DividedCellError("the line misses the quadrant")
    loc = (xi_p + mid * xi_v, eta_p + mid * eta_v)
    return LineMax(mid, loc, abs(loc[0] * loc[1]), (lo, hi))


def _common_quadrant(r_view, s_view, homogeneous: bool) -> bool:
    qs = quadrant_of(*s_view)
    if qs & quadrant_of(*r_view):
        return True
    # in the homogeneous case -R is a lattice point as good as R
    return homogeneous and bool(qs & quadrant_of(-r_view[0], -r_view[1]))


def dominates(r_view, s_view, kind: str = "basic", homogeneous: bool = False) -> bool:
    """Whether lattice point R lies strictly below S in the chosen partial order.

    Views are viewing coordinates.  The basic order needs R at least as close
    to both axes.  The extended order also accepts R beyond S on a lattice
    line, away from the line's maximum of ``|F_I|``; with ``u, v`` the
    distances to the axes this is the triangle ``v_S u_R + u_S v_R <= 2 u_S v_S``.
    """
    xr, yr = abs(r_view[0]), abs(r_view[1])
    xs, ys = abs(s_view[0]), abs(s_view[1])
    if xr == xs and yr == ys:
        return False
    if kind == "basic":
        if not (xr <= xs and yr <= ys):
            return False
        return homogeneous or _common_quadrant(r_view, s_view, False)
    if not _common_quadrant(r_view, s_view, homogeneous):
        return False
    return ys * xr + xs * yr <= 2 * xs * ys


def certifiable(problem, point, w: Window, kind: str = "basic") -> bool:
    """Whether every potential dominator of ``point`` lies inside the window."""
    problem = _as_problem(problem)
    if not w.inner(point):
        return False
    homogeneous = _homogeneous(problem)
    xi, eta = problem.view(*point)
    factor = 2 if kind == "extended" else 1
    X, Y = factor * abs(xi), factor * abs(eta)
    if homogeneous:
        xs, ys = (-X, X), (-Y, Y)
        corners = [(u, v) for u in xs for v in ys]
    else:
        corners = []
        for q in quadrant_of(xi, eta):
            sx, sy = _SIGNS[q]
            corners += [(u, v) for u in (Surd(), sx * X) for v in (Surd(), sy * Y)]
    det = problem.det
    for u, v in corners:
        u, v = u - problem.c0, v - problem.c1
        x = (problem.b1 * u - problem.b0 * v) / det
        y = (problem.a0 * v - problem.a1 * u) / det
        if abs(x) > w.N or abs(y) > w.N:
            return False
    return True


def minimal_points(problem, w: Window, kind: str = "basic") -> list:
    """Certified minimal lattice points of the window, sorted.

    Basic order: within a closed quadrant, R < S when R is at least as close
    to both axes and not tied.  Extended order adds, along every lattice line
    meeting the quadrant in a bounded segment, R < S when R lies farther than
    S from the line's maximum of ``|F_I|`` on the same side.  Homogeneous
    problems compare across quadrants in the basic order.
    """
    if kind not in ("basic", "extended"):
        raise ValueError(kind)
    problem = _as_problem(problem)
    homogeneous = _homogeneous(problem)
    views = _views(problem, w)
    pts = list(views)
    basic = []
    for s in pts:
        if not w.inner(s):
            continue
        if any(dominates(views[r], views[s], "basic", homogeneous) for r in pts if r != s):
            continue
        basic.append(s)
    if kind == "basic":
        found = basic
    else:
        found = [
            s
            for s in basic
            if not any(dominates(views[r], views[s], "extended", homogeneous) for r in pts if r != s)
        ]
    return sorted(p for p in found if certifiable(problem, p, w, kind))
