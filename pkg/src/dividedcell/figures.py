"""Deterministic SVG pictures of lattices, axes, cells and boxes.

All geometry stays exact until the final step, where each coordinate is
expanded to 50 digits and rounded to 6 decimals.  Identical scenes therefore
give byte-identical files.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from typing import Optional
from xml.sax.saxutils import escape

from .errors import BadPreset, DividedCellError, EmptyScene
from .exactnum import Surd, as_surd, to_decimal
from .homogeneous import HomForm
from .inhomogeneous.cells import Cell, DividedCell, classify, inner_box, is_divided, is_I_reduced
from .inhomogeneous.dca import step_forward, step_matrix, successors
from .inhomogeneous.pitman import initial_cell, neighbors

__all__ = [
    "PALETTE",
    "Scene",
    "Lattice",
    "Polygon",
    "Rect",
    "Marker",
    "Path",
    "Label",
    "render",
    "preset",
    "PRESETS",
]

# Fixed palette; the monochrome flag maps every entry to black or gray.
PALETTE = {
    "axis": "#000000",
    "lattice": "#555555",
    "cell": "#1f5fa8",
    "box": "#c23b22",
    "successor": "#2e8b57",
    "vertex": "#7a3e9d",
    "path": "#6b6b6b",
    "label": "#000000",
}
_MONO = {"axis": "#000000", "lattice": "#000000", "box": "#000000", "path": "#000000"}

_Q = decimal.Decimal("0.000001")
_CTX = decimal.Context(prec=80, rounding=decimal.ROUND_HALF_EVEN)
WIDTH_PX = 600


@dataclass(frozen=True)
class Lattice:
    """Lattice points ``c + i*g1 + j*g2`` that fall inside the viewport."""

    cell: Cell
    N: int = 10
    style: str = "lattice"


@dataclass(frozen=True)
class Polygon:
    points: tuple
    style: str = "cell"


@dataclass(frozen=True)
class Rect:
    xi_lo: Surd
    xi_hi: Surd
    eta_lo: Surd
    eta_hi: Surd
    style: str = "box"


@dataclass(frozen=True)
class Marker:
    point: tuple
    style: str = "vertex"


@dataclass(frozen=True)
class Path:
    points: tuple
    style: str = "path"
    dashed: bool = True


@dataclass(frozen=True)
class Label:
    point: tuple
    text: str
    style: str = "label"


@dataclass
class Scene:
    """Items in viewing coordinates; ``scale`` maps ``(xi, eta)`` to ``(a*xi, eta/a)``.

    ``viewport`` is ``(xi_lo, xi_hi, eta_lo, eta_hi)`` after scaling; when
    omitted it is fitted to the non-lattice items and the origin.
    """

    items: list = field(default_factory=list)
    viewport: Optional[tuple] = None
    scale: Surd = field(default_factory=lambda: Surd(0, 1))
    monochrome: bool = False
    title: str = ""

    def add(self, *items) -> Scene:
        self.items.extend(items)
        return self


def _pt(p):
    return (as_surd(p[0]), as_surd(p[1]))


def _scaled(scene: Scene, p):
    a = as_surd(scene.scale)
    x, y = _pt(p)
    return (a * x, y / a)


def _item_points(item):
    if isinstance(item, (Polygon, Path)):
        return list(item.points)
    if isinstance(item, Rect):
        return [(item.xi_lo, item.eta_lo), (item.xi_hi, item.eta_hi)]
    if isinstance(item, (Marker, Label)):
        return [item.point]
    return []


def _fit(scene: Scene):
    pts = [_scaled(scene, (0, 0))]
    for item in scene.items:
        pts += [_scaled(scene, p) for p in _item_points(item)]
    xs, ys = [p[0] for p in pts], [p[1] for p in pts]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    pad = max(x1 - x0, y1 - y0, Surd(0, 1)) / 8
    return (x0 - pad, x1 + pad, y0 - pad, y1 + pad)


def _num(x) -> str:
    d = to_decimal(as_surd(x), 50).quantize(_Q, context=_CTX)
    s = f"{d:f}"
    return "0.000000" if s == "-0.000000" else s


def _color(scene: Scene, style: str) -> str:
    if scene.monochrome:
        return _MONO.get(style, "#000000")
    return PALETTE.get(style, "#000000")


def render(scene: Scene) -> str:
    """The scene as an SVG 1.1 document."""
    x0, x1, y0, y1 = scene.viewport if scene.viewport is not None else _fit(scene)
    x0, x1, y0, y1 = (as_surd(v) for v in (x0, x1, y0, y1))
    if not (x0 < x1 and y0 < y1):
        raise EmptyScene("viewport has no interior")
    w, h = x1 - x0, y1 - y0
    stroke = _num(max(w, h) / 300)
    radius = _num(max(w, h) / 150)

    def xy(p):
        X, Y = _scaled(scene, p)
        return _num(X), _num(-Y)

    out = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{WIDTH_PX}" height="{_num(WIDTH_PX * h / w)}" '
        f'viewBox="{_num(x0)} {_num(-y1)} {_num(w)} {_num(h)}">',
    ]
    if scene.title:
        out.append(f"<title>{escape(scene.title)}</title>")
    axis = _color(scene, "axis")
    out.append(
        f'<line class="axis" x1="{_num(x0)}" y1="0.000000" x2="{_num(x1)}" y2="0.000000" '
        f'stroke="{axis}" stroke-width="{stroke}"/>'
    )
    out.append(
        f'<line class="axis" x1="0.000000" y1="{_num(-y1)}" x2="0.000000" y2="{_num(-y0)}" '
        f'stroke="{axis}" stroke-width="{stroke}"/>'
    )
    for item in scene.items:
        color = _color(scene, item.style)
        if isinstance(item, Lattice):
            out.append(f'<g class="lattice" fill="{color}">')
            for i in range(-item.N, item.N + 1):
                for j in range(-item.N, item.N + 1):
                    X, Y = _scaled(scene, item.cell.view(i, j))
                    if x0 <= X <= x1 and y0 <= Y <= y1:
                        out.append(f'<circle cx="{_num(X)}" cy="{_num(-Y)}" r="{radius}"/>')
            out.append("</g>")
        elif isinstance(item, Polygon):
            pts = " ".join(",".join(xy(p)) for p in item.points)
            fill = "none" if scene.monochrome else color
            out.append(
                f'<polygon class="{item.style}" points="{pts}" fill="{fill}" fill-opacity="0.15" '
                f'stroke="{color}" stroke-width="{stroke}"/>'
            )
        elif isinstance(item, Rect):
            (ax, ay), (bx, by) = _scaled(scene, (item.xi_lo, item.eta_lo)), _scaled(scene, (item.xi_hi, item.eta_hi))
            fill = "#bbbbbb" if scene.monochrome else color
            out.append(
                f'<rect class="{item.style}" x="{_num(ax)}" y="{_num(-by)}" width="{_num(bx - ax)}" '
                f'height="{_num(by - ay)}" fill="{fill}" fill-opacity="0.35" stroke="{color}" '
                f'stroke-width="{stroke}"/>'
            )
        elif isinstance(item, Marker):
            cx, cy = xy(item.point)
            out.append(f'<circle class="{item.style}" cx="{cx}" cy="{cy}" r="{_num(max(w, h) / 80)}" fill="{color}"/>')
        elif isinstance(item, Path):
            d = " ".join(("M" if k == 0 else "L") + " " + " ".join(xy(p)) for k, p in enumerate(item.points))
            dash = f' stroke-dasharray="{_num(max(w, h) / 60)}"' if item.dashed else ""
            out.append(f'<path class="{item.style}" d="{d}" fill="none" stroke="{color}" stroke-width="{stroke}"{dash}/>')
        elif isinstance(item, Label):
            x, y = xy(item.point)
            out.append(
                f'<text class="label" x="{x}" y="{y}" font-family="sans-serif" '
                f'font-size="{_num(max(w, h) / 30)}" fill="{color}">{escape(item.text)}</text>'
            )
        else:
            raise TypeError(f"unknown scene item {item!r}")
    out.append("</svg>")
    return "\n".join(out) + "\n"


# -- presets ------------------------------------------------------------------


def _outline(cell: Cell):
    return tuple(cell.view(i, j) for i, j in ((0, 0), (1, 0), (1, 1), (0, 1)))


def _vertices(cell: Cell):
    return [Marker(cell.view(i, j)) for i, j in ((0, 0), (1, 0), (1, 1), (0, 1))]


def _rect(box, style="box"):
    return Rect(*box.absolute(), style=style)


def _problem(data) -> Cell:
    if isinstance(data, DividedCell):
        return data.cell
    if isinstance(data, HomForm):
        return Cell.of((data.a0, data.a1), (data.b0, data.b1))
    if isinstance(data, Cell):
        return data
    raise BadPreset(f"expected a cell or form, got {type(data).__name__}")


def _reduced_basis(data) -> Cell:
    cell = _problem(data)
    if not is_I_reduced(cell):
        raise BadPreset("preset needs an I-reduced basis")
    if not cell.b0:
        raise BadPreset("preset needs b0 != 0")
    return Cell.of(cell.g1, cell.g2)


def _centered(basis: Cell, xi=None) -> Cell:
    """The basis placed so the origin sits in its inner box (at ``xi`` if given)."""
    box = inner_box(basis)
    mx = (box.xi_lo + box.xi_hi) / 2 if xi is None else xi
    my = (box.eta_lo + box.eta_hi) / 2
    return Cell.of(basis.g1, basis.g2, (-mx, -my))


def _square(radius):
    r = as_surd(radius)
    return (-r, r, -r, r)


def _hom(data, N=8, radius=4):
    if not isinstance(data, HomForm):
        raise BadPreset("hom preset needs a HomForm")
    lat = Cell.of((data.a0, data.a1), (data.b0, data.b1))
    return Scene([Lattice(lat, N), Polygon(_outline(lat))], _square(radius), title="Homogeneous example")


def _inhom(data, N=8, radius=4):
    if not isinstance(data, Cell):
        raise BadPreset("inhom preset needs a problem Cell")
    try:
        dc = initial_cell(data)
    except DividedCellError as exc:
        raise BadPreset(str(exc)) from exc
    return Scene(
        [Lattice(data, N), Polygon(_outline(dc.cell))] + _vertices(dc.cell),
        _square(radius),
        title="Inhomogeneous example",
    )


def _cell_box(data, N=4):
    cell = _problem(data)
    if is_divided(cell) is None:
        raise BadPreset("cell_box preset needs a divided cell")
    return Scene(
        [Lattice(cell, N), Polygon(_outline(cell)), _rect(inner_box(cell))] + _vertices(cell),
        title="Cells and Boxes",
    )


def _successors(data, N=4):
    basis = _reduced_basis(data)
    scenes = {}
    for s in successors(basis):
        if s.kind in scenes:
            continue
        lo, hi = s.interval
        cell = _centered(basis, (lo + hi) / 2 if lo < hi else lo)
        dc = is_divided(cell)
        if dc is None:
            continue
        nxt, choice = step_forward(dc)
        if (choice.h, choice.k) != (s.h, s.k):
            continue
        scenes[s.kind] = Scene(
            [
                Lattice(cell, N),
                Polygon(_outline(cell)),
                _rect(inner_box(cell)),
                Polygon(_outline(nxt.cell), style="successor"),
                _rect(inner_box(nxt.cell), style="successor"),
            ],
            title=f"Successor Cells and Boxes ({s.kind}, h={s.h}, k={s.k})",
        )
    if set(scenes) != {"G", "N"}:
        raise BadPreset("basis does not have both G and N successors")
    return scenes["G"], scenes["N"]


def _all_boxes(data, N=4):
    basis = _reduced_basis(data)
    branch = basis.b0.sign()
    items = [_rect(inner_box(basis))]
    marks = set()
    for s in successors(basis):
        succ = basis.times(step_matrix(s.h, s.k, branch))
        items.append(_rect(inner_box(succ), style="successor"))
        for i, j in ((0, 0), (1, 0), (1, 1), (0, 1)):
            marks.add(succ.view(i, j))
    items += [Marker(p) for p in sorted(marks, key=lambda p: (float(p[0]), float(p[1])))]
    return Scene(items, title="All Successor Boxes")


def _superfluous(data, N=4):
    from .inhomogeneous.anchors import superfluous_run

    if not isinstance(data, DividedCell) or not classify(data.cell).superfluous:
        raise BadPreset("superfluous preset needs a superfluous DividedCell")
    run = superfluous_run(data)
    items = [Polygon(_outline(dc.cell)) for dc in run]
    items.append(_rect(inner_box(data.cell)))
    return Scene(items, title="Superfluous cells")


def _three_box(data, N=3):
    g = _problem(data)
    g = Cell.of(g.g1, g.g2)
    if not (is_I_reduced(g) and classify(g).gaussian):
        raise BadPreset("three_box preset needs an I-reduced G-cell")
    n1, n2 = neighbors(g)
    items = [
        Lattice(g, N),
        Polygon(_outline(g)),
        _rect(inner_box(g)),
        _rect(inner_box(n1)),
        _rect(inner_box(n2)),
        Path((g.view(1, 0), g.view(0, 1))),
    ]
    return Scene(items, title="Three boxes form a fundamental domain")


PRESETS = {
    "hom": _hom,
    "inhom": _inhom,
    "cell_box": _cell_box,
    "successors": _successors,
    "all_boxes": _all_boxes,
    "superfluous": _superfluous,
    "three_box": _three_box,
}


def preset(name: str, data, **options):
    """Scene mirroring one of the standard pictures.

    ``successors`` returns a pair ``(G scene, N scene)``; every other preset
    returns a single scene.
    """
    try:
        build = PRESETS[name]
    except KeyError:
        raise BadPreset(f"unknown preset {name!r}; choose from {sorted(PRESETS)}") from None
    return build(data, **options)
