"""JSON and CSV encodings of problems, cells and chain records."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Optional

import jsonschema
from referencing import Registry, Resource

from ._linalg import identity, inverse_affine3
from .errors import FieldMismatch, SchemaError
from .exactnum import Surd, as_surd, format_surd, parse_surd, to_decimal
from .homogeneous import HomForm, from_coefficients
from .inhomogeneous.cells import VERTEX_QUADRANTS, Cell, DividedCell
from .inhomogeneous.dca import ChainEntry, ChainRecord, StepChoice, vertex_values

__all__ = [
    "ProblemSpec",
    "validate",
    "surd_text",
    "problem_to_json",
    "problem_from_json",
    "cell_to_json",
    "cell_from_json",
    "chain_to_json",
    "chain_from_json",
    "chain_to_csv",
    "dumps",
]

SCHEMAS = ("problem", "cell", "chain")


@lru_cache(maxsize=None)
def _schema(name: str) -> dict:
    text = resources.files("dividedcell").joinpath("schemas", f"{name}.schema.json").read_text()
    return json.loads(text)


@lru_cache(maxsize=None)
def _registry() -> Registry:
    return Registry().with_resources(
        (f"{n}.schema.json", Resource.from_contents(_schema(n))) for n in SCHEMAS
    )


def validate(obj, name: str):
    """Raise :class:`SchemaError` with a JSON pointer at the first violation."""
    validator = jsonschema.Draft202012Validator(_schema(name), registry=_registry())
    errors = sorted(validator.iter_errors(obj), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
    if errors:
        err = errors[0]
        pointer = "".join(f"/{p}" for p in err.absolute_path)
        raise SchemaError(err.message, pointer)


def surd_text(x) -> str:
    return format_surd(as_surd(x))


def _surd(value, pointer: str) -> Surd:
    if isinstance(value, int):
        return Surd(0, value)
    try:
        return parse_surd(value)
    except ValueError as exc:
        raise SchemaError(str(exc), pointer) from exc


def _check_field(values, declared: Optional[int], pointer: str):
    kernels = {v.d for v in values if v.d}
    if len(kernels) > 1:
        raise FieldMismatch(f"{pointer or '/'}: entries from several fields {sorted(kernels)}")
    if declared is not None and kernels and kernels != {declared}:
        raise FieldMismatch(f"{pointer or '/'}: entries use sqrt({kernels.pop()}) but d = {declared}")


# -- problems ---------------------------------------------------------------


@dataclass(frozen=True)
class ProblemSpec:
    """Either coefficients ``(A, B, C)`` of a form or a 2x2 / 2x3 matrix of rows."""

    rows: Optional[tuple] = None
    form: Optional[tuple] = None

    def __post_init__(self):
        if (self.rows is None) == (self.form is None):
            raise ValueError("give exactly one of rows and form")
        if self.rows is not None:
            rows = tuple(tuple(as_surd(v) for v in r) for r in self.rows)
            _check_field([v for r in rows for v in r], None, "/rows")
            object.__setattr__(self, "rows", rows)
        else:
            object.__setattr__(self, "form", tuple(Fraction(v) for v in self.form))

    @property
    def homogeneous(self) -> bool:
        return self.form is not None or len(self.rows[0]) == 2

    def build(self):
        """The library object: :class:`HomForm` or :class:`Cell`."""
        if self.form is not None:
            return from_coefficients(*self.form)
        if len(self.rows[0]) == 2:
            return HomForm(self.rows)
        return Cell(self.rows)

    def as_cell(self) -> Cell:
        obj = self.build()
        if isinstance(obj, HomForm):
            return Cell.of((obj.a0, obj.a1), (obj.b0, obj.b1))
        return obj


def problem_to_json(spec: ProblemSpec) -> dict:
    if spec.form is not None:
        return {"form": [str(v) for v in spec.form]}
    d = {v.d for r in spec.rows for v in r if v.d}
    out = {"rows": [[surd_text(v) for v in r] for r in spec.rows]}
    if d:
        out = {"d": d.pop(), **out}
    return out


def problem_from_json(obj) -> ProblemSpec:
    validate(obj, "problem")
    if "form" in obj:
        return ProblemSpec(form=tuple(Fraction(str(v).replace(" ", "")) for v in obj["form"]))
    rows = tuple(
        tuple(_surd(v, f"/rows/{i}/{j}") for j, v in enumerate(r)) for i, r in enumerate(obj["rows"])
    )
    if len({len(r) for r in rows}) != 1:
        raise SchemaError("rows must have equal length", "/rows")
    _check_field([v for r in rows for v in r], obj.get("d"), "/rows")
    return ProblemSpec(rows=rows)


# -- cells --------------------------------------------------------------------


def cell_to_json(cell) -> dict:
    if isinstance(cell, DividedCell):
        cell = cell.cell
    out = {}
    d = cell.field()
    if d:
        out["d"] = d
    out["g1"] = [surd_text(v) for v in cell.g1]
    out["g2"] = [surd_text(v) for v in cell.g2]
    out["c"] = [surd_text(v) for v in cell.c]
    if cell.basis != identity(3):
        out["basis"] = [list(r) for r in cell.basis]
    return out


def _cell(obj, pointer: str) -> Cell:
    vals = {k: tuple(_surd(v, f"{pointer}/{k}/{i}") for i, v in enumerate(obj[k])) for k in ("g1", "g2", "c")}
    _check_field([v for t in vals.values() for v in t], obj.get("d"), pointer)
    basis = obj.get("basis")
    return Cell.of(vals["g1"], vals["g2"], vals["c"], tuple(map(tuple, basis)) if basis else None)


def cell_from_json(obj) -> Cell:
    validate(obj, "cell")
    return _cell(obj, "")


# -- chains -------------------------------------------------------------------


def _values_json(values: dict) -> dict:
    return {str(q): (None if v is None else surd_text(v)) for q, v in sorted(values.items())}


def chain_to_json(rec: ChainRecord) -> list:
    out = []
    if rec.terminated_backward:
        out.append({"terminated": "backward"})
    for e in rec.entries:
        choice = None
        if e.choice is not None:
            c = e.choice
            choice = {"h": c.h, "k": c.k, "direction": c.direction, "branch": c.branch, "alternatives": c.alternatives}
        out.append(
            {
                "index": e.index,
                "cell": cell_to_json(e.cell.cell),
                "choice": choice,
                "kind": e.kind,
                "values": _values_json(e.values),
            }
        )
    if rec.terminated_forward:
        out.append({"terminated": "forward"})
    return out


def _divided(cell: Cell) -> DividedCell:
    return DividedCell(cell, {cell.lattice(i, j): q for (i, j), q in VERTEX_QUADRANTS.items()})


def chain_from_json(obj) -> ChainRecord:
    validate(obj, "chain")
    entries, back, fwd = [], False, False
    for n, item in enumerate(obj):
        if "terminated" in item:
            if item["terminated"] == "backward":
                back = True
            else:
                fwd = True
            continue
        cell = _cell(item["cell"], f"/{n}/cell")
        ch = item["choice"]
        choice = None if ch is None else StepChoice(ch["h"], ch["k"], ch["direction"], ch["branch"], ch["alternatives"])
        entries.append(ChainEntry(item["index"], _divided(cell), choice, {}, item["kind"]))
    if not entries:
        raise SchemaError("chain has no entries", "")
    first = entries[0].cell.cell
    delta = first.delta()
    problem = first.times(inverse_affine3(first.basis))
    problem = Cell(problem.rows)
    entries = [ChainEntry(e.index, e.cell, e.choice, vertex_values(e.cell.cell, delta), e.kind) for e in entries]
    return ChainRecord(entries, delta, fwd, back, problem)


def chain_to_csv(rec: ChainRecord, digits: int = 50) -> str:
    """One row per entry: step, type, vertices by quadrant and the entry's largest value."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    head = ["index", "h", "k", "type"]
    for q in (1, 2, 3, 4):
        head += [f"q{q}_x", f"q{q}_y"]
    w.writerow(head + ["M_decimal", "M_exact"])
    for e in rec.entries:
        row = [e.index, e.choice.h if e.choice else "", e.choice.k if e.choice else "", e.kind]
        for q in (1, 2, 3, 4):
            row += list(e.cell.vertex(q))
        vals = list(e.values.values())
        if any(v is None for v in vals):
            row += ["inf", "inf"]
        else:
            top = max(vals)
            row += [str(to_decimal(top, digits)), surd_text(top)]
        w.writerow(row)
    return buf.getvalue()


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"
