import csv
import io
import json
from fractions import Fraction

import pytest

from dividedcell.errors import FieldMismatch, SchemaError
from dividedcell.exactnum import Surd, sqrt
from dividedcell.inhomogeneous import Cell, chain
from dividedcell.serialize import (
    ProblemSpec,
    cell_from_json,
    cell_to_json,
    chain_from_json,
    chain_to_csv,
    chain_to_json,
    problem_from_json,
    problem_to_json,
    validate,
)

from helpers import problems

R3 = sqrt(3)
PROBLEM = Cell(((1, R3, -1 - R3 / 2), (1, -R3, -1 + R3 / 2)))


def test_problem_round_trip_rows():
    spec = ProblemSpec(rows=PROBLEM.rows)
    obj = problem_to_json(spec)
    assert obj["d"] == 3
    assert problem_from_json(json.loads(json.dumps(obj))).build() == PROBLEM


def test_problem_form():
    spec = problem_from_json({"form": [1, 0, "-3"]})
    assert spec.homogeneous
    assert spec.as_cell().delta() == 2 * R3


def test_problem_needs_one_source():
    with pytest.raises(ValueError):
        ProblemSpec()
    with pytest.raises(ValueError):
        ProblemSpec(rows=((1, 0), (0, 1)), form=(1, 0, -1))


@pytest.mark.parametrize(
    "obj, pointer",
    [
        ({"rows": [["1", "sqrt(3)"]]}, "/rows"),
        ({"form": [1, 0]}, "/form"),
        ({"rows": [["1", "x"], ["1", "1"]]}, "/rows/0/1"),
        ({"rows": [["1", "1"], ["1", "1"]], "extra": 1}, ""),
    ],
)
def test_problem_schema_errors(obj, pointer):
    with pytest.raises(SchemaError) as exc:
        problem_from_json(obj)
    assert exc.value.pointer == pointer


def test_declared_field_mismatch():
    with pytest.raises(FieldMismatch):
        problem_from_json({"d": 5, "rows": [["1", "sqrt(3)"], ["1", "-sqrt(3)"]]})
    with pytest.raises(FieldMismatch):
        problem_from_json({"rows": [["sqrt(2)", "sqrt(3)"], ["1", "1"]]})


def test_cell_round_trip():
    cell = PROBLEM.times(((1, 1, 0), (1, 0, 0), (0, 0, 1)))
    obj = cell_to_json(cell)
    validate(obj, "cell")
    assert "basis" in obj
    back = cell_from_json(obj)
    assert back.rows == cell.rows and back.basis == cell.basis
    assert "basis" not in cell_to_json(PROBLEM)


def test_chain_round_trip():
    for p in [PROBLEM] + problems(61, 3):
        rec = chain(p, 3, 3)
        obj = json.loads(json.dumps(chain_to_json(rec)))
        back = chain_from_json(obj)
        assert [e.cell.cell.rows for e in back] == [e.cell.cell.rows for e in rec]
        assert [e.values for e in back] == [e.values for e in rec]
        assert [e.choice for e in back] == [e.choice for e in rec]


def test_chain_terminated_markers():
    half = Surd(0, Fraction(1, 2))
    rec = chain(Cell(((1, 0, half), (0, 1, half))), 4, 4)
    obj = chain_to_json(rec)
    markers = [item for item in obj if "terminated" in item]
    assert markers
    back = chain_from_json(obj)
    assert (back.terminated_forward, back.terminated_backward) == (rec.terminated_forward, rec.terminated_backward)


def test_chain_csv():
    rec = chain(PROBLEM, 1, 1)
    rows = list(csv.reader(io.StringIO(chain_to_csv(rec))))
    assert rows[0][:4] == ["index", "h", "k", "type"]
    assert rows[0][-2:] == ["M_decimal", "M_exact"]
    assert len(rows) == 4
    last = rows[-1]
    assert last[:4] == ["1", "1", "1", "N"]
    digits = last[-2].replace("-", "").replace(".", "").lstrip("0")
    assert len(digits) == 50


def test_empty_chain_rejected():
    with pytest.raises(SchemaError):
        chain_from_json([])
