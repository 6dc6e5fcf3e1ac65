import json
import subprocess
import sys

import pytest

from dividedcell.cli import main

FIG_ROWS = "1,sqrt(3),-1-1/2*sqrt(3);1,-sqrt(3),-1+1/2*sqrt(3)"
MINK_ROWS = "1,0,1/2;0,1,1/2"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_markoff_json(capsys):
    code, out, _ = run(capsys, "markoff", "--form", "1,0,-3", "--depth", "32")
    data = json.loads(out)
    assert code == 0
    assert data["value"] == "2*sqrt(3)" and data["exact"] is True
    assert data["value_decimal"].startswith("3.464101615")


def test_reduce(capsys):
    code, out, _ = run(capsys, "reduce", "--form", "1,0,-3")
    assert code == 0 and json.loads(out)["delta"] == "2*sqrt(3)"


def test_lagrange(capsys):
    code, out, _ = run(capsys, "lagrange", "--alpha", "sqrt(2)-1", "--n", "3")
    rows = json.loads(out)
    assert code == 0 and [r["convergent"] for r in rows] == ["1/2", "2/5", "5/12"]
    assert rows[0]["M"] == "3/2+sqrt(2)"


def test_init_cell_then_dca(capsys, tmp_path):
    code, out, _ = run(capsys, "init-cell", "--rows", FIG_ROWS)
    assert code == 0
    cell = tmp_path / "cell.json"
    cell.write_text(json.dumps(json.loads(out)["cell"]))
    code, out, _ = run(capsys, "dca", "--rows", FIG_ROWS, "--start", str(cell), "--forward", "2", "--format", "csv")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("index,h,k,type")
    assert len(lines) == 4


def test_dca_writes_file(capsys, tmp_path):
    target = tmp_path / "chain.json"
    code, out, _ = run(capsys, "dca", "--rows", FIG_ROWS, "--forward", "3", "--out", str(target))
    assert code == 0 and out == ""
    assert len(json.loads(target.read_text())) == 4


def test_imarkoff_terminated_exit_code(capsys):
    code, out, err = run(capsys, "imarkoff", "--rows", MINK_ROWS, "--depth", "8", "--window", "10")
    assert code == 3
    assert json.loads(out)["value"] == "4"
    assert json.loads(err)["error"] == "Terminated"


def test_oracle(capsys):
    code, out, _ = run(capsys, "oracle", "--rows", MINK_ROWS, "--window", "6", "--margin", "0")
    data = json.loads(out)
    assert code == 0 and data["min"] == "1/4"
    assert data["argmins"] == [[-1, -1], [-1, 0], [0, -1], [0, 0]]


def test_plot_svg(capsys, tmp_path):
    target = tmp_path / "hom.svg"
    code, _, _ = run(capsys, "plot", "--preset", "hom", "--form", "1,0,-3", "--out", str(target))
    assert code == 0
    assert target.read_text().startswith("<?xml")


def test_syntax_error_reports_position(capsys):
    code, _, err = run(capsys, "markoff", "--rows", "1,sqrt(-3);1,1")
    info = json.loads(err)
    assert code == 1
    assert "negative radicand" in info["message"]
    assert "position" in info


def test_mixed_fields_exit_two(capsys):
    code, _, err = run(capsys, "markoff", "--rows", "1,sqrt(2);1,-sqrt(3)")
    assert code == 2
    assert json.loads(err)["error"] == "FieldMismatch"


@pytest.mark.parametrize("argv", [["bogus"], ["markoff"], ["markoff", "--form", "1,0"]])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in json.loads(err.strip().splitlines()[-1])


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "dividedcell", "markoff", "--form", "1,-1,-1", "--depth", "16"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == "sqrt(5)"
