import json
import subprocess
import sys

import pytest

from ellmoduli.cli import main
from ellmoduli.moduli import appendix_requests, describe, table_rows
from ellmoduli.root_datum import build_datum, fundamental_group, pi1_class
from ellmoduli.slope import slope_map


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_describe_text(capsys):
    code, out, _ = run(capsys, "describe", "GL6", "4", "--format", "text")
    assert code == 0
    assert out.strip() == "E^2 / W(A1)  [L = GL3 x GL3, lambda_L = (2,2)]"


def test_describe_json_is_the_library_descriptor(capsys):
    code, out, _ = run(capsys, "describe", "E7", "1", "--format", "json")
    d = build_datum("E7/ad")
    assert code == 0
    assert json.loads(out) == describe(d, pi1_class(d, [1])).to_json()
    assert json.loads(out)["weyl"]["coxeter_type"] == "F4"


def test_describe_lift(capsys):
    _, a, _ = run(capsys, "describe", "B4", "1", "--format", "json")
    _, b, _ = run(capsys, "describe", "B4", "1,0,0,0", "--lift", "--format", "json")
    assert a == b


def test_pi1(capsys):
    assert run(capsys, "pi1", "D4/ad")[1].strip() == "Z/2 x Z/2"
    assert run(capsys, "pi1", "E6")[1].strip() == "Z/3"
    assert run(capsys, "pi1", "E6", "--isogeny", "sc")[1].strip() == "0"
    assert run(capsys, "pi1", "GL3")[1].strip() == "Z"
    code, out, _ = run(capsys, "pi1", "D5/ad", "--format", "json")
    assert json.loads(out) == fundamental_group(build_datum("D5/ad")).to_json()


def test_slope(capsys):
    assert run(capsys, "slope", "GL3", "all", "1")[1].strip() == "(1/3, 1/3, 1/3)"
    code, out, _ = run(capsys, "slope", "GL4", "1,3", "1,1", "--format", "json")
    d = build_datum("GL4")
    assert json.loads(out) == slope_map(d, (0, 2), pi1_class(d, [1, 1], (0, 2))).to_json()
    assert run(capsys, "slope", "GL2", "none", "1,0", "--lift")[1].strip() == "(1, 0)"


def test_torsion(capsys):
    assert run(capsys, "torsion", "GL4", "2", "2")[1].strip() == "10"
    assert run(capsys, "torsion", "GL4", "1", "3")[1].strip() == "9"
    code, out, _ = run(capsys, "torsion", "GL4", "2", "2", "--format", "json")
    assert json.loads(out) == {"N": 2, "orbits": 10, "display": "E^2 / W(A1)"}


def test_table_requests(capsys):
    code, out, _ = run(capsys, "table", "B3/ad@1", "E6/ad@1")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 4
    assert lines[2] == "| B3/ad | 1 | A1 | BC2 | 2 | 8 |"
    assert lines[3] == "| E6/ad | 1 | A2xA2 | G2 | 2 | 12 |"


def test_table_empty(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0 and len(out.strip().splitlines()) == 2


def test_table_appendix_json_is_deterministic(capsys):
    _, a, _ = run(capsys, "table", "--appendix", "--format", "json", "--max-rank", "7")
    _, b, _ = run(capsys, "table", "--appendix", "--format", "json", "--max-rank", "7")
    assert a == b
    rows = json.loads(a)
    assert rows == json.loads(json.dumps(table_rows(appendix_requests(max_rank=7))))
    assert all(r["error"] is None for r in rows)


def test_table_text(capsys):
    code, out, _ = run(capsys, "table", "GL4@2", "--format", "text")
    assert out.splitlines()[1].split() == ["GL4", "2", "A1xA1", "A1", "2", "2"]


@pytest.mark.parametrize("argv", [
    ["describe", "Q3", "1"],
    ["describe", "B3", "1,1"],
    ["describe", "B3", "x"],
    ["slope", "GL3", "5", "1"],
    ["slope", "GL3", "1", "1", "--lift"],
    ["torsion", "GL3", "1", "0"],
    ["table", "B3"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("ellmoduli: error:")


def test_computation_errors_are_json(capsys):
    code, _, err = run(capsys, "torsion", "E6/ad", "1", "3", "--budget", "5")
    assert code == 1
    assert json.loads(err)["error"] == "BudgetExceededError"


def test_selfcheck(capsys):
    code, out, _ = run(capsys, "selfcheck")
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "ellmoduli", "pi1", "B3"], capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "Z/2"
