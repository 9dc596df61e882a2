import io
import json
import subprocess
import sys

import pytest

from tricomplex.cli import main
from tricomplex.complexity import BoundsReport
from tricomplex.triangulate import GluingTable, build_lens


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_lens_json(capsys):
    code, out, _ = run(capsys, "lens", "7", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert (data["family"], data["proxy"], data["upper"]) == ("Lens", "5", "5")
    assert BoundsReport.from_dict(data).to_dict() == data


def test_tlen_text(capsys):
    code, out, _ = run(capsys, "tlen", "[[2,1],[1,1]]")
    assert code == 0
    assert out.strip() == "translation length: 2 (word=2, axis=2, cf=2)"


def test_tlen_accepts_words(capsys):
    code, out, _ = run(capsys, "tlen", "T'STSTS", "--json")
    assert code == 0
    assert json.loads(out) == {"word": "3", "axis_oracle": "3", "fixed_point_cf": "3", "agree": True}


def test_build_lens_then_validate(capsys, monkeypatch):
    code, table, _ = run(capsys, "build-lens", "5", "2")
    assert code == 0
    code, out, _ = run(capsys, "validate", stdin=table, monkeypatch=monkeypatch)
    assert code == 0
    assert out.splitlines()[0] == "closed orientable, 1 tetrahedron, H1=Z/5"


def test_validate_reads_json_tables(capsys, monkeypatch, tmp_path):
    path = tmp_path / "l72.json"
    path.write_text(build_lens(7, 2).to_json())
    code, out, _ = run(capsys, "validate", str(path), "--json")
    assert code == 0
    data = json.loads(out)
    assert data["H1"] == "Z/7" and data["closed"] is True and data["euler"] == "0"


def test_build_sol_round_trips_through_json(capsys):
    code, out, _ = run(capsys, "build-sol", "[[3,1],[2,1]]", "--json")
    assert code == 0
    g = GluingTable.from_json(out)
    assert len(g) == 9


def test_homology_command(capsys, monkeypatch):
    table = build_lens(5, 2).to_text()
    code, out, _ = run(capsys, "homology", stdin=table, monkeypatch=monkeypatch)
    assert code == 0
    assert out.strip() == "H0=Z H1=Z/5 H2=0 H3=Z"


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["cf", "7/2"], "7/2 = [3, 2]"),
        (["cf", "-3/2"], "-3/2 = [-2, 2]"),
        (["product", "{0,1,inf}", "{1,3/2,2}", "--json"], '"proxy": "2"'),
        (["platonic", "-1", "1/2", "1/3", "1/5"], "proxy: 1/30"),
        (["sol", "[[2,1],[1,1]]", "--method", "cf"], "disagreement"),
        (["surd", "1", "5", "2"], "[(1, 1)]"),
        (["word", "[[3,1],[2,1]]"], "T'STSTS"),
    ],
)
def test_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert expected in out


@pytest.mark.parametrize(
    "argv",
    [["word", "[[2,1],[1,1"], ["cf", "7/"], ["product", "{0,1}", "{0,1,inf}"], ["tlen", "STX"], ["nope"], ["lens", "seven", "2"]],
)
def test_malformed_input_exits_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert err


def test_parse_errors_report_position(capsys):
    code, _, err = run(capsys, "word", "[[2,1],[1,x]]")
    assert code == 2
    assert "at position 10" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["lens", "6", "2"],
        ["platonic", "-1", "1/2", "1/3", "1/6"],
        ["sol", "[[1,1],[0,1]]"],
        ["build-sol", "[[2,0],[0,1]]"],
        ["surd", "1", "4", "2"],
    ],
)
def test_precondition_failures_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error:")


def test_zero_euler_message(capsys):
    _, _, err = run(capsys, "platonic", "-1", "1/2", "1/3", "1/6")
    assert "not realizable as an elliptic manifold" in err


def test_output_is_deterministic(capsys):
    first = run(capsys, "build-sol", "[[5,2],[2,1]]")[1]
    second = run(capsys, "build-sol", "[[5,2],[2,1]]")[1]
    assert first == second


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "tricomplex", "lens", "7", "2"], capture_output=True, text=True)
    assert res.returncode == 0
    assert "proxy: 5" in res.stdout


def _numbers(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return []
    if isinstance(obj, (int, float)):
        return [obj]
    items = obj.values() if isinstance(obj, dict) else obj
    return [x for v in items for x in _numbers(v)]


@pytest.mark.parametrize(
    "argv",
    [
        ["cf", "13/5"],
        ["surd", "0", "7"],
        ["word", "[[3,1],[2,1]]"],
        ["tlen", "[[3,1],[2,1]]"],
        ["lens", "13", "5"],
        ["prism", "7", "3"],
        ["platonic", "1", "1/2", "1/3", "1/4"],
        ["sol", "[[3,1],[2,1]]", "--method", "cf"],
        ["product", "{0,1,inf}", "{1,3/2,2}"],
        ["build-lens", "7", "2"],
        ["build-sol", "[[2,1],[1,1]]"],
        ["build-product", "{0,1,inf}", "{1,3/2,2}"],
    ],
)
def test_json_numbers_are_decimal_strings(capsys, argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    assert _numbers(json.loads(out)) == []
