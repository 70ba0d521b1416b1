import json
import subprocess
import sys

import pytest

from chowgw.cli import main, parse_range


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_betti_json(capsys):
    code, out, _ = run(capsys, "betti", "--n", "2", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["n"] == 2 and data["b4"] == 3
    assert data["betti"] == [1, 0, 2, 0, 3, 0, 2, 0, 1]
    assert '"b4": 3' in out


def test_betti_text_and_range(capsys):
    code, out, _ = run(capsys, "betti", "--n-range", "1..3")
    assert code == 0
    block = out.split("\n\n")[2].splitlines()
    assert block[0].startswith("n = 3")
    assert block[5].split() == ["b4", "6"]
    assert len({len(line) for line in block[1:]}) == 1
    code, out, _ = run(capsys, "betti", "--n-range", "2..3", "--format", "json")
    assert [d["n"] for d in json.loads(out)] == [2, 3]


def test_invariants_text(capsys):
    code, out, _ = run(capsys, "invariants", "--d", "1", "--format", "text")
    assert code == 0
    lines = out.splitlines()
    assert "Xi2: 12" in lines
    assert "Xi5: 0 [vanishing-by-localization]" in lines
    assert "Xi3: 0" in lines


def test_invariants_json(capsys):
    code, out, _ = run(capsys, "invariants", "--n", "7", "--d", "2", "--format", "json")
    data = json.loads(out)
    assert data["n"] == 7 and data["d"] == 2
    assert [r["value"] for r in data["invariants"]] == ["-3/2", "3", "0", "-3/2", "0", "0"]


def test_det_range(capsys):
    code, out, _ = run(capsys, "det", "--n-range", "3..10")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 8 and all(not line.endswith("= 0") for line in lines)
    assert lines[0] == "det(n = 3) = -3072"
    code, out, _ = run(capsys, "det", "--format", "json")
    assert json.loads(out)["det"] == "-256n^5+1536n^4-3328n^3+3072n^2-1024n"


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--format", "json")
    data = json.loads(out)
    assert data["n"] == "symbolic" and data["entries"][3][2] == "2n^3-8n^2+9n-1"
    code, out, _ = run(capsys, "table", "--n", "3")
    assert code == 0 and out.splitlines()[0] == "n = 3"


@pytest.mark.parametrize("argv", [
    ["betti", "--n", "0"],
    ["table", "--n", "2"],
    ["invariants", "--n", "2"],
    ["det", "--n", "1"],
    ["invariants", "--d", "0"],
    ["betti"],
    ["betti", "--n", "2", "--n-range", "2..3"],
    ["eval"],
    ["eval", "--script", "corpus:missing"],
    ["eval", "--script", "/nonexistent/file.chow"],
])
def test_usage_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and "error" in err


@pytest.mark.parametrize("argv", [["betti", "--bogus"], ["frobnicate"],
                                  ["det", "--n-range", "5..3"], ["betti", "--format", "xml"]])
def test_argparse_errors(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2


def test_eval_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "eval", "--script", "corpus:pairing")
    assert code == 0 and "pairing() = [[0, 1], [1, 0]]" in out
    bad = tmp_path / "bad.chow"
    bad.write_text("assert 1 == 2;\n")
    code, out, _ = run(capsys, "eval", "--script", str(bad))
    assert code == 1 and "FAILED" in out
    broken = tmp_path / "broken.chow"
    broken.write_text("ring {\n")
    code, out, err = run(capsys, "eval", str(broken))
    assert code == 2 and "1:6" in err
    code, out, _ = run(capsys, "eval", "--script", "corpus:invariants", "--format", "json")
    assert json.loads(out)[0]["value"]["provenance"] == "computed"


def test_parse_range():
    assert parse_range("3..5") == [3, 4, 5]


@pytest.mark.parametrize("argv", [
    ["betti", "--n", "3", "--format", "json"],
    ["table"],
    ["invariants", "--n-range", "3..4", "--d", "2"],
    ["eval", "--script", "corpus:xi4_table"],
])
def test_stdout_is_byte_identical(argv):
    cmd = [sys.executable, "-m", "chowgw"] + argv
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a
