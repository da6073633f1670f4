import io
import json
import subprocess
import sys

import pytest

from flagsph.cli import run


def call(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def test_collapse_golden():
    assert call("collapse", "--d", "6", "--eps", "-1", "--partition", "3,1,1,1") == (0, "2,2,1,1\n")


def test_minimal_golden():
    code, text = call("minimal", "--group", "so", "--dim", "8")
    assert code == 0 and text.startswith("3 minimal classes")


def test_gamma_golden():
    code, text = call("gamma", "--spec", "so(9): spin(7) : F8+F1", "--index", "4")
    lines = text.splitlines()
    assert code == 0 and lines[0] == "rank 3"
    assert sorted(l.strip() for l in lines[1:]) == ["(pi4;0)", "(pi4;pi1)", "(pi4;pi3)"]


def test_richardson():
    assert call("richardson", "--group", "sp", "--dim", "6", "--composition", "1,4,1") == (0, "2,2,1,1\n")
    code, text = call("richardson", "--group", "so", "--dim", "8", "--composition", "4,4", "--sign", "+",
                      "--format", "json")
    assert code == 0 and json.loads(text)["index"] == [4]


def test_poset_dot():
    code, text = call("poset", "--group", "sp", "--dim", "4", "--format", "dot")
    assert code == 0 and text.startswith("digraph") and "->" in text


def test_spherical_and_branch():
    code, text = call("spherical", "--spec", "so(7): g2 : F7", "--index", "{1,2}", "--rank")
    assert code == 0 and text.startswith("Spherical") and "rank 4" in text
    code, text = call("branch", "--spec", "so(7): g2 : F7", "--lambda", "pi3", "--format", "json")
    assert code == 0 and {p["mu"] for p in json.loads(text)["parts"]} == {"pi1", "0"}


def test_json_is_byte_stable():
    args = ("verify", "--case", "table7.2-I{4}", "--seed", "3", "--format", "json")
    assert call(*args) == call(*args)
    args = ("spherical", "--spec", "so(9): spin(7) : F8+F1", "--index", "1,3", "--format", "json")
    assert call(*args)[1] == call(*args)[1]


def test_verify_params():
    code, text = call("verify", "--case", "table5.1-I{n}", "--params", "m=2")
    assert code == 0 and "m=2" in text


@pytest.mark.parametrize("argv", [
    ("collapse", "--d", "6", "--eps", "2", "--partition", "3,1,1,1"),
    ("collapse", "--d", "5", "--eps", "-1", "--partition", "3,1,1,1"),
    ("collapse", "--d", "6"),
    ("frobnicate",),
    ("minimal", "--group", "sp", "--dim", "5"),
    ("spherical", "--spec", "so(7): g2 : F9", "--index", "1"),
    ("verify", "--case", "no-such-case"),
    ("verify", "--case", "table5.1-I{n}", "--params", "m"),
    ("verify", "--case", "table5.1-I{n}", "--params", "m=99"),
    ("minimal", "--group", "so", "--dim", "8", "--unknown"),
])
def test_usage_errors(argv):
    assert call(*argv)[0] == 2


def test_gamma_on_nonspherical_fails():
    assert call("gamma", "--spec", "so(7): g2 : F7", "--index", "1,2,3")[0] == 1


def test_no_color_and_entry_point():
    env = {"NO_COLOR": "1", "PATH": "/usr/bin:/bin"}
    p = subprocess.run([sys.executable, "-m", "flagsph.cli", "verify", "--case", "table8.8-I{4}"],
                       capture_output=True, text=True, env=env)
    assert p.returncode == 0 and "\033[" not in p.stdout and "1/1 passed" in p.stdout
