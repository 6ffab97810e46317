import json
import os
import subprocess
import sys

import pytest

from orart.cli import main

DATA = os.path.join(os.path.dirname(__file__), "data")


def run(*args):
    return main([a if not a.endswith(".json") or os.path.isabs(a) else os.path.join(DATA, a) for a in args])


def test_analyze_gamma1(capsys):
    assert run("analyze", "special-graph", "gamma1.json") == 0
    out = capsys.readouterr().out
    assert "chordal: True" in out and "Z^2 + Z/2" in out and "link at identity flag: True" in out


def test_exit_codes(capsys, tmp_path):
    assert run("gromov", "cube", "corner.json") == 1
    assert "['x', 'y', 'z']" in capsys.readouterr().out
    assert run("cat-test", "graph", "tree.json", "--cn", "--exhaustive") == 0
    assert run("cat-test", "graph", "c4.json", "--exhaustive") == 1
    assert run("validate", "invalid_loop.json") == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  oops")
    assert run("validate", str(bad)) == 2
    assert "line 2" in capsys.readouterr().err
    assert run("validate", str(tmp_path / "missing.json")) == 2
    assert run("cayley", "gamma1.json") == 2


def test_json_reports_are_deterministic(capsys):
    outs = []
    for _ in range(2):
        assert run("cone", "circle6.json", "--samples", "300", "--json") == 0
        outs.append(capsys.readouterr().out)
    assert outs[0] == outs[1]
    report = json.loads(outs[0])
    assert report["probe"]["verdict"] == "pass" and report["metric"]["metric"] is True


@pytest.mark.parametrize("args", [
    ("circumcenter", "points.json"),
    ("fixed-point", "d4.json"),
    ("cohomology", "gamma1.json"),
    ("graph-of-groups", "gamma1.json"),
    ("cayley", "klein.json", "--radius", "2"),
    ("validate", "circle6.json"),
])
def test_other_commands(args, capsys):
    assert run(*args, "--json") == 0
    json.loads(capsys.readouterr().out)


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "orart", "gromov", "cube", os.path.join(DATA, "corner.json")],
                       capture_output=True, text=True)
    assert r.returncode == 1 and "witness clique" in r.stdout
