import io
import json
import subprocess
import sys
from importlib import resources

import pytest

from sct import corpus
from sct.cli import load_program, run, sweep
from sct.engine import TERMINATING, UNKNOWN
from sct.errors import SctError

CORPUS = resources.files(corpus)


def path_of(name):
    return str(CORPUS / (name + ".ml"))


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", ["map", "last", "ack", "f1g1", "f2", "push_left",
                                  "comb_size", "h123"])
def test_terminating_files_exit_zero(name):
    code, out, _ = call(path_of(name))
    assert code == 0, out
    assert TERMINATING in out


def test_unknown_exits_one():
    code, out, _ = call(path_of("comb"))
    assert code == 1 and UNKNOWN in out


def test_mixed_files_exit_one():
    code, _, _ = call(path_of("map"), path_of("comb"))
    assert code == 1


def test_no_files_is_a_usage_error():
    code, _, err = call()
    assert code == 2 and "usage" in err


def test_missing_file(tmp_path):
    code, _, err = call(str(tmp_path / "nope.ml"))
    assert code == 2 and "error" in err


@pytest.mark.parametrize("text", [
    "val rec f x = f",              # partial application
    "val rec f x = g x",            # unknown name
    "val rec f x = match x with",   # truncated
    "val rec f x = .1 A[x]",        # projection of a constructor
])
def test_bad_programs_exit_two(tmp_path, text):
    p = tmp_path / "bad.ml"
    p.write_text(text)
    code, out, err = call(str(p))
    assert code == 2 and err and out == ""


@pytest.mark.parametrize("flags", [["--depth", "-1"], ["--bound", "0"], ["--depth", "x"]])
def test_bad_bounds_exit_two(flags):
    code, _, _ = call(path_of("map"), *flags)
    assert code == 2


def test_json_report():
    code, out, _ = call(path_of("push_left"), "--format", "json", "--show-graph")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "sct-report/1"
    (f,) = doc["files"]
    (g,) = f["groups"]
    assert g["name"] == "push_left" and g["verdict"] == TERMINATING
    assert g["bounds"] == {"depth": 2, "bound": 1}
    assert g["graph"] == ["push_left -> push_left : [x := Node(Node(p1 Node- x, "
                          "p1 Node- p2 Node- x), p2 Node- p2 Node- x)]"]
    assert all(l["witness"] is not None for l in g["coherent_loops"])


def test_flags_override_pragmas():
    code, out, _ = call(path_of("h123"), "--format", "json")
    assert json.loads(out)["files"][0]["groups"][0]["bounds"] == {"depth": 0, "bound": 3}
    code, out, _ = call(path_of("h123"), "--format", "json", "--bound", "2")
    g = json.loads(out)["files"][0]["groups"][0]
    assert g["bounds"] == {"depth": 0, "bound": 2} and g["verdict"] == UNKNOWN
    assert code == 1


def test_output_is_deterministic():
    first = call(path_of("perms"), "--show-paths")
    assert all(call(path_of("perms"), "--show-paths") == first for _ in range(3))


def test_show_graph_lists_arcs():
    _, out, _ = call(path_of("f1g1"), "--show-graph")
    assert "      f1 -> g1 : [x := A x]" in out
    assert "      g1 -> f1 : [x := A- A- x]" in out


def test_unknown_names_the_failing_loop():
    _, out, _ = call(path_of("comb"))
    assert "no decreasing parameter for comb -> comb" in out


def test_sweep_function():
    h = sweep(load_program(corpus.source("h123")))["h1/h2/h3"]
    assert [h[(0, b)] for b in (1, 2, 3)] == [UNKNOWN, UNKNOWN, TERMINATING]
    ack = sweep(load_program(corpus.source("ack")))["ack"]
    assert all(v == TERMINATING for (d, b), v in ack.items() if d >= 2)
    comb = sweep(load_program(corpus.source("comb")))["comb"]
    assert set(comb.values()) == {UNKNOWN}


def test_sweep_output():
    code, out, _ = call(path_of("h123"), "--sweep")
    assert code == 0
    lines = out.splitlines()
    assert lines[1] == "  h1/h2/h3"
    assert lines[2].split() == ["D\\B", "B=1", "B=2", "B=3"]
    assert lines[3].split() == ["D=0", UNKNOWN, UNKNOWN, TERMINATING]
    code, out, _ = call(path_of("h123"), "--sweep", "--format", "json")
    cells = json.loads(out)["files"][0]["groups"][0]["sweep"]
    assert {"depth": 0, "bound": 3, "verdict": TERMINATING} in cells


def test_load_program_rejects_invalid():
    with pytest.raises(SctError):
        load_program("val rec f x = match A[x] with (a, b) -> f a")


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "sct", path_of("map")],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "map [" in r.stdout
