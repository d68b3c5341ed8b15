import io
import json
import shutil
import subprocess
import sys

import pytest

from engelgraphs.catalog import gens_path
from engelgraphs.cli import DATA_ERROR, EMPTY, MISMATCH, NEGATIVE, OK, main


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), stream=buf)
    return code, buf.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


@pytest.mark.parametrize("spec,order", [("alt 5", 60), ("psl3 4", 20160), ("m11", 7920)])
def test_group_orders(spec, order):
    code, out = run("group", *spec.split())
    assert code == OK
    doc = records(out)[0]
    assert doc["order"] == order
    assert sum(doc["orders"].values()) == order


def test_min_n_and_exit_codes():
    code, out = run("engel", "min-n", "--group", "psl2", "11")
    assert code == OK and records(out)[0]["computed"] == 2
    code, out = run("engel", "min-n", "--n-cap", "4", "--group", "psl2", "8")
    assert code == NEGATIVE and records(out)[0]["match"] is True
    # Sym(5) carries no tabulated claim
    code, out = run("engel", "min-n", "--group", "sym", "5")
    assert code == OK and records(out)[0]["match"] is None


def test_check_and_depth():
    code, out = run("engel", "check", "2", "--group", "alt", "7")
    assert code == OK and records(out)[0]["outcome"] == "strongly connected"
    code, out = run("engel", "check", "2", "--group", "alt", "6")
    assert code == NEGATIVE
    code, out = run("engel", "depth", "(0 1 2 3 4)", "(0 1 2)", "--group", "alt", "5")
    assert code == OK and records(out)[0]["depth"] == "inf"
    code, out = run("engel", "depth", "(0 1 2)", "(0 1 2)", "--group", "alt", "5", "--format", "text")
    assert out.strip().endswith("= 1")


def test_graph_output_and_empty():
    code, out = run("engel", "graph", "2", "--group", "sym", "3")
    doc = json.loads(out)
    assert code == OK and doc["n"] == 2 and doc["arcs"]
    code, out = run("engel", "graph", "2", "--group", "sym", "3", "--format", "dot")
    assert out.startswith("digraph")
    code, _ = run("engel", "graph", "2", "--group", "file", "/nonexistent.gens")
    assert code == DATA_ERROR


def test_empty_vertex_set(tmp_path):
    p = tmp_path / "c4.gens"
    p.write_text("degree 4\n(0 1 2 3)\n")
    code, _ = run("engel", "min-n", "--group", "file", str(p))
    assert code == EMPTY


def test_usage_errors():
    assert run("engel", "check", "--group", "alt", "5")[0] == DATA_ERROR
    assert run("engel", "bogus")[0] == DATA_ERROR
    assert run("group", "nosuch", "3")[0] == DATA_ERROR
    assert run("engel", "min-n", "--n-cap", "1", "--group", "alt", "5")[0] == DATA_ERROR
    assert run("classalg", "crosscheck", "--group", "m11")[0] == DATA_ERROR
    assert run("--help")[0] == OK


def test_table1_small():
    code, out = run("table1", "--max-q", "13")
    recs = records(out)
    assert code == OK
    assert all(r["match"] is not False for r in recs)
    assert {r["group"] for r in recs} >= {"alt 6", "m10", "psl3 4", "psl2 13"}


def test_sporadic_reports_mismatch():
    # the literal corollary disagrees with the direct search on M11
    code, out = run("sporadic", "--group", "m11")
    recs = {r["method"]: r for r in records(out)}
    assert code == MISMATCH
    assert recs["corollary"]["match"] is False
    assert recs["component-types"]["match"] is True and recs["direct"]["match"] is True


def test_classalg_and_monster():
    code, out = run("classalg", "crosscheck")
    assert code == OK and [r["triples"] for r in records(out)] == [27, 125, 125, 216]
    code, out = run("classalg", "small")
    assert code == OK and all(r["ok"] for r in records(out))
    code, out = run("monster")
    assert code == OK and {r["name"] for r in records(out)} >= set("abcde")


def test_monster_bad_constants(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("i0=1\n")
    assert run("monster", "--constants", str(p))[0] == DATA_ERROR


def test_field():
    code, out = run("field", "2^3")
    doc = records(out)[0]
    assert code == OK and doc["engel_coefficient"] == 3 and doc["q"] == 8
    assert run("field", "6")[0] == DATA_ERROR


def test_json_is_byte_identical(tmp_path):
    args = ("engel", "min-n", "--group", "m10")
    first = run(*args)
    assert run(*args) == first
    cached = run(*args, "--cache-dir", str(tmp_path))
    again = run(*args, "--cache-dir", str(tmp_path))
    assert cached == again == first
    assert list(tmp_path.iterdir())
    assert run("sporadic", "--group", "psl2", "7", "--n", "3") == run("sporadic", "--group", "psl2", "7", "--n", "3")


def test_console_script():
    exe = shutil.which("engelgraphs")
    cmd = [exe] if exe else [sys.executable, "-m", "engelgraphs.cli"]
    res = subprocess.run(cmd + ["group", "alt", "5"], capture_output=True, text=True, timeout=120)
    assert res.returncode == 0
    assert json.loads(res.stdout)["order"] == 60


def test_documented_invocations():
    code, out = run("group", "file", str(gens_path("m11")))
    assert code == OK and records(out)[0]["order"] == 7920
    code, out = run("monster", "--constants", "data/monster.txt")
    assert code == OK
    code, out = run("classalg", "crosscheck", "--group", "alt5")
    assert code == OK and records(out) == [{"mismatches": [], "ok": True, "table": "alt5", "triples": 125}]
