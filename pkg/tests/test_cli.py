import io
import json
import subprocess
import sys

import pytest

from zonotopal.cli import render, run, to_jsonable
from fractions import Fraction


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = call(*argv)
    assert code == 0, err
    return json.loads(out)


def test_dual_dim_family():
    for k in (1, 2, 3):
        rep = report("dual-dim", "--k", str(k))
        assert rep["dimension"] == 2 * k + 1
        assert rep["differential_dimension"] == 3


def test_partition_point():
    assert report("partition", "2,1", "--named", "X3")["value"] == 2
    rep = report("partition", "--point=-1,2", "--named", "X3", "--method", "bruteforce")
    assert rep["value"] == 0


def test_inline_input_matches_named():
    inline = '{"d": 2, "vectors": [[1, 0], [0, 1], [1, 1]]}'
    a = report("analyze", "--inline", inline)
    b = report("analyze", "--named", "X3")
    assert a == b
    assert a["zonotope_volume"] == 3 and a["bases"] == 3


def test_file_input(tmp_path):
    path = tmp_path / "x.json"
    path.write_text('{"d": 1, "vectors": [[2], [1]]}')
    rep = report("cells", "--input", str(path))
    assert rep["count"] == 1


def test_rationals_rendered_as_strings():
    inline = '{"d": 2, "vectors": [[2, 0], [0, 1]]}'
    assert report("spline", "1,1", "--inline", inline, "--normalization", "lebesgue")["value"] == "1/2"
    assert report("spline", "1,1", "--inline", inline)["value"] == 1


def test_rendering_rules():
    assert to_jsonable(Fraction(3, 4)) == "3/4"
    assert to_jsonable(Fraction(6, 3)) == 2
    assert to_jsonable(2 ** 60) == str(2 ** 60)
    assert to_jsonable(2 ** 53) == 2 ** 53
    assert to_jsonable(float("inf")) == "inf"
    assert to_jsonable(frozenset({3, 1})) == [1, 3]
    assert json.loads(render({"b": 1, "a": [Fraction(1, 3)]})) == {"a": ["1/3"], "b": 1}


def test_flags_embedded():
    rep = report("qpoly", "--named", "X1", "--box", "6")
    assert rep["flags"] == {"term_order": "grevlex", "normalization": "kernel", "truncation": 4,
                            "box": 6, "agreement_region": "open", "arithmetic": "exact"}
    assert rep["command"] == "qpoly"


def test_output_is_byte_identical():
    argv = ("ktheory", "--named", "X3", "--all-orderings")
    assert call(*argv)[1] == call(*argv)[1]
    assert call("cells", "--named", "random:2")[1] == call("cells", "--named", "random:2")[1]


@pytest.mark.parametrize("argv", [
    ("analyze", "--inline", "{not json"),
    ("analyze", "--inline", '{"d": 2}'),
    ("analyze", "--inline", '{"d": 2, "vectors": [[1, "a"]]}'),
    ("analyze",),
    ("frobnicate", "--named", "X3"),
    ("partition", "--named", "X3"),
    ("partition", "1,2,3", "--named", "X3"),
    ("analyze", "--named", "nope"),
    ("analyze", "--named", "X3", "--k", "2"),
    ("spline", "1,1", "--named", "X3", "--normalization", "other"),
    ("analyze", "--input", "/nonexistent/file.json"),
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 1 and out == ""
    assert json.loads(err)["exit_code"] == 1


@pytest.mark.parametrize("inline", [
    '{"d": 2, "vectors": [[1, 0], [0, 0]]}',        # zero vector
    '{"d": 2, "vectors": [[1, 1], [2, 2]]}',        # does not span
    '{"d": 2, "vectors": [[1, 0], [1, 1, 1]]}',     # wrong length
])
def test_precondition_errors(inline):
    code, out, err = call("analyze", "--inline", inline)
    assert code == 2 and out == ""
    assert json.loads(err)["exit_code"] == 2


def test_not_pointed_is_precondition():
    inline = '{"d": 1, "vectors": [[1], [-1]]}'
    code, _, err = call("partition", "0", "--inline", inline)
    assert code == 2
    assert json.loads(err)["error"] == "NotPointed"


def test_ext_check_on_list_and_random():
    rep = report("ext-check", "--named", "X3")
    assert rep["all_pass"]
    rep = report("ext-check", "--random", "3", "--seed", "1")
    assert rep["all_pass"] and len(rep["modules"]) == 3


def test_ktheory_report():
    rep = report("ktheory", "--named", "X3")
    assert rep["presentation_dimension"] == 3
    assert rep["rank_decomposition"]["layers"] == [1, 3, 3]


def test_verify_list_passes():
    rep = report("verify", "--named", "X3")
    assert rep["checks"] and all(c["status"] == "PASS" for c in rep["checks"])


def test_verify_criteria_subset():
    rep = report("verify", "--criteria", "2", "6")
    assert [r["criterion"] for r in rep["criteria"]] == [2, 6]
    assert rep["all_pass"]


def test_verify_unknown_criterion():
    code, _, _ = call("verify", "--criteria", "99")
    assert code == 1


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "zonotopal", "partition", "2,1", "--named", "X3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 2
    proc = subprocess.run([sys.executable, "-m", "zonotopal", "analyze", "--inline", "[]"],
                          capture_output=True, text=True)
    assert proc.returncode == 1 and proc.stdout == ""
