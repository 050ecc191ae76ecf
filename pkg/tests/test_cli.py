import io
import json
import re

import pytest

from sepcharts.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_list_m4r_two_rows():
    code, out, _ = call("list", "--space", "m4r")
    assert code == 0
    rows = json.loads(out)["charts"]
    assert [r["id"] for r in rows] == ["R4_cyl", "R4_sph"]
    assert set(rows[0]) >= {"id", "space", "figure_ref", "ignorable", "class"}


def test_verify_m41_seed7_passes():
    code, out, err = call("verify", "--chart", "C_M41", "--seed", "7")
    assert code == 0, err
    data = json.loads(out)
    assert data["pass"]
    checks = data["reports"][0]["checks"]
    assert {"dual_path", "ignorability", "laplacian", "opset", "separation"} <= set(checks)


def test_verify_failing_chart_exits_1():
    code, out, _ = call("verify", "--chart", "E22_c", "--points", "5")
    assert code == 1
    data = json.loads(out)
    assert not data["reports"][0]["checks"]["laplacian"]["pass"]


def test_chains_m22_dot_has_14_graphs():
    code, out, _ = call("chains", "--space", "m22", "--format", "dot")
    assert code == 0
    assert len(re.findall(r"^digraph ", out, re.M)) == 14
    assert "trapezium" in out


def test_dot_uses_only_node_and_edge_statements():
    _, out, _ = call("chains", "--format", "dot")
    stmt = re.compile(r'^(digraph "[^"]+" \{|\}|  n\d+ \[.*\];|  n\d+ -> n\d+;)$')
    for line in out.splitlines():
        assert not line or stmt.match(line), line
    assert "subgraph" not in out


def test_semicircle_for_lorentz_orthogonal_group():
    _, out, _ = call("chains", "--space", "m31", "--format", "json")
    nodes = [n for c in json.loads(out)["chains"] for n in c["nodes"]]
    semis = [n for n in nodes if n.get("real_form") == "semicircle"]
    assert semis and all(n["shape"] == "ellipse" and n["style"] == "dashed" for n in semis)


@pytest.mark.parametrize("argv", [
    ("bogus",), ("list", "--space", "m5"), ("show", "--chart", "NOPE"), ("list", "--frobnicate"),
    ("solve", "--chart", "E22_a"), ("solve", "--chart", "C_M43", "--const", "E=abc"),
])
def test_usage_errors_exit_2(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert err


def test_json_is_deterministic():
    a = call("laplacian", "--chart", "C_M42", "--seed", "5")
    b = call("laplacian", "--chart", "C_M42", "--seed", "5")
    assert a == b
    c = call("laplacian", "--chart", "C_M42", "--seed", "6")
    assert c[1] != a[1]


def test_threads_do_not_change_output(monkeypatch):
    a = call("verify", "--space", "m4r", "--points", "5")
    monkeypatch.setenv("SEPCHARTS_THREADS", "4")
    b = call("verify", "--space", "m4r", "--points", "5")
    assert a == b and a[0] == 0


def test_export_masas(tmp_path):
    path = tmp_path / "cat.json"
    code, _, _ = call("export", "--space", "m4c", "--out", str(path))
    assert code == 0
    data = json.loads(path.read_text())
    assert [sp["space"] for sp in data["spaces"]] == ["m4c"]
    assert len(data["spaces"][0]["masas"]) == 7
    assert len(data["spaces"][0]["charts"]) == 10


def test_solve_with_given_constants():
    code, out, _ = call("solve", "--chart", "C_M43", "--const", "E=0.5+0.5j", "--const", "zeta=1",
                        "--const", "alpha1=0.3", "--const", "alpha2=-0.2")
    assert code == 0
    assert json.loads(out)["reports"][0]["pde_residual"] < 1e-10


def test_text_summary_on_stderr():
    code, out, err = call("list", "--space", "m4r", "--format", "text")
    assert "R4_cyl" in err
    json.loads(out)


def test_opsets_space_filter_omits_controls():
    code, out, _ = call("opsets", "--space", "m4r")
    data = json.loads(out)
    assert code == 0
    assert data["m47_rank"] is None
    assert [r["chart_id"] for r in data["reports"]] == ["R4_cyl", "R4_sph"]
