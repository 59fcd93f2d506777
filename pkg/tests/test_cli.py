from __future__ import annotations

import json

import networkx as nx
from networkx.algorithms.isomorphism import categorical_multiedge_match

from dot import read_dot
from weylwt.cli import FAILED, INVALID, OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def weight(overrides=None, default=None):
    data = {"overrides": {str(i): c for i, c in (overrides or {}).items()}}
    if default is not None:
        data["default"] = default
    return json.dumps(data)


def INT(v):
    return {"kind": "int", "value": v}


def NONINT(sign, symbol, offset=0):
    return {"kind": "nonint", "sign": sign, "symbol": symbol, "offset": offset}


def displayed_square() -> nx.MultiDiGraph:
    """The four-vertex quiver for E = {1,2}: eta toggles 1, xi toggles 2, both directions."""
    g = nx.MultiDiGraph()
    for a, b, name in [("0", "1", "eta"), ("2", "12", "eta"), ("0", "2", "xi"), ("1", "12", "xi")]:
        g.add_edge(a, b, label=name)
        g.add_edge(b, a, label=name)
    return g


def test_quiver_dot_matches_displayed_square(capsys):
    code, out, _ = run(capsys, "quiver", "{1,2}", "--format", "dot")
    assert code == OK
    g, relations = read_dot(out)
    assert g.number_of_nodes() == 4 and g.number_of_edges() == 8
    assert nx.is_isomorphic(g, displayed_square())
    renamed = g.copy()
    for _, _, d in renamed.edges(data=True):
        d["label"] = {"a1": "eta", "a2": "xi"}[d["label"]]
    assert nx.is_isomorphic(renamed, displayed_square(), edge_match=categorical_multiedge_match("label", None))
    assert relations == ["a1^2=0", "a2^2=0", "a1a2=a2a1"]


def test_quiver_json_and_empty(capsys):
    code, out, _ = run(capsys, "quiver", "{1}", "--format", "json")
    data = json.loads(out)
    assert code == OK and len(data["vertices"]) == 2 and len(data["arrows"]) == 2
    code, out, _ = run(capsys, "quiver", "{}")
    g, relations = read_dot(out)
    assert g.number_of_nodes() == 1 and g.number_of_edges() == 0 and relations == []


def test_classify(capsys):
    code, out, _ = run(capsys, "--json", "classify", weight({1: INT(-3)}))
    data = json.loads(out)
    assert code == OK
    assert data["canonical_form"]["J"] == [1]
    assert data["canonical_form"]["p_plus"]["overrides"] == {"1": INT(2)}


def test_iso(capsys):
    p = weight({1: NONINT(1, "s", 0)})
    q = weight({1: NONINT(1, "s", 1)})
    code, out, _ = run(capsys, "iso", p, q, "--json")
    assert code == OK and json.loads(out) == {"isomorphic": True}
    code, out, _ = run(capsys, "iso", weight({1: INT(0)}), weight({1: INT(-1)}))
    assert "not isomorphic" in out


def test_support_act_dual_localize(capsys):
    module = json.dumps({"label": "L", "base": json.loads(weight({1: INT(2)}))})
    code, out, _ = run(capsys, "--json", "support", module, weight({1: INT(0)}))
    assert code == OK and json.loads(out)["in_support"] is True
    code, out, _ = run(capsys, "--json", "support", module, weight({1: INT(-1)}))
    assert json.loads(out)["in_support"] is False
    element = json.dumps([{"shift": {"1": -1}, "a0poly": {"terms": [{"coeff": "1"}]}}])
    vector = json.dumps([{"weight": json.loads(weight({1: INT(2)})), "scalar": {"terms": [{"coeff": "1"}]}}])
    code, out, _ = run(capsys, "--json", "act", module, element, vector)
    (term,) = json.loads(out)["vector"]
    assert term["weight"]["overrides"] == {"1": INT(1)}
    assert term["scalar"]["terms"][0]["coeff"] == "2"
    code, out, _ = run(capsys, "--json", "dual", module)
    assert json.loads(out)["module"]["label"] == "Dual"
    code, out, _ = run(capsys, "--json", "localize", module, "{1}")
    assert code == OK and json.loads(out)["module"]["label"] == "Localized"


def test_koszul_resolve_with_figure(capsys, tmp_path):
    fig = tmp_path / "betti.png"
    code, out, _ = run(capsys, "koszul", "{1}", "--upto", "3", "--figure", str(fig))
    assert code == OK and "koszul: yes" in out
    assert fig.exists() and fig.stat().st_size > 0
    fig2 = tmp_path / "resolve.png"
    code, out, _ = run(capsys, "--json", "resolve", "{1,2}", "{1}", "--upto", "3", "--figure", str(fig2))
    data = json.loads(out)
    assert code == OK and data["totals"] == [1, 2, 3, 4] and data["matches_tensor_totalization"]
    assert data["figure"] == str(fig2) and fig2.exists()


def test_verify_block_and_loc(capsys):
    p = weight({1: INT(-2), 2: INT(3)}, default=NONINT(1, "w"))
    code, out, _ = run(capsys, "--json", "verify-block", p, "{1,2}")
    assert code == OK and json.loads(out)["passed"]
    code, out, _ = run(capsys, "verify-loc", weight({1: INT(2)}), "--radius", "2")
    assert code == OK and out.startswith("PASS")


def test_verification_failure_exit_code(capsys):
    # claim (a) genuinely fails when infinitely many coordinates are nonzero integers
    code, out, _ = run(capsys, "--json", "verify-loc", weight(default=INT(1)), "--radius", "1")
    data = json.loads(out)
    assert code == FAILED and not data["passed"]
    assert [r["passed"] for r in data["reports"]] == [False, True]


def test_invalid_input_reports_pointer(capsys):
    bad = json.dumps({"overrides": {"1": {"kind": "nonint", "sign": 1}}})
    code, out, _ = run(capsys, "--json", "classify", bad)
    assert code == INVALID
    assert json.loads(out)["pointer"] == "/overrides/1/symbol"
    code, _, err = run(capsys, "classify", "{not json")
    assert code == INVALID and "malformed JSON" in err
    code, out, _ = run(capsys, "--json", "verify-block", weight({1: NONINT(1, "s")}), "{1}")
    assert code == INVALID and "error" in json.loads(out)
    code, _, _ = run(capsys, "resolve", "{1}", "{2}")
    assert code == INVALID
    code, _, _ = run(capsys, "no-such-command")
    assert code == INVALID
