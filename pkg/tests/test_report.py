import json
from fractions import Fraction as Q

import pytest

from atinf.chart import Infinity
from atinf.cli import main
from atinf.report import CRITICAL, REGULAR, UNANALYZABLE, Options, analyze, emit_json, to_dict

from conftest import poly

_reports = {}


def report(text, **kw):
    key = (text, tuple(sorted(kw.items())))
    if key not in _reports:
        _reports[key] = analyze(poly(text), Options(**kw))
    return _reports[key]


def rows_at(r, label):
    (pr,) = [pr for pr in r.points if pr.point.label() == label]
    return {row.c: row for row in pr.rows}


def test_hyperbola_family_report():
    r = report("y*(x*y-1)", resolve=True, gtilde=True)
    assert list(r.sigma_fin) == [] and list(r.sigma_inf) == [Q(0)]
    rows = rows_at(r, "[1,0,0]")
    z = rows[Q(0)]
    assert (z.nu, z.g_tilde, z.label) == (1, 1, CRITICAL)
    assert z.condition_r.startswith("Fails")
    assert rows[Infinity].nu == 0 and rows[Infinity].label is None
    for row in rows_at(r, "[0,1,0]").values():
        assert row.nu == 0 and row.label in (REGULAR, None)
    assert all(c.passed for c in r.checks)
    assert (r.invariants.mu, r.invariants.lam, r.invariants.rank_h1) == (0, 1, 1)


def test_equisingular_report_at_infinity():
    r = report("x*(y^2-1)", gtilde=True)
    assert list(r.sigma_inf) == []
    inf = rows_at(r, "[1,0,0]")[Infinity]
    assert inf.nu == 1 and inf.g_tilde == 0 and inf.label is None
    assert inf.notes


def test_two_values_report():
    r = report("(x*y^2-y-1)^2+(y^2-1)^2")
    assert {Q(1), Q(2)} <= set(r.sigma_inf)
    rows = rows_at(r, "[1,0,0]")
    assert rows[Q(1)].nu == 2 and rows[Q(2)].nu == 1
    assert all(row.agree for row in rows.values() if row.nu_polar is not None)


def test_extra_values_become_rows():
    r = report("y*(x*y-1)", values=(Q(5, 7),))
    row = rows_at(r, "[1,0,0]")[Q(5, 7)]
    assert row.nu == 0 and row.label == REGULAR


def test_unanalyzable_rows_make_partial_report():
    r = report("(x*y-1)^2*y")
    labels = [row.label for row in r.rows]
    assert UNANALYZABLE in labels and r.partial


def test_json_contents_and_round_trip():
    text = emit_json(report("y*(x*y-1)"))
    d = json.loads(text)
    assert d["sigma_infinity"] == ["0"] and d["sigma_fin"] == []
    assert d["schema"] == 1
    assert json.dumps(d, sort_keys=True, indent=2) + "\n" == text
    row = d["points_at_infinity"][1]["verdicts"][0]
    assert row["c"] == {"num": "0", "den": "1"}
    assert d["points_at_infinity"][1]["verdicts"][-1]["c"] == "inf"


def test_json_is_deterministic():
    a = emit_json(analyze(poly("y*(x^2*y-1)"), Options()))
    b = emit_json(analyze(poly("y*(x^2*y-1)"), Options()))
    assert a == b


def test_threads_do_not_change_the_result(monkeypatch):
    one = emit_json(analyze(poly("y^5+x^2*y^3-y"), Options(threads=1)))
    two = emit_json(analyze(poly("y^5+x^2*y^3-y"), Options(threads=2)))
    assert one == two
    monkeypatch.setenv("ATINF_THREADS", "3")
    assert emit_json(analyze(poly("y^5+x^2*y^3-y"))) == one


def test_point_option():
    r = report("y*(x*y-1)", point=(Q(0), Q(1)))
    assert [pr.point.label() for pr in r.points] == ["[0,1,0]"]


# --- command line -------------------------------------------------------------


def test_cli_success(capsys):
    assert main(["analyze", "y*(x*y-1)"]) == 0
    out = capsys.readouterr().out
    assert "Sigma_inf = {0}" in out and "rank H1 = 1" in out


def test_cli_json_stdout(capsys):
    assert main(["analyze", "y*(x*y-1)", "--json", "-"]) == 0
    assert json.loads(capsys.readouterr().out)["sigma_infinity"] == ["0"]


def test_cli_parse_error(capsys):
    assert main(["analyze", "x*y+"]) == 2
    assert "byte 4" in capsys.readouterr().err
    assert main(["analyze", "7"]) == 2


def test_cli_partial(capsys):
    assert main(["analyze", "(x*y-1)^2*y"]) == 3
    assert main(["analyze", "x*(y^2-1)", "--point", "1:1"]) == 3


def test_cli_dot_and_json_files(tmp_path, capsys):
    dot, js = tmp_path / "g.dot", tmp_path / "r.json"
    assert main(["analyze", "y-(x*y-1)^2", "--dot", str(dot), "--json", str(js), "--values", "0"]) == 0
    text = dot.read_text()
    assert text.startswith("graph resolution {") and 'label="dicr:2"' in text
    d = json.loads(js.read_text())
    (pt,) = [pt for pt in d["points_at_infinity"] if pt["point"] == "[1,0,0]"]
    row = [v for v in pt["verdicts"] if v["c"] == {"num": "0", "den": "1"}][0]
    assert row["condition_R"] == "Fails(NonTransverseContact)"


def test_to_dict_has_global_invariants():
    d = to_dict(report("x^2 + y^2"))
    assert d["global"]["mu"] == 1 and d["global"]["lambda"] == 0 and not d["global"]["rankH1_lower_bound"]
    assert d["residual_classes"][0]["degree"] == 2
