import json
import os
import xml.dom.minidom

import pytest

from siltgeo import cli

DATA = os.path.join(os.path.dirname(cli.__file__), "data")


def data(name):
    return os.path.join(DATA, name)


@pytest.fixture(scope="module")
def verify_report(tmp_path_factory):
    out = tmp_path_factory.mktemp("verify") / "report.json"
    code = cli.run(["verify-paper", "--out", str(out)])
    return code, out.read_text()


def test_verify_passes(verify_report):
    code, text = verify_report
    assert code == 0
    rep = json.loads(text)
    assert rep["pass"] and [c["name"] for c in rep["checks"]] == ["a2_pentagon", "a4_interval"]


def test_verify_is_deterministic_across_threads(verify_report, tmp_path):
    out = tmp_path / "again.json"
    assert cli.run(["verify-paper", "--threads", "2", "--out", str(out)]) == 0
    assert out.read_text() == verify_report[1]


def test_verify_reports_a_diff(tmp_path, capsys):
    golden = tmp_path / "golden"
    golden.mkdir()
    for name in ("a2_pentagon.json", "a4_interval.json"):
        (golden / name).write_text(open(data(name)).read())
    bad = json.loads((golden / "a2_pentagon.json").read_text())
    bad["silting_count"] = 6
    (golden / "a2_pentagon.json").write_text(json.dumps(bad))
    code = cli.run(["verify-paper", "--golden", str(golden), "--out", str(tmp_path / "r.json")])
    assert code == 1
    assert "silting_count" in capsys.readouterr().err


def test_enumerate_a2(tmp_path):
    out, dot, svg = tmp_path / "r.json", tmp_path / "q.dot", tmp_path / "f.svg"
    code = cli.run([data("a2.toml"), "enumerate", "--out", str(out), "--dot", str(dot), "--svg", str(svg)])
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["count"] == 5 and rep["complete"]
    assert dot.read_text().count("->") == 5
    assert xml.dom.minidom.parseString(svg.read_text()).documentElement.tagName == "svg"


def test_enumerate_output_is_byte_identical(tmp_path):
    texts = []
    for k in range(2):
        out = tmp_path / ("r%d.json" % k)
        assert cli.run([data("a4.toml"), "enumerate", "--out", str(out)]) == 0
        texts.append(out.read_text())
    assert texts[0] == texts[1]
    assert json.loads(texts[0])["count"] == 42


def test_interval_a4(tmp_path):
    out, svg = tmp_path / "r.json", tmp_path / "d.svg"
    code = cli.run([data("a4.toml"), "interval", "--U", data("a4_u.toml"), "--out", str(out),
                    "--svg", str(svg), "--plane", "1,1,1,0=1"])
    assert code == 0
    rep = json.loads(out.read_text())
    assert len(rep["facets"]) == 5
    xml.dom.minidom.parseString(svg.read_text())


def test_bad_toml_is_an_input_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("vertices = [1, 2\n")
    assert cli.run([str(bad), "enumerate"]) == 2


def test_non_presilting_u_is_an_input_error(tmp_path, capsys):
    # P(1) and P(2)[1] over 1 -> 2 have a nonzero degree-one map
    u = tmp_path / "u.toml"
    u.write_text("[[summand]]\nminus = []\nzero = [1]\ndifferential = []\n"
                 "[[summand]]\nminus = [2]\nzero = []\ndifferential = []\n")
    assert cli.run([data("a2.toml"), "interval", "--U", str(u)]) == 2
    assert "self-extensions" in capsys.readouterr().err


def test_cap_is_a_capability_error(tmp_path):
    assert cli.run([data("a4.toml"), "interval", "--cap", "3", "--out", str(tmp_path / "r.json")]) == 3


def test_missing_algebra_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        cli.run(["enumerate"])
    assert exc.value.code == 2


def test_bad_thread_count():
    assert cli.run(["verify-paper", "--threads", "0"]) == 2
