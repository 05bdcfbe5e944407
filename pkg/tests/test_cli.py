import json
from importlib import resources

import pytest

from repdim import cli
from repdim.config import ConfigError, load_config


def data_path(name):
    return str(resources.files("repdim") / "data" / name)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_certify_kronecker(capsys, tmp_path):
    out_file = tmp_path / "cert.json"
    code, out, _ = run(capsys, "certify", data_path("kronecker_p1.json"), "--output", str(out_file))
    assert code == 0
    cert = json.loads(out)
    assert cert["verdict"] == "repdim = 3"
    assert out_file.read_text() == out
    assert cert["config"]["M"]["parts"] == ["P(1)"]


def test_certify_is_deterministic(capsys):
    _, a, _ = run(capsys, "certify", data_path("a2_p1.json"))
    _, b, _ = run(capsys, "certify", data_path("a2_p1.json"))
    assert a == b and json.loads(a)["verdict"] == "repdim ≤ 2"


def test_text_format(capsys):
    code, out, _ = run(capsys, "certify", data_path("kronecker_regular.json"), "--format", "text")
    assert code == 0 and out.startswith("verdict: repdim ≤ 3 (cited")


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", data_path("kronecker_p1.json"), "--format", "text")
    assert code == 0
    rows = [l for l in out.splitlines() if not l.startswith("warning")]
    assert len(rows) == 14 and "incomplete" in out


def test_approx(capsys):
    code, out, _ = run(capsys, "approx", data_path("kronecker_p1.json"), "--module", "R(1:2)", "--format", "json")
    assert code == 0
    rec = json.loads(out)
    assert rec["kernel"] == ["P(2)"] and rec["pass"]


def test_parse_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"quiver": {"vertices": ["1"],}')
    code, _, err = run(capsys, "certify", str(bad))
    assert code == 1 and "line 1" in err
    assert run(capsys, "certify", str(tmp_path / "missing.json"))[0] == 1
    assert run(capsys, "frobnicate")[0] == 1


def test_config_validation():
    base = {"quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"}]},
            "M": "P(1)"}
    cfg = load_config(json.dumps(base))
    assert cfg.bound == 3 and cfg.field.p == 5
    for mutate, where in [
        (lambda d: d.update(M="Q(1)"), "M.parts[0]"),
        (lambda d: d.update(catalog={"bound": -1}), "catalog.bound"),
        (lambda d: d.update(options={"format": "xml"}), "options.format"),
        (lambda d: d["quiver"].update(field={"p": 6}), "quiver.field.p"),
        (lambda d: d.update(M={"dim": {"1": 1, "2": 1}, "matrices": {"a": [[1.5]]}}), "M.parts[0].matrices.a"),
    ]:
        d = json.loads(json.dumps(base))
        mutate(d)
        with pytest.raises(ConfigError) as exc:
            load_config(json.dumps(d))
        assert exc.value.where == where


def test_non_split_field_exit_code(capsys, tmp_path):
    cfg = {"quiver": {"vertices": ["1", "2"], "arrows": [{"name": "a", "source": "1", "target": "2"},
                                                        {"name": "b", "source": "1", "target": "2"}],
                      "field": {"p": 2}},
           "M": {"dim": {"1": 2, "2": 2}, "matrices": {"a": [[1, 0], [0, 1]], "b": [[0, 1], [1, 1]]}}}
    path = tmp_path / "f2.json"
    path.write_text(json.dumps(cfg))
    code, _, err = run(capsys, "certify", str(path))
    assert code == 2 and err
