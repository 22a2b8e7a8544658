import json

import pytest

import serialization
from fixtures import s3_graph, s3_layout
from graph_core import same_edges
from main import ERROR, FALSE, OK, main


@pytest.fixture(autouse=True)
def workdir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    return tmp_path


@pytest.fixture
def s3_file(workdir):
    path = str(workdir / "s3.json")
    serialization.save(path, s3_layout())
    return path


def test_visibility_writes_graph(s3_file, workdir):
    out = str(workdir / "g.json")
    assert main(["visibility", s3_file, "--k", "1", "-o", out]) == OK
    assert same_edges(serialization.load(out, expect="graph"), s3_graph())


def test_realize(s3_file):
    assert main(["realize", s3_file, "S3"]) == OK
    assert main(["realize", s3_file, "S3", "--k", "0"]) == FALSE
    assert main(["realize", s3_file, "K6"]) == FALSE
    assert main(["realize", s3_file, "K5"]) == ERROR


def test_audit_exit_codes(capsys):
    assert main(["audit", "K7", "--class", "oneplanar"]) == FALSE
    assert main(["audit", "K8", "--class", "web1"]) == OK
    capsys.readouterr()
    assert main(["--json", "audit", "K7", "--class", "oneplanar"]) == FALSE
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] == "bound-exceeded"
    assert report["bound"] == "20"


def test_oracle_on_k3():
    assert main(["oracle", "K3", "--mode", "hampath-planar"]) == OK
    assert main(["oracle", "K9", "--mode", "hampath-planar"]) == ERROR


def test_pipelines(s3_file, workdir):
    assert main(["oneplanar", "K5", "-o", str(workdir / "k5.json")]) == OK
    assert len(serialization.load(str(workdir / "k5.json"), expect="layout")) == 5
    assert main(["quasiplanar", s3_file, "-o", str(workdir / "d.json")]) == OK
    assert main(["flowsquare", "--random", "12", "--seed", "3"]) == OK
    assert main(["classify", "--n", "8"]) == OK
    assert main(["classify", s3_file]) == OK


def test_grid_below_bound():
    assert main(["grid", "--m", "6"]) == FALSE


def test_render(s3_file, workdir):
    out = workdir / "s3.svg"
    assert main(["render", s3_file, "-o", str(out)]) == OK
    assert out.read_text().count("<path") == 6
    graph = str(workdir / "g.json")
    serialization.save(graph, s3_graph())
    assert main(["render", graph, "-o", str(out)]) == ERROR


def test_missing_input_is_an_error(workdir):
    assert main(["visibility", str(workdir / "nope.json")]) == ERROR
