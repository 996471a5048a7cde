import json
import re

import pytest

from latforge.budget import ENV_VAR, Budget, BudgetExceeded
from latforge.cli import main
from latforge.order import as_lattice, boolean_square, chain, diamond, lattice_from_json

S3_TABLE = {
    "kind": "table",
    "elements": ["e", "r", "r2", "s", "sr", "sr2"],
    "table": [[0, 1, 2, 3, 4, 5], [1, 2, 0, 5, 3, 4], [2, 0, 1, 4, 5, 3],
              [3, 4, 5, 0, 1, 2], [4, 5, 3, 2, 0, 1], [5, 3, 4, 1, 2, 0]],
}


@pytest.fixture
def files(tmp_path):
    def put(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return {
        "c2": put("c2.json", chain(2).to_json()),
        "c3": put("c3.json", chain(3).to_json()),
        "m3": put("m3.json", diamond(3).to_json()),
        "b2": put("b2.json", boolean_square().to_json()),
        "z2": put("z2.json", {"kind": "perm", "degree": 2, "generators": [[1, 0]]}),
        "s3": put("s3.json", S3_TABLE),
        "bad": put("bad.json", "{ not json"),
        "empty": put("empty.json", {"version": 1, "entries": [], "non_embeddability": []}),
        "dir": tmp_path,
    }


def test_build_and_verify(files, capsys):
    out = str(files["dir"] / "cert.json")
    assert main(["build", "--poset", files["c3"], "--group", files["z2"], "-o", out]) == 0
    cert = json.loads(open(out).read())
    assert cert["stats"]["princ_size"] == 3 and cert["stats"]["aut_order"] == 2
    assert main(["verify", "--lattice", out, "--poset", files["c3"], "--group", files["z2"], "-o", out + ".v"]) == 0


def test_build_malformed_json(files):
    assert main(["build", "--poset", files["bad"], "--group", files["z2"]]) == 2


def test_build_empty_catalog(files, capsys):
    assert main(["build", "--poset", files["c3"], "--group", files["z2"], "--catalog", files["empty"]]) == 1
    assert "catalog too small" in capsys.readouterr().err


def test_verify_m3(files, capsys):
    assert main(["verify", "--lattice", files["m3"], "--poset", files["c2"], "--group", files["s3"]]) == 0
    capsys.readouterr()
    assert main(["verify", "--lattice", files["m3"], "--poset", files["c3"], "--group", files["s3"]]) == 1
    assert "princ:" in capsys.readouterr().err
    assert main(["verify", "--lattice", str(files["dir"] / "missing.json"), "--poset", files["c3"], "--group", files["s3"]]) == 2


def test_princ_and_aut(files, capsys):
    assert main(["princ", "--lattice", files["c3"]]) == 0
    data = json.loads(capsys.readouterr().out)
    assert len(data["elements"]) == 4
    assert main(["aut", "--lattice", files["m3"]]) == 0
    assert json.loads(capsys.readouterr().out)["order"] == 6


def test_export_dot(files, capsys):
    assert main(["export-dot", "--lattice", files["b2"]]) == 0
    text = capsys.readouterr().out
    assert len(re.findall(" -> ", text)) == 4
    assert set(re.findall(r'"([^"]+)";', text)) == {"0", "a", "b", "1"}


def test_catalog_commands(files, capsys):
    out = str(files["dir"] / "cat.json")
    assert main(["catalog", "-m", "2", "--max-size", "9", "-o", out]) == 0
    assert main(["catalog", "--verify", out]) == 0
    assert main(["catalog", "-m", "2", "--max-size", "3"]) == 1
    assert "budget exhausted" in capsys.readouterr().err
    assert main(["catalog", "-m", "0"]) == 2


def test_usage_errors(files):
    assert main([]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["princ", "--lattice", files["z2"]]) == 2  # a group is not a lattice


def test_budget_exceeded(files, monkeypatch, capsys):
    monkeypatch.setenv(ENV_VAR, "1")
    from latforge.rigid_family import _level

    _level.cache_clear()
    try:
        assert main(["catalog", "-m", "5", "--max-size", "25"]) == 1
        assert "budget exceeded" in capsys.readouterr().err
    finally:
        _level.cache_clear()
    monkeypatch.setenv(ENV_VAR, "-5")
    assert main(["princ", "--lattice", files["c3"]]) == 2
    monkeypatch.delenv(ENV_VAR)
    assert main(["--budget-ms", "0", "princ", "--lattice", files["c3"]]) == 2


def test_budget_object():
    b = Budget("x", ms=0.001)
    with pytest.raises(BudgetExceeded):
        for _ in range(10 ** 6):
            b.tick()
    Budget("y", ms=None).tick()


def test_lattice_json_round_trip_through_cli(files, capsys):
    out = str(files["dir"] / "cert.json")
    main(["build", "--poset", files["c2"], "--group", files["z2"], "-o", out])
    L = lattice_from_json(json.loads(open(out).read())["lattice"])
    again = lattice_from_json(json.loads(json.dumps(L.to_json())))
    assert again.elements == L.elements and again.covers == L.covers
