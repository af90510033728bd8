import json
from importlib import resources

from shuffle_duality.cli import main

FIXTURE = str(resources.files("shuffle_duality") / "fixtures" / "nongood.json")


def test_pair_prints_value(capsys):
    assert main(["pair", "--n", "3", "--e", "e[1..2]@0^1", "--f", "f[1..2]@(0,0)"]) == 0
    assert capsys.readouterr().out.strip() == "-v"
    assert main(["pair", "--n", "3", "--e", "e[1..2]@0^1", "--f", "f[1..2]@(0,0)", "--words"]) == 0
    assert capsys.readouterr().out.strip() == "-v"


def test_star_writes_json(tmp_path):
    out = tmp_path / "x.json"
    assert main(["star", "--n", "2", "--a", "e[1..1]@0^1", "--b", "e[1..1]@0^1", "--out", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["degree"] == [2]


def test_good_on_fixture(capsys):
    assert main(["good", "--n", "3", "--element", FIXTURE]) == 1
    doc = json.loads(capsys.readouterr().out)
    assert doc["good"] is False and doc["certificate"]["plan"] == {"1-2": 1}
    assert main(["good", "--n", "3", "--element", "e[1..2]@1^2"]) == 0


def test_verify_duality_exit_codes(tmp_path, capsys):
    assert main(["verify", "duality", "--n", "2", "--max-degree", "3", "--modes", "-2..2", "--decomp", "zero"]) == 0
    out = tmp_path / "r.json"
    code = main(["verify", "duality", "--n", "3", "--max-degree", "2", "--modes", "-1..1",
                 "--inject", FIXTURE, "--out", str(out)])
    assert code == 1
    assert json.loads(out.read_text())["summary"]["violations"] >= 1


def test_gram_csv(capsys):
    assert main(["gram", "--n", "2", "--max-degree", "1", "--modes", "0..0", "--format", "csv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["degree,total_mode,row,col,entry,laurent", "(1),0,e[1..1]@0^1,f[1..1]@(0),1,1"]


def test_other_suites(capsys):
    for suite in ("relations", "key-spec", "oracle", "good", "dual-bases"):
        args = ["verify", suite, "--n", "2" if suite == "dual-bases" else "3", "--max-degree", "2",
                "--modes", "-1..1"]
        if suite == "dual-bases":
            args += ["--decomp", "slope"]
        assert main(args) == 0, suite
        capsys.readouterr()


def test_usage_errors(capsys):
    assert main(["bogus"]) == 2
    assert main(["pair", "--n", "3"]) == 2
    assert main(["verify", "duality", "--n", "2", "--modes", "3..1"]) == 2
    assert main(["verify", "duality", "--n", "2", "--decomp", "file:/does/not/exist"]) == 2
    assert main(["pair", "--n", "3", "--e", "nonsense", "--f", "f[1..1]@(0)"]) == 2
    assert main(["good", "--n", "2", "--element", FIXTURE]) == 2
