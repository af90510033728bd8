import json
from importlib import resources

import pytest

from shuffle_duality.harness import (GramReport, WindowConfig, degrees_up_to, enumerate_e_monomials,
                                     enumerate_f_monomials, preceq_key, slope_decomposition,
                                     verify_dual_bases, verify_duality, verify_good_criterion,
                                     verify_key_specialization, verify_oracle)
from shuffle_duality.shuffle import EPBWDMonomial, Root, ShuffleElement, gen_e


def nongood():
    ref = resources.files("shuffle_duality") / "fixtures" / "nongood.json"
    return ShuffleElement.from_json(json.loads(ref.read_text()))


def strs(xs):
    return [str(x) for x in xs]


def test_window_validation():
    with pytest.raises(ValueError):
        WindowConfig(2, 1, 2, 1)
    with pytest.raises(ValueError):
        WindowConfig(2, 0, 0, 0)
    with pytest.raises(ValueError):
        WindowConfig(2, 1, 0, 0, "spiral")


def test_slope_decomposition():
    assert slope_decomposition(Root(1, 2), -1) == (-1, 0)
    assert slope_decomposition(Root(1, 3), 4) == (1, 1, 2)
    assert slope_decomposition(Root(2, 2), 5) == (5,)
    for r in range(-7, 8):
        assert sum(slope_decomposition(Root(1, 3), r)) == r


def test_preceq_order():
    # slope first, then height, then right end
    assert preceq_key(Root(1, 1), 1) < preceq_key(Root(1, 2), 3)
    assert preceq_key(Root(1, 1), 1) < preceq_key(Root(1, 2), 2)
    assert preceq_key(Root(1, 1), 0) < preceq_key(Root(2, 2), 0)


def test_enumerate_e_monomials():
    assert strs(enumerate_e_monomials(WindowConfig(2, 1, -2, 2), (1,), 0)) == ["e[1..1]@0^1"]
    got = set(strs(enumerate_e_monomials(WindowConfig(2, 2, -1, 1), (2,), 0)))
    assert got == {"e[1..1]@-1^1*e[1..1]@1^1", "e[1..1]@0^2"}
    got = set(strs(enumerate_e_monomials(WindowConfig(3, 2, -1, 1), (1, 1), 0)))
    assert got == {"e[1..1]@-1^1*e[2..2]@1^1", "e[1..1]@0^1*e[2..2]@0^1",
                   "e[1..1]@1^1*e[2..2]@-1^1", "e[1..2]@0^1"}


def test_enumerate_f_monomials():
    assert strs(enumerate_f_monomials(WindowConfig(2, 1, -2, 2), (1,), 0)) == ["f[1..1]@(0)"]
    zero = strs(enumerate_f_monomials(WindowConfig(3, 2, -2, 2), (1, 1), -1))
    assert "f[1..2]@(-1,0)" in zero
    slope = strs(enumerate_f_monomials(WindowConfig(3, 2, -2, 2, "slope"), (1, 1), -1))
    assert "f[1..2]@(-1,0)" in slope
    slope = strs(enumerate_f_monomials(WindowConfig(3, 2, -2, 2, "slope"), (1, 1), 1))
    assert "f[1..2]@(0,1)" in slope


def test_file_strategy(tmp_path):
    table = {"1-2": {str(r): [0, r] for r in range(-1, 2)}}
    path = tmp_path / "decomp.json"
    path.write_text(json.dumps(table))
    cfg = WindowConfig.from_decomp(3, 2, -1, 1, f"file:{path}")
    assert "f[1..2]@(0,1)" in strs(enumerate_f_monomials(cfg, (1, 1), 1))
    small = WindowConfig.from_decomp(3, 2, -2, 2, f"file:{path}")
    with pytest.raises(KeyError):
        enumerate_f_monomials(small, (1, 1))


def test_degrees_up_to():
    assert degrees_up_to(3, 2) == [(0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_duality_small_window_passes():
    rep = verify_duality(WindowConfig(2, 2, -1, 1))
    assert rep.passed and rep.checked > 0
    doc = json.loads(rep.dumps())
    assert doc["summary"] == {"checked": rep.checked, "violations": 0, "passed": True,
                              "first_counterexample": None}
    assert rep.to_csv().splitlines()[0] == "degree,total_mode,row,col,entry,laurent"


def test_duality_report_independent_of_workers():
    cfg = WindowConfig(3, 2, -1, 1, "slope")
    assert verify_duality(cfg, workers=1).dumps() == verify_duality(cfg, workers=3).dumps()


def test_duality_negative_control():
    rep = verify_duality(WindowConfig(3, 2, -1, 1), inject=[("nongood", nongood())])
    assert not rep.passed
    bad = [v for v in rep.violations if v["kind"] == "non-laurent"]
    assert bad and bad[0]["row"] == "nongood"


def test_good_criterion():
    res = verify_good_criterion(WindowConfig(3, 2, -1, 1))
    assert res["passed"] and all(e["is_good"] for e in res["elements"])
    res = verify_good_criterion(WindowConfig(3, 2, -1, 1), [("nongood", nongood()), ("e1", gen_e(1, 0, 3))])
    bad, simple = res["elements"]
    assert res["passed"]
    assert not bad["is_good"] and bad["witness"]["f"] == "f[1..2]@(0,0)"
    assert simple["is_good"] and simple["certificate"] is None


def test_dual_bases_rank_two():
    res = verify_dual_bases(WindowConfig(2, 2, -2, 2, "slope"))
    assert res["passed"]
    for b in res["blocks"]:
        if b["degree"] == [1]:
            assert b["entries"] == [["1"]]


def test_dual_bases_other_ordering_is_triangular():
    res = verify_dual_bases(WindowConfig(2, 2, -1, 1, "slope"), ordering="e-slope")
    assert not res["passed"]
    assert all(b["ok"] for b in res["blocks"] if b["degree"] == [1])


def test_oracle_and_key_spec_sweeps():
    assert verify_oracle(WindowConfig(3, 2, -1, 1))["passed"]
    assert verify_key_specialization(3)["passed"]
