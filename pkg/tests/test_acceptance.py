"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

All checks use exact arithmetic, so the tolerance is zero throughout.
"""
import json
import random
import time
from importlib import resources

import pytest

from shuffle_duality.cli import main as cli_main
from shuffle_duality.exactalg import ONE, V_MINUS_VINV, VINV, LaurentV, RatV
from shuffle_duality.harness import (WindowConfig, verify_dual_bases, verify_duality, verify_oracle)
from shuffle_duality.pairing import FPBWDMonomial, key_specialization_check, pair
from shuffle_duality.polyring import MultiLaurent
from shuffle_duality.shuffle import (Decomposition, Root, ShuffleElement, check_relations, divided_power,
                                     e_root, e_tilde, gen_e, positive_roots, star, star_many, wheel_check)
from shuffle_duality.special import is_good

FIXTURE = resources.files("shuffle_duality") / "fixtures" / "nongood.json"


def nongood():
    return ShuffleElement.from_json(json.loads(FIXTURE.read_text()))


@pytest.fixture
def report(capsys):
    t0 = time.perf_counter()

    def emit(number, ok, detail, budget):
        dt = time.perf_counter() - t0
        ok = ok and dt < budget
        with capsys.disabled():
            print(f"\nCRITERION {number}: {'PASS' if ok else 'FAIL'} ({detail}; {dt:.1f}s of {budget}s)")
        return ok

    return emit


def test_criterion_01_relations(report):
    results = {n: check_relations(n, [-1, 0, 1]) for n in (2, 3, 4)}
    ok = all(r["passed"] for r in results.values())
    checked = sum(r["checked"] for r in results.values())
    assert report(1, ok, f"{checked} relation instances", 60)


def _random_triples(count, seed=20261016):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.choice((2, 3))
        sizes = [1, 1, 1]
        for _ in range(rng.randint(0, 1)):
            sizes[rng.randrange(3)] += 1
        trip = []
        for s in sizes:
            parts = [gen_e(rng.randint(1, n - 1), rng.randint(-2, 2), n) for _ in range(s)]
            trip.append(star_many(parts, n))
        out.append(tuple(trip))
    return out


def test_criterion_02_shuffle_kernel(report):
    triples = _random_triples(100)
    assoc = all(star(star(a, b), c) == star(a, star(b, c)) for a, b, c in triples)
    wheels = all(wheel_check(star(star(a, b), c)) for a, b, c in triples)
    value = divided_power(gen_e(1, 0, 2), 2)
    expected = ShuffleElement(MultiLaurent.constant(2, (2,), RatV(VINV, LaurentV.const(2))))
    const_ok = value == expected
    detail = (f"associativity {'ok' if assoc else 'FAILED'} on 100 triples, wheels {'ok' if wheels else 'FAILED'}, "
              f"e0^(2) = {value.numerator} vs expected v^-1/2: {'ok' if const_ok else 'MISMATCH'}")
    assert report(2, assoc and wheels and const_ok, detail, 60)


def test_criterion_03_good_elements(report):
    bad = []
    count = 0
    for b in positive_roots(3):
        for k in (1, 2):
            for r in range(-2, 3):
                count += 1
                if not is_good(divided_power(e_root(b, r, 3), k)):
                    bad.append((str(b), r, k))
    res = is_good(nongood())
    fixture_ok = (not res) and res.certificate["plan"] == {"1-2": 1}
    assert report(3, not bad and fixture_ok,
                  f"{count - len(bad)}/{count} divided powers good, fixture certificate {res.certificate}", 120)


def test_criterion_04_pairing_base_cases(report):
    ok = True
    for r in range(-3, 4):
        ok &= pair(gen_e(1, r, 2), FPBWDMonomial.parse(f"f[1..1]@({-r})")) == RatV(ONE)
        simple = e_tilde(Decomposition(Root(1, 1), (r,)), 2)
        ok &= pair(simple, FPBWDMonomial.parse(f"f[1..1]@({-r})")) == RatV(V_MINUS_VINV)
        ok &= pair(gen_e(1, r, 2), FPBWDMonomial.parse(f"f[1..1]@({1 - r})")).is_zero()
        ok &= pair(gen_e(1, r, 3), FPBWDMonomial.parse(f"f[2..2]@({-r})")).is_zero()
        ok &= pair(gen_e(1, r, 3), FPBWDMonomial.parse(f"f[1..2]@({-r},0)")).is_zero()
    assert report(4, ok, "base pairings and mismatch zeros for |r| <= 3", 30)


def test_criterion_05_oracle_equivalence(report):
    total = 0
    ok = True
    for n in (2, 3):
        for strategy in ("zero", "slope"):
            res = verify_oracle(WindowConfig(n, 4, -2, 2, strategy), max_factors=2)
            total += res["checked"]
            ok &= res["passed"]
    assert report(5, ok, f"{total} pairs agree between the orientation sum and word expansion", 300)


def test_criterion_06_key_specialization(report):
    count = 0
    ok = True
    for a in [(a1, a2) for a1 in range(-1, 3) for a2 in range(-1, 3)]:
        for r2 in (-3, -4):
            ok &= key_specialization_check(list(a), 1, 2, [r2], 3)["passed"]
            count += 1
    for a in [(0, 0, 0), (1, 2, 0), (2, -1, 1), (0, 1, 2), (-1, 0, 1)]:
        for rt in [(-3, -3), (-3, -4), (-4, -3), (-4, -4)]:
            ok &= key_specialization_check(list(a), 1, 3, list(rt), 4)["passed"]
            count += 1
    assert report(6, ok, f"{count} monomial numerators, each over a 7-mode window", 120)


def _duality_reports(workers):
    out = {}
    for n in (2, 3):
        for strategy in ("zero", "slope"):
            out[(n, strategy)] = verify_duality(WindowConfig(n, 3, -2, 2, strategy), workers=workers)
    return out


def test_criterion_07_main_window(report):
    reps = _duality_reports(workers=1)
    ok = all(r.passed for r in reps.values())
    checked = sum(r.checked for r in reps.values())
    bad = [r.violations[0] for r in reps.values() if r.violations]
    assert report(7, ok, f"{checked} Gram entries, all Laurent polynomials" if ok else f"first failure {bad[0]}",
                  900)


def test_criterion_08_negative_control(report, tmp_path, capsys):
    rep = verify_duality(WindowConfig(3, 3, -2, 2), inject=[("nongood", nongood())])
    d = LaurentV({2: 1, 0: -1})  # v (v - v^-1)
    hits = []
    for b in rep.blocks:
        for label, row in zip(b.rows, b.entries):
            if label == "nongood":
                hits += [e for e in row if not e.is_zero() and e.den.exact_div(d) is not None]
    code = cli_main(["verify", "duality", "--n", "3", "--max-degree", "3", "--modes", "-2..2",
                     "--inject", str(FIXTURE), "--out", str(tmp_path / "neg.json")])
    capsys.readouterr()
    ok = bool(hits) and code == 1 and not rep.passed
    assert report(8, ok, f"{len(hits)} entries with a (v - v^-1) denominator, CLI exit {code}", 60)


def test_criterion_09_dual_bases(report):
    res = verify_dual_bases(WindowConfig(2, 2, -2, 2, "slope"))
    diag = all(b["entries"] == [["1"]] for b in res["blocks"] if b["degree"] == [1])
    norms = sorted({n["value"] for b in res["blocks"] for n in b["normalizations"]})
    assert report(9, res["passed"] and diag, f"{len(res['blocks'])} blocks permutation-monomial, "
                                              f"observed entries {norms}", 300)


def test_criterion_10_determinism(report):
    one = _duality_reports(workers=1)
    many = _duality_reports(workers=4)
    same = all(one[k].dumps() == many[k].dumps() for k in one)
    assert report(10, same, "JSON reports byte-identical for 1 and 4 workers", 900)
