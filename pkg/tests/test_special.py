import json
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from shuffle_duality.exactalg import ONE, V, V_MINUS_VINV, VINV, LaurentV, RatV
from shuffle_duality.polyring import MultiLaurent
from shuffle_duality.shuffle import (Decomposition, Root, ShuffleElement, divided_power, e_root, e_tilde,
                                     gen_e, positive_roots, star, star_many)
from shuffle_duality.special import SpecializationPlan, enumerate_plans, is_good, specialize

A1, A2, A12 = Root(1, 1), Root(2, 2), Root(1, 2)


def nongood():
    ref = resources.files("shuffle_duality") / "fixtures" / "nongood.json"
    return ShuffleElement.from_json(json.loads(ref.read_text()))


def test_enumerate_plans_examples():
    assert enumerate_plans((2,)) == [SpecializationPlan({A1: 2})]
    assert set(enumerate_plans((1, 1))) == {SpecializationPlan({A1: 1, A2: 1}), SpecializationPlan({A12: 1})}
    assert set(enumerate_plans((2, 1))) == {SpecializationPlan({A1: 2, A2: 1}),
                                            SpecializationPlan({A1: 1, A12: 1})}
    assert len(enumerate_plans((1, 1, 1))) == 4


def test_plan_bookkeeping():
    d = SpecializationPlan({A1: 1, A12: 2})
    assert d.degree(3) == (3, 2)
    assert d.required_power() == 2
    assert d.to_json() == {"1-1": 1, "1-2": 2}
    assert d.copies() == [(A1, 1), (A12, 1), (A12, 2)]


def test_specialize_root_vector():
    for r in (-1, 0, 2):
        F = e_tilde(Decomposition(A12, (r, 0)), 3)
        coeffs = specialize(F, SpecializationPlan({A12: 1})).coefficients()
        assert coeffs == {(r + 1,): V_MINUS_VINV * (ONE - V * V) * LaurentV.mono(-(r + 1))}


def test_specialize_simple_roots():
    F = gen_e(1, 3, 2)
    assert specialize(F, SpecializationPlan({A1: 1})).coefficients() == {(3,): LaurentV.mono(-3)}
    G = star(gen_e(1, 1, 3), gen_e(2, 2, 3))
    out = specialize(G, SpecializationPlan({A1: 1, A2: 1})).coefficients()
    # x_{1,1} -> v^-1 y_1, x_{2,1} -> v^-2 y_2 on x11^2 x21^2 - v x11 x21^3
    assert out == {(2, 2): LaurentV.mono(-6), (1, 3): -LaurentV.mono(-6)}


def test_specialize_degree_mismatch():
    with pytest.raises(ValueError):
        specialize(gen_e(1, 0, 3), SpecializationPlan({A12: 1}))


def test_good_examples():
    assert is_good(divided_power(gen_e(1, 0, 2), 2))
    for r in (-2, 0, 1):
        assert is_good(e_root(A12, r, 3))
    res = is_good(nongood())
    assert not res
    assert res.certificate["plan"] == {"1-2": 1}
    assert res.certificate["required_power"] == 1
    assert LaurentV.from_json(res.certificate["failing_coefficient"]) == VINV


def test_good_rejects_v_denominators():
    x = gen_e(1, 0, 2).scale(VINV + V)
    assert is_good(x)
    y = ShuffleElement(MultiLaurent.constant(2, (1,), 1)).scale(V_MINUS_VINV)
    z = ShuffleElement(MultiLaurent.constant(2, (1,), RatV(ONE, V_MINUS_VINV)))
    assert is_good(y)
    res = is_good(z)
    assert not res and res.certificate["plan"] is None


@pytest.mark.parametrize("beta", positive_roots(3))
@pytest.mark.parametrize("k", [1, 2])
def test_divided_powers_of_root_vectors_are_good(beta, k):
    for r in range(-2, 3):
        assert is_good(divided_power(e_root(beta, r, 3), k))


gens = st.tuples(st.integers(1, 2), st.integers(-2, 2))


@st.composite
def elements(draw, max_deg=3):
    parts = draw(st.lists(gens, min_size=2, max_size=max_deg))
    return star_many([gen_e(i, r, 3) for i, r in parts], 3)


@given(elements(), st.data())
def test_splitting_independence(F, data):
    plans = enumerate_plans(F.degree, 3)
    plan = data.draw(st.sampled_from(plans))
    split = {c: data.draw(st.permutations(range(1, F.degree[c - 1] + 1))) for c in (1, 2)}
    assert specialize(F, plan, split) == specialize(F, plan)


@given(elements())
def test_specialization_symmetric_in_copies(F):
    for plan in enumerate_plans(F.degree, 3):
        spec = specialize(F, plan)
        coeffs = spec.coefficients()
        for b, m in plan.d.items():
            if m < 2:
                continue
            idx = [t for t, (bb, _) in enumerate(spec.variables) if bb == b]
            for y, c in coeffs.items():
                sw = list(y)
                sw[idx[0]], sw[idx[1]] = sw[idx[1]], sw[idx[0]]
                assert coeffs.get(tuple(sw)) == c


@given(st.sampled_from(positive_roots(3)), st.integers(-1, 1), st.sampled_from(positive_roots(3)),
       st.integers(-1, 1))
def test_good_closed_under_star(b1, r1, b2, r2):
    x = star(e_root(b1, r1, 3), e_root(b2, r2, 3))
    assert is_good(x)
