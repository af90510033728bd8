import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from shuffle_duality.exactalg import LaurentV, RatV
from shuffle_duality.polyring import MultiLaurent

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=25,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

small_int = st.integers(min_value=-4, max_value=4)


@st.composite
def laurents(draw, max_terms=4, span=4):
    exps = draw(st.lists(st.integers(-span, span), max_size=max_terms, unique=True))
    return LaurentV({e: draw(st.integers(-5, 5)) for e in exps})


@st.composite
def nonzero_laurents(draw, **kw):
    x = draw(laurents(**kw))
    return x if not x.is_zero() else LaurentV.const(draw(st.sampled_from([1, -2, 3])))


@st.composite
def ratvs(draw):
    return RatV(draw(laurents()), draw(nonzero_laurents(max_terms=3, span=2)))


@st.composite
def multilaurents(draw, rank=3, degree=(1, 1), max_terms=3):
    p = MultiLaurent.zero(rank, degree)
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        key = (draw(st.integers(-2, 2)),) + tuple(draw(st.integers(-2, 2)) for _ in range(p.nvars))
        terms[key] = draw(st.integers(-3, 3))
    return MultiLaurent(rank, degree, terms)
