from fractions import Fraction

from hypothesis import HealthCheck, settings, strategies as st

from planezeros.forms import LinearForm
from planezeros.gaussrat import GaussRat

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-5, 5), st.integers(1, 5))
gaussrats = st.builds(GaussRat, small_rationals, small_rationals)
nonzero_gaussrats = gaussrats.filter(bool)


@st.composite
def linear_forms(draw, n=None, bound=5):
    n = n or draw(st.integers(2, 4))
    rat = st.builds(Fraction, st.integers(-bound, bound), st.integers(1, bound))
    g = st.builds(GaussRat, rat, rat)
    a = draw(st.lists(g, min_size=n, max_size=n).filter(any))
    return LinearForm(tuple(a), draw(g))


@st.composite
def l1_forms(draw, n=None):
    n = n or draw(st.integers(2, 4))
    k = draw(st.lists(st.integers(-3, 3), min_size=n, max_size=n).filter(any))
    lam = draw(nonzero_gaussrats)
    return LinearForm(tuple(lam * x for x in k), draw(gaussrats))
