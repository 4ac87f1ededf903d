import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from singpoly import kernels
from singpoly.field import Scalar
from singpoly.polyring import Polynomial

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.function_scoped_fixture])
settings.load_profile("default")

small_int = st.integers(min_value=-5, max_value=5)
kpoly = st.lists(small_int, min_size=1, max_size=4)
rationals = st.fractions(min_value=-4, max_value=4, max_denominator=6)


@st.composite
def scalars(draw, allow_zero=True):
    num = draw(kpoly)
    den = draw(kpoly.filter(lambda d: any(d)))
    s = Scalar(num, den)
    if not allow_zero and not s:
        s = Scalar.coerce(1)
    return s


@st.composite
def polynomials(draw, nvars=3, max_degree=3, with_kappa=False, max_terms=5):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        d = draw(st.integers(0, max_degree))
        exps = [0] * nvars
        for _ in range(d):
            exps[draw(st.integers(0, nvars - 1))] += 1
        if with_kappa:
            c = Scalar(draw(kpoly), draw(st.sampled_from([[1], [1, 1], [2, 0, 1]])))
        else:
            c = draw(st.fractions(min_value=-3, max_value=3, max_denominator=4))
        terms[tuple(exps)] = c
    return Polynomial(nvars, terms)


@pytest.fixture(params=sorted(kernels.available_backends()))
def backend(request):
    return kernels.available_backends()[request.param]
