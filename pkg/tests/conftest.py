import math

import pytest
from hypothesis import strategies as st

from gps_resum.series import GenSeries


# dyadic exponents on a 1/8 grid and small integer coefficients keep every
# ring operation exact in doubles, so structural laws can be asserted with
# equality instead of tolerances
def dyadic_exponents(max_num=40):
    return st.integers(min_value=0, max_value=max_num).map(lambda k: k / 8.0)


def small_coeffs():
    return st.tuples(
        st.integers(min_value=-8, max_value=8), st.integers(min_value=-8, max_value=8)
    ).map(lambda t: complex(*t))


@st.composite
def one_var_jets(draw, min_terms=0, max_terms=6, positive_ord=False, cutoff=24.0):
    n = draw(st.integers(min_value=min_terms, max_value=max_terms))
    terms = {}
    for _ in range(n):
        e = draw(dyadic_exponents(int(cutoff * 8) - 1))
        if positive_ord and e == 0.0:
            e = 0.125
        c = draw(small_coeffs())
        if c != 0:
            terms[(e,)] = terms.get((e,), 0j) + c
    return GenSeries(1, {k: v for k, v in terms.items() if v != 0}, cutoff=cutoff)


@pytest.fixture(scope="session")
def euler_oracle():
    # integral oracle for sum (-1)^n n! x^{n+1}: e^{1/x} E1(1/x), frozen from
    # adaptive quadrature of int_0^inf e^{-t} x/(1+xt) dt before the build
    return {0.05: 0.047718545496, 0.1: 0.091563333940, 0.2: 0.170422176285}
