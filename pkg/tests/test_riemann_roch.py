import pytest
from hypothesis import given, strategies as st

from grids import TEST_SCROLLS
from scrollinst.chow import DivisorClass, Scroll, euler_characteristic
from scrollinst.errors import DomainError
from scrollinst.riemann_roch import (
    TWIST_KINDS,
    InstantonNumerics,
    chi_endomorphism,
    chi_instanton_twist,
    chi_sheaf,
    expand_twist,
    instanton_twist_rr,
    published_chi_endomorphism,
    published_omega_h_minus_2f,
    rank_two_rr,
    twist_closed_form,
)

scrolls = st.sampled_from(TEST_SCROLLS)
ks = st.integers(-10, 10)


@given(scrolls, ks, ks, st.integers(-4, 4), st.integers(-8, 8))
def test_closed_rr_matches_integral(S, k1, k2, a, b):
    n = InstantonNumerics(S, k1, k2)
    D = DivisorClass(a, b)
    E = n.twisted(D)
    assert rank_two_rr(S, E.c1, E.c2) == euler_characteristic(S, E)
    assert instanton_twist_rr(n, D) == euler_characteristic(S, E)


@given(scrolls, ks, ks, st.integers(-8, 8), st.sampled_from(TWIST_KINDS))
def test_specializations(S, k1, k2, b, kind):
    n = InstantonNumerics(S, k1, k2)
    assert chi_instanton_twist(n, kind, b) == chi_sheaf(S, expand_twist(n, kind, b))


def test_specialization_examples():
    n = InstantonNumerics(Scroll(1, 1, 1), 1, -2)
    assert twist_closed_form(n, "bF", 0) == 0
    assert twist_closed_form(n, "-H+bF", 5) == -5
    # Ulrich-type vanishing of chi at the minimal charge
    for b in range(-3, 4):
        assert twist_closed_form(n, "-H+bF", b) == -b


def test_published_omega_h_minus_2f_differs_by_k2():
    for S in TEST_SCROLLS:
        for k1, k2 in ((0, 1), (1, 3), (2, -1)):
            n = InstantonNumerics(S, k1, k2)
            assert published_omega_h_minus_2f(n) == twist_closed_form(n, "Omega(H-2F)") - k2


def test_chi_end_examples():
    S = Scroll(1, 1, 1)
    assert chi_endomorphism(InstantonNumerics(S, 1, -2)) == 1
    assert chi_endomorphism(InstantonNumerics(S, 1, 0)) == -11
    for k2 in range(-2, 4):
        step = chi_endomorphism(InstantonNumerics(S, 1, k2 + 1)) - chi_endomorphism(InstantonNumerics(S, 1, k2))
        assert step == -6


@given(scrolls, ks, ks)
def test_chi_end_constant_off_by_one(S, k1, k2):
    n = InstantonNumerics(S, k1, k2)
    assert chi_endomorphism(n) == published_chi_endomorphism(n) + 1


def test_unknown_twist_kind():
    with pytest.raises(DomainError):
        twist_closed_form(InstantonNumerics(Scroll(1, 1, 1), 1, 0), "nope")
