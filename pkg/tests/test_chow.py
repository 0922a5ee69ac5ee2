from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from scrollinst.chow import (
    ChernCharacter,
    CurveClass,
    DivisorClass,
    LineBundle,
    OmegaTwist,
    RankTwo,
    Scroll,
    StructureSheafCurve,
    chern_character,
    euler_characteristic,
    euler_pairing,
    intersect_curve_divisor,
    mul_divisors,
    todd_class,
)
from scrollinst.errors import DomainError, InternalInconsistency, UnsupportedDescriptor

scrolls = st.tuples(st.integers(1, 5), st.integers(0, 3), st.integers(0, 3)).map(
    lambda t: Scroll(t[0], t[0] + t[1], t[0] + t[1] + t[2])
)
divisors = st.builds(DivisorClass, st.integers(-6, 6), st.integers(-12, 12))


def test_scroll_validation():
    with pytest.raises(DomainError):
        Scroll(0, 1, 2)
    with pytest.raises(DomainError):
        Scroll(2, 1, 3)
    S = Scroll(1, 2, 3)
    assert S.c == 6
    assert S.canonical == DivisorClass(-3, 4)
    assert S.tangent_c2 == CurveClass(3, -6)


def test_intersection_examples():
    S = Scroll(1, 1, 1)
    assert intersect_curve_divisor(S, CurveClass(1, 0), DivisorClass(1, 0)) == 3
    for T in (Scroll(1, 1, 1), Scroll(2, 3, 4)):
        assert intersect_curve_divisor(T, CurveClass(0, 1), DivisorClass(1, 0)) == 1
        assert intersect_curve_divisor(T, CurveClass(1, -2), DivisorClass(0, 1)) == 1


@given(divisors, divisors, divisors)
def test_mul_bilinear_commutative(x, y, z):
    assert mul_divisors(x, y) == mul_divisors(y, x)
    assert mul_divisors(x + y, z) == mul_divisors(x, z) + mul_divisors(y, z)


@given(scrolls, divisors)
def test_f_squared_vanishes(S, D):
    F = DivisorClass(0, 1)
    assert intersect_curve_divisor(S, mul_divisors(D, F), F) == 0


def test_structure_sheaf_ch():
    S = Scroll(1, 2, 2)
    assert chern_character(S, LineBundle(DivisorClass(0, 0))) == ChernCharacter.make(1)


def test_line_ch_matches_koszul():
    S = Scroll(1, 1, 2)
    L = StructureSheafCurve(CurveClass(0, 1))
    assert chern_character(S, L) == ChernCharacter.make(0, (0, 0), (0, 1), Fraction(-1, 2))
    koszul = (
        chern_character(S, LineBundle(DivisorClass(0, 0)))
        - chern_character(S, LineBundle(DivisorClass(-1, 0)))
        - chern_character(S, LineBundle(DivisorClass(0, -1)))
        + chern_character(S, LineBundle(DivisorClass(-1, -1)))
    )
    assert koszul == chern_character(S, L)


def test_non_rational_curve_unsupported():
    with pytest.raises(UnsupportedDescriptor):
        chern_character(Scroll(1, 1, 1), StructureSheafCurve(CurveClass(0, 1), rational=False))


def test_todd_examples():
    assert todd_class(Scroll(1, 1, 1)).ch1 == (Fraction(3, 2), Fraction(-1, 2))
    S = Scroll(1, 1, 2)
    K2 = mul_divisors(DivisorClass(-3, 2), DivisorClass(-3, 2))
    assert todd_class(S).ch2 == (Fraction(K2.k1 + 3, 12), Fraction(K2.k2 - 2, 12))


@given(scrolls)
def test_todd_top_degree_is_one(S):
    assert todd_class(S).ch3 == 1


def test_euler_pairing_examples():
    S = Scroll(1, 1, 1)
    O = LineBundle(DivisorClass(0, 0))
    L = StructureSheafCurve(CurveClass(0, 1))
    assert euler_pairing(S, O, O) == 1
    assert euler_pairing(S, L, L) == 0
    for k1, k2 in ((1, 0), (0, 1), (2, -3), (3, 7)):
        E = RankTwo(DivisorClass(-1, 1), CurveClass(k1, k2))
        assert euler_pairing(S, L, E) == 3
        assert euler_pairing(S, E, L) == 3


def test_chi_of_line_bundle():
    assert euler_characteristic(Scroll(1, 1, 1), LineBundle(DivisorClass(1, 0))) == 6


def test_non_integral_raises():
    with pytest.raises(InternalInconsistency):
        euler_characteristic(Scroll(1, 1, 1), RankTwo(DivisorClass(0, 3), CurveClass(1, 0)))


@given(scrolls, st.integers(-4, 4), st.integers(-8, 8), st.integers(-5, 5), st.integers(-10, 10))
def test_endomorphism_pairing_closed_form(S, a, b, k1, k2):
    # chi(E,E) is twist invariant, so any c1 works after normalising to -H+(c-2)F
    E = RankTwo(DivisorClass(-1, S.c - 2), CurveClass(k1, k2))
    assert euler_pairing(S, E, E) == 11 - 2 * S.c - 4 * k1 * (S.c + 1) - 6 * k2


def test_omega_rank_and_c1():
    S = Scroll(1, 2, 3)
    ch = chern_character(S, OmegaTwist(DivisorClass(0, 0)))
    assert ch.ch0 == 2
    assert ch.ch1 == (Fraction(-3), Fraction(S.c))
