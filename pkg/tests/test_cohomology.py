import pytest
from hypothesis import given, strategies as st

from grids import GRID_SCROLLS
from scrollinst.chow import (
    DivisorClass,
    EndOmegaTwist,
    OmegaTwist,
    Scroll,
    euler_characteristic,
)
from scrollinst.cohomology import (
    CohTable,
    CohValue,
    P1BundleSum,
    end_omega_cohomology,
    line_bundle_cohomology,
    omega_les_bounds,
    omega_twist_cohomology,
    p1_cohomology,
    serre_dual_table,
    solve_exact_sequence,
    solve_short_exact,
    sym_decompose,
)
from scrollinst.errors import DomainError

D = DivisorClass


def test_sym_decompose_examples():
    assert sorted(sym_decompose(Scroll(1, 1, 1), 1).degrees) == [1, 1, 1]
    assert sorted(sym_decompose(Scroll(2, 3, 4), 0).degrees) == [0]
    assert sorted(sym_decompose(Scroll(1, 1, 2), 2).degrees) == [2, 2, 2, 3, 3, 4]
    with pytest.raises(DomainError):
        sym_decompose(Scroll(1, 1, 1), -1)


@given(st.integers(0, 8))
def test_sym_size(a):
    assert len(sym_decompose(Scroll(1, 2, 3), a).degrees) == (a + 1) * (a + 2) // 2


def test_p1_examples():
    assert p1_cohomology(P1BundleSum((0,)), 0) == (1, 0)
    assert p1_cohomology(P1BundleSum((1, 1, 1)), 0) == (6, 0)
    assert p1_cohomology(P1BundleSum((0,)), -2) == (0, 1)


def test_line_bundle_examples():
    for S in (Scroll(1, 1, 1), Scroll(2, 3, 3)):
        assert line_bundle_cohomology(S, D(0, 0)).values == (1, 0, 0, 0)
        assert line_bundle_cohomology(S, D(-2, 5)).values == (0, 0, 0, 0)
    S = Scroll(1, 1, 1)
    assert line_bundle_cohomology(S, D(1, 0)).values == (6, 0, 0, 0)
    assert line_bundle_cohomology(S, D(-3, 1)).values == (0, 0, 0, 1)


def test_serre_dual_examples():
    assert serre_dual_table(Scroll(1, 1, 2), D(0, 0)).values == (1, 0, 0, 0)
    assert serre_dual_table(Scroll(1, 1, 1), D(1, 0)).values == (6, 0, 0, 0)
    assert serre_dual_table(Scroll(1, 2, 2), D(-1, 3)).values == (0, 0, 0, 0)


@pytest.mark.parametrize("S", GRID_SCROLLS, ids=str)
def test_line_bundle_vanishing_pattern(S):
    for a in range(-6, 7):
        for b in range(-12, 13):
            h = line_bundle_cohomology(S, D(a, b)).values
            if a >= 0:
                assert h[2] == h[3] == 0
            elif a <= -3:
                assert h[0] == h[1] == 0
            else:
                assert h == (0, 0, 0, 0)


def test_omega_examples():
    for S in (Scroll(1, 1, 1), Scroll(1, 2, 3)):
        assert omega_twist_cohomology(S, D(0, 0)).values == (0, 1, 0, 0)
        for b in range(-6, 7):
            assert omega_twist_cohomology(S, D(1, b)).values == (0, 0, 0, 0)
    assert omega_twist_cohomology(Scroll(1, 1, 2), D(2, 0)).values == (11, 0, 0, 0)


@pytest.mark.parametrize("S", [Scroll(1, 1, 1), Scroll(1, 2, 3), Scroll(2, 2, 4)], ids=str)
def test_omega_exact_inside_les_bounds(S):
    for a in range(-4, 5):
        for b in range(-8, 9):
            exact = omega_twist_cohomology(S, D(a, b))
            bounds = omega_les_bounds(S, D(a, b))
            assert exact.is_exact
            assert all(bounds[i].contains(exact[i].value) for i in range(4))
            assert exact.chi == euler_characteristic(S, OmegaTwist(D(a, b)))


def test_omega_dual_is_twisted_omega():
    S = Scroll(1, 2, 2)
    for b in range(-5, 6):
        dual = omega_twist_cohomology(S, D(-1, b), dual=True)
        assert dual == omega_twist_cohomology(S, D(2, b - S.c))


def test_end_omega_is_exceptional():
    for S in (Scroll(1, 1, 1), Scroll(1, 2, 3), Scroll(3, 3, 4)):
        assert end_omega_cohomology(S, D(0, 0)).values == (1, 0, 0, 0)


def test_end_omega_chi():
    S = Scroll(1, 1, 2)
    for a in (-1, 0, 1):
        for b in range(-3, 4):
            t = end_omega_cohomology(S, D(a, b))
            if t.is_exact:
                assert t.chi == euler_characteristic(S, EndOmegaTwist(D(a, b)))


def test_exact_sequence_solver():
    # an exact 0 -> V -> C^2 -> C^3 -> 0 cannot exist
    with pytest.raises(Exception):
        solve_exact_sequence([CohValue.unknown(), CohValue.exact(2), CohValue.exact(3)])
    out = solve_exact_sequence([CohValue.unknown(), CohValue.exact(5), CohValue.exact(3)])
    assert out[0] == CohValue.exact(2)


def test_short_exact_interval():
    A = CohTable.exact(1, 0, 0, 0)
    C = CohTable.exact(2, 1, 0, 0)
    _, B, _ = solve_short_exact(A, CohTable.unknown(), C)
    # h1(A) = h2(A) = 0 pins down B completely
    assert B[0] == CohValue.exact(3)
    assert B[1] == CohValue.exact(1)
    loose = solve_short_exact(CohTable.exact(1, 2, 0, 0), CohTable.unknown(), C)[1]
    assert loose[0].contains(3) and not loose[0].is_exact
