"""The ten acceptance criteria, each printing one PASS/FAIL line (run with -s to see them)."""

from __future__ import annotations

import itertools
import json
import math
import time

import pytest

from grids import GRID_SCROLLS, TEST_SCROLLS
from scrollinst import cli
from scrollinst.chow import (
    CurveClass,
    DivisorClass,
    LineBundle,
    OmegaTwist,
    RankTwo,
    Scroll,
    StructureSheafCurve,
    euler_characteristic,
    euler_pairing,
    mul_divisors,
)
from scrollinst.cohomology import line_bundle_cohomology, omega_twist_cohomology
from scrollinst.constructions import (
    OmegaTwistBundle,
    named_examples,
    relative_balance_and_section,
    serre_charge_closed_form,
    serre_instanton,
    stability_decision,
)
from scrollinst.derived import build_collection, check_dual_pairing, check_strong
from scrollinst.instanton import (
    admissible,
    charge_and_slope,
    classical_comparisons,
    elementary_transformation,
    ext1_from_chi,
    moduli_dimension,
)
from scrollinst.monad import chern_consistency, monad_shape
from scrollinst.riemann_roch import (
    InstantonNumerics,
    chi_sheaf,
    expand_twist,
    twist_closed_form,
)

A_RANGE = range(-6, 7)
B_RANGE = range(-12, 13)


def criterion(number):
    """Run the body, print one PASS/FAIL line and re-raise failures."""

    def wrap(fn):
        def test():
            try:
                fn()
            except BaseException as e:
                print(f"\nFAIL criterion {number}: {type(e).__name__}: {str(e)[:200]}")
                raise
            print(f"\nPASS criterion {number}")

        test.__name__ = fn.__name__
        test.__doc__ = fn.__doc__
        return test

    return wrap


@criterion(1)
def test_criterion_1_cohomology_oracle_suite():
    """Serre duality symmetry and chi = integral of ch.td on the full grid, under 5 s."""
    start = time.perf_counter()
    for S in GRID_SCROLLS:
        K = S.canonical
        for a, b in itertools.product(A_RANGE, B_RANGE):
            D = DivisorClass(a, b)
            h = line_bundle_cohomology(S, D)
            dual = line_bundle_cohomology(S, K - D)
            assert h.is_exact and dual.is_exact
            assert h.values == tuple(reversed(dual.values)), (S, D)
            assert h.chi == euler_characteristic(S, LineBundle(D)), (S, D)
            w = omega_twist_cohomology(S, D)
            wdual = omega_twist_cohomology(S, K - D, dual=True)
            assert w.is_exact and wdual.is_exact
            assert w.values == tuple(reversed(wdual.values)), (S, D)
            assert w.chi == euler_characteristic(S, OmegaTwist(D)), (S, D)
    elapsed = time.perf_counter() - start
    print(f"\ncriterion 1 runtime {elapsed:.2f} s")
    assert elapsed < 5.0


@criterion(2)
def test_criterion_2_rank_two_split():
    """chi(RankTwo(D+D', D.D')) = chi(O(D)) + chi(O(D')) for every pair on the grid."""
    divisors = [DivisorClass(a, b) for a, b in itertools.product(A_RANGE, B_RANGE)]
    for S in GRID_SCROLLS:
        line_chi = {D: euler_characteristic(S, LineBundle(D)) for D in divisors}
        for i, D in enumerate(divisors):
            for E in divisors[i:]:
                split = RankTwo(D + E, mul_divisors(D, E))
                assert euler_characteristic(S, split) == line_chi[D] + line_chi[E], (S, D, E)


@criterion(3)
def test_criterion_3_specializations():
    """Closed forms for the standard twists against ch.td; one deviation for Omega(H-2F)."""
    k_range = range(-10, 11)
    for S in TEST_SCROLLS:
        for k1, k2 in itertools.product(k_range, k_range):
            n = InstantonNumerics(S, k1, k2)
            for kind in ("bF", "H+bF", "-H+bF"):
                for b in range(-8, 9):
                    assert twist_closed_form(n, kind, b) == chi_sheaf(S, expand_twist(n, kind, b)), (
                        S, k1, k2, kind, b)
            assert twist_closed_form(n, "-H+bF", 3) == -k1 * 3
            for kind in ("Omega(H-F)", "Omega(H-2F)"):
                assert twist_closed_form(n, kind) == chi_sheaf(S, expand_twist(n, kind)), (S, k1, k2, kind)
            assert chi_sheaf(S, expand_twist(n, "Omega(H-2F)")) == 3 - S.c - (2 * S.c - 4) * k1 - k2
    code, text = cli.run(["--json", "deviations"])
    assert code == 0
    entries = [d for d in json.loads(text)["deviations"] if "Omega(H-2F)" in d["claim"]]
    assert len(entries) == 1
    assert entries[0]["derived"] == "3-c-(2c-4)k1-k2"


@criterion(4)
def test_criterion_4_monad_certification():
    """Zero Chern residual for every admissible shape; the minimal mon3 case is B = Omega(H-F)."""
    small = [S for S in GRID_SCROLLS if S.a2 <= 2]
    jobs = [(S, "mon3") for S in TEST_SCROLLS]
    jobs += [(S, v) for S in small for v in ("mon1", "mon2")]
    checked = 0
    for S, variant in jobs:
        for k1, k2 in itertools.product(range(0, 9), range(-8, 9)):
            n = InstantonNumerics(S, k1, k2)
            if not admissible(n).admissible:
                continue
            residual = chern_consistency(monad_shape(n, variant))
            assert residual.is_zero(), (S, variant, k1, k2, residual)
            checked += 1
    assert checked > 0
    for S in TEST_SCROLLS:
        n = InstantonNumerics(S, 1, 1 - S.c)
        shape = monad_shape(n, "mon3")
        # with the table symbols at zero, only B survives
        numeric = shape.numeric()
        for slot in ("A_sub", "A", "C", "C_quot"):
            assert all(v == 0 for _, v in numeric[slot]), (S, slot, numeric[slot])
        assert [(g, v) for g, v in numeric["B"] if v] == [(OmegaTwist(DivisorClass(1, -1)), 1)]


@criterion(5)
def test_criterion_5_dimension_identities():
    for S in TEST_SCROLLS:
        c = S.c
        for k1, k2 in itertools.product(range(-8, 9), range(-8, 9)):
            n = InstantonNumerics(S, k1, k2)
            serre = moduli_dimension(n, "serremoduli")
            assert serre == moduli_dimension(n, "teo2") == 2 * (c - 5 + 2 * k1 * (c + 1) + 3 * k2)
            assert ext1_from_chi(n) == serre
            if k1 == 1:
                assert serre == moduli_dimension(n, "teo1") == 6 * (c - 1 + k2)
        n = InstantonNumerics(S, 1, 1 - c)
        ext1 = ext1_from_chi(n)
        for _ in range(c):
            step = elementary_transformation(n, ext1)
            assert step.increment == 6
            assert step.published_increment == 4
            n, ext1 = step.result, step.ext1
    code, text = cli.run(["--json", "deviations"])
    flagged = [d for d in json.loads(text)["deviations"] if "grows by 4" in d["claim"]]
    assert len(flagged) == 1


@criterion(6)
def test_criterion_6_euler_pairings():
    L = StructureSheafCurve(CurveClass(0, 1))
    for S in TEST_SCROLLS:
        assert euler_pairing(S, L, L) == 0
        for k1, k2 in itertools.product(range(0, 4), range(-4, 5)):
            E = InstantonNumerics(S, k1, k2).descriptor
            assert euler_pairing(S, L, E) == 3
            # restriction oracle: E|_L = O + O(-1), so chi(E, O_L) = chi(O + O(1)) on L = 3
            assert euler_pairing(S, E, L) == 3
            step = elementary_transformation(InstantonNumerics(S, k1, k2),
                                             ext1_from_chi(InstantonNumerics(S, k1, k2)))
            assert step.chi_E_L == 3 and step.published_chi_E_L == 1


@criterion(7)
def test_criterion_7_derived_suite():
    start = time.perf_counter()
    pairs = [("col", "cold", None), ("col00", "cold0", None), ("col4", "cold4", None)]
    pairs += [("colt", "coltd", t) for t in (0, 1, 2)]
    for S in (Scroll(1, 1, 1), Scroll(1, 1, 2), Scroll(1, 2, 2)):
        for left, right, t in pairs:
            rep = check_dual_pairing(S, build_collection(S, left, t), build_collection(S, right, t))
            assert rep.passed and not rep.unresolved, (S, left, right, t, rep.failures[:3])
        for name in ("colt", "colt2", "col*"):
            for t in (0, 1, 2):
                rep = check_strong(S, build_collection(S, name, t))
                assert rep.passed and not rep.unresolved, (S, name, t)
        rep = check_strong(S, build_collection(S, "cold4"))
        assert rep.passed and not rep.unresolved, (S, "cold4")
    elapsed = time.perf_counter() - start
    print(f"\ncriterion 7 runtime {elapsed:.2f} s")
    assert elapsed < 10.0


@criterion(8)
def test_criterion_8_constructions():
    for S, kind in ((Scroll(2, 2, 3), "aab"), (Scroll(2, 3, 3), "even")):
        for alpha in range(1, 5):
            inst = serre_instanton(S, kind, alpha)
            chow_charge, _ = charge_and_slope(inst.numerics)
            expected = (S.a0 if kind == "aab" else S.c // 2) * (alpha - 1) + 1
            assert chow_charge == inst.charge == serre_charge_closed_form(S, kind, alpha) == expected
    for a, section in (((1, 1, 1), (1, 2)), ((2, 3, 3), (4, 4)), ((1, 1, 4), (2, 4))):
        _, b0, b1 = relative_balance_and_section(Scroll(*a))
        assert (b0, b1) == section
    for S in TEST_SCROLLS:
        v = stability_decision(S, OmegaTwistBundle(DivisorClass(1, -1)), "stable")
        assert v.verdict == "Stable", (S, v.verdict)
        assert named_examples(S, "ulrich_twist").verdict.verdict == "Stable"
    rep = named_examples(Scroll(1, 1, 1), "p1xp2_counterexample")
    assert rep.verdict.verdict == "Unstable"
    assert rep.verdict.witness.B == DivisorClass(1, -3)
    assert rep.verdict.witness.h0.is_exact and rep.verdict.witness.h0.value == 1
    assert rep.tables["E(H-3F)"][0].value == 1


@criterion(9)
def test_criterion_9_classical_comparisons():
    for d, k in ((2, 1), (3, 4), (4, 9)):
        out = classical_comparisons("veronese_p3", d)
        assert out["minimal_charge"] == k == math.ceil(out["bound"])
    fano = classical_comparisons("fano_index1", 12, 15)
    assert fano["threshold"] == 15 and fano["admissible"]
    assert not classical_comparisons("fano_index1", 12, 14)["admissible"]


def _cli_grid():
    yield ["deviations"]
    yield ["classic", "--veronese", "3", "--k", "4"]
    yield ["classic", "--fano", "12", "15"]
    for S in GRID_SCROLLS:
        s = f"{S.a0},{S.a1},{S.a2}"
        yield ["info", s]
        yield ["coh", s, "--sheaf", "O(-3H+F)+Omega(2H-F)"]
        yield ["chi", s, "--sheaf", "End(Omega)(0)"]
        yield ["stability", s, "--bundle", "Omega(H-F)"]
        yield ["example", s, "--name", "ulrich_twist"]
        yield ["example", s, "--name", "ulrich_section_locus"]
        yield ["sweep", s, "--k1", "0..3", "--k2", f"{-3 * S.c}..4", "--emit", "dimension"]
        for fam in ("aab", "even"):
            yield ["serre", s, "--family", fam, "--alpha", "2"]
        for k1, k2 in ((0, 1), (1, 1 - S.c), (1, 0), (2, 1 - 2 * S.c), (2, 2 - 2 * S.c), (2, 1)):
            yield ["instanton", s, str(k1), str(k2), "--table"]
            for v in ("mon1", "mon2", "mon3"):
                yield ["instanton", s, str(k1), str(k2), "--monad", v]
    for S in (Scroll(1, 1, 1), Scroll(1, 2, 2)):
        s = f"{S.a0},{S.a1},{S.a2}"
        yield ["collection", s, "--name", "colt", "--t", "1", "--check", "strong"]
        yield ["collection", s, "--name", "col4", "--check", "dual"]
    yield ["example", "1,1,1", "--name", "p1xp2_counterexample"]
    yield ["stability", "1,1,1", "--bundle", "p1xp2", "--mode", "semistable"]


@criterion(10)
def test_criterion_10_cli_determinism():
    codes = {}
    for argv in _cli_grid():
        for fmt in ([], ["--json"]):
            first = cli.run(fmt + argv)
            second = cli.run(fmt + argv)
            assert first == second, argv
            assert first[0] != 2, (argv, first[1])
            codes[first[0]] = codes.get(first[0], 0) + 1
    assert codes.get(0, 0) > 0
    print(f"\ncriterion 10 exit codes {sorted(codes.items())}")


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(pytest.main([__file__, "-s", "-q"]))
