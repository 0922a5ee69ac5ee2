"""Explicit rank-2 bundles on a scroll and the Hoppe stability decision.

Bundles are given by presentations: an extension of two line bundles, a twist
of Omega, or a Serre-type extension 0 -> O(T) -> E -> I_Y(M) -> 0 with Y a
disjoint union of smooth rational curves from one family. Cohomology of twists
is bounded through long exact sequences; nothing generic is assumed unless
asked for, and every such assumption is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .chow import (
    CurveClass,
    DivisorClass,
    OmegaTwist,
    RankTwo,
    Scroll,
    chern_character,
    intersect_curve_divisor,
    mul_divisors,
)
from .cohomology import (
    CohTable,
    CohValue,
    line_bundle_cohomology,
    omega_twist_cohomology,
    solve_exact_sequence,
    solve_short_exact,
)
from .errors import DomainError, InternalInconsistency
from .instanton import admissible, charge_and_slope
from .riemann_roch import InstantonNumerics

H = DivisorClass(1, 0)
FIBRE = DivisorClass(0, 1)


def relative_balance_and_section(S: Scroll) -> tuple[int, int, int]:
    """(r, b0, b1): r = 1 when a2 <= a0+a1, else 2; b0 + b1 = c."""
    c = S.c
    if S.a2 <= S.a0 + S.a1:
        return 1, c // 2, c - c // 2
    return 2, c - S.a2, S.a2


# --- curves and Serre data -----------------------------------------------------

CURVE_KINDS = ("line_in_fiber", "ruling_curve_aab", "ruling_curve_even")
FAMILY_ALIASES = {"aab": "ruling_curve_aab", "even": "ruling_curve_even", "line": "line_in_fiber"}


@dataclass(frozen=True)
class CurveFamily:
    kind: str
    curve_class: CurveClass
    normal_degrees: tuple
    detN_divisor: DivisorClass | None

    @property
    def meets_every_fibre(self) -> bool:
        # a curve of class k1 H^2 + k2 HF meets a fibre in k1 points
        return self.curve_class.k1 > 0


def curve_family(S: Scroll, kind: str, chern_only: bool = False) -> CurveFamily:
    kind = FAMILY_ALIASES.get(kind, kind)
    if kind == "line_in_fiber":
        return CurveFamily(kind, CurveClass(0, 1), (1, 0), None)
    if kind == "ruling_curve_aab":
        if S.a0 != S.a1:
            raise DomainError(f"the aab family needs S(a,a,b), got {S}")
        a, b = S.a0, S.a2
        if b > a + 1 and not chern_only:
            raise DomainError(f"the aab family needs b <= a+1, got a={a}, b={b}")
        return CurveFamily(kind, CurveClass(1, -(a + b)), (a - b, 0), DivisorClass(1, -b))
    if kind == "ruling_curve_even":
        if S.c % 2 or S.a0 + S.a1 <= S.a2:
            raise DomainError(f"the even family needs even degree and a0+a1 > a2, got {S}")
        b0 = S.c // 2
        return CurveFamily(kind, CurveClass(1, -b0), (b0, 0), DivisorClass(1, 0))
    raise DomainError(f"unknown curve family {kind!r}; choose from aab, even, line")


@dataclass(frozen=True)
class SerreDatum:
    """Y = alpha disjoint curves of the family; F has a section vanishing on Y, E = F(T)."""

    family: CurveFamily
    alpha: int
    c1F: DivisorClass
    twist: DivisorClass
    flags: tuple = ()

    @property
    def Y(self) -> CurveClass:
        return CurveClass(self.alpha * self.family.curve_class.k1, self.alpha * self.family.curve_class.k2)


# --- presentations -------------------------------------------------------------


@dataclass(frozen=True)
class LineExtension:
    """0 -> O(sub) -> E -> O(quotient) -> 0."""

    sub: DivisorClass
    quotient: DivisorClass

    def __str__(self) -> str:
        return f"Ext(O({self.quotient}),O({self.sub}))"


@dataclass(frozen=True)
class OmegaTwistBundle:
    D: DivisorClass

    def __str__(self) -> str:
        return f"Omega({self.D})"


@dataclass(frozen=True)
class SerreBundle:
    datum: SerreDatum

    @property
    def sub(self) -> DivisorClass:
        return self.datum.twist

    @property
    def quotient(self) -> DivisorClass:
        # c1(E) - T
        return self.datum.c1F + self.datum.twist

    def __str__(self) -> str:
        d = self.datum
        return f"Serre({d.family.kind}, alpha={d.alpha}, c1F={d.c1F}, twist={d.twist})"


BundlePresentation = Union[LineExtension, OmegaTwistBundle, SerreBundle]


def chern_data(S: Scroll, P: BundlePresentation) -> tuple[DivisorClass, CurveClass]:
    if isinstance(P, LineExtension):
        return P.sub + P.quotient, mul_divisors(P.sub, P.quotient)
    if isinstance(P, OmegaTwistBundle):
        ch = chern_character(S, OmegaTwist(P.D))
        c1 = DivisorClass(int(ch.ch1[0]), int(ch.ch1[1]))
        sq = mul_divisors(c1, c1)
        c2 = (Fraction(sq.k1, 2) - ch.ch2[0], Fraction(sq.k2, 2) - ch.ch2[1])
        if any(x.denominator != 1 for x in c2):
            raise InternalInconsistency(f"non-integral c2 for {P}")
        return c1, CurveClass(int(c2[0]), int(c2[1]))
    if isinstance(P, SerreBundle):
        d = P.datum
        T = d.twist
        c1 = d.c1F + 2 * T
        c2 = d.Y + mul_divisors(d.c1F, T) + mul_divisors(T, T)
        return c1, c2
    raise DomainError(f"unsupported presentation {P!r}")


def dominating_line_bundles(S: Scroll, P: BundlePresentation) -> tuple:
    """Line bundles whose sections bound those of E: h0(E(B)) <= sum h0(L(B))."""
    if isinstance(P, OmegaTwistBundle):
        return tuple(P.D + DivisorClass(-1, ai) for ai in S.a)
    return (P.sub, P.quotient)


# --- cohomology ----------------------------------------------------------------


def _curve_degree(S: Scroll, fam: CurveFamily, D: DivisorClass) -> int:
    return intersect_curve_divisor(S, fam.curve_class, D)


def structure_sheaf_Y_cohomology(S: Scroll, datum: SerreDatum, D: DivisorClass) -> CohTable:
    d = _curve_degree(S, datum.family, D)
    al = datum.alpha
    return CohTable.exact(al * max(d + 1, 0), al * max(-d - 1, 0), 0, 0)


@dataclass(frozen=True)
class BoundedTable:
    table: CohTable
    rules: tuple = ()
    assumptions: tuple = ()


def ideal_sheaf_cohomology(S: Scroll, datum: SerreDatum, D: DivisorClass,
                           assume_general: bool = False) -> BoundedTable:
    """h^i(I_Y(D)) from 0 -> I_Y(D) -> O(D) -> O_Y(D) -> 0 and the section rules."""
    O = line_bundle_cohomology(S, D)
    OY = structure_sheaf_Y_cohomology(S, datum, D)
    rules, assumptions = [], []
    h0 = CohValue.unknown()
    if O[0].value == 0:
        rules.append("R1: h0(O(D)) = 0")
        h0 = CohValue.exact(0)
    elif D.a == 0 and datum.family.meets_every_fibre:
        rules.append("R2: every component of Y meets every fibre, so no section of O(mF) vanishes on Y")
        h0 = CohValue.exact(0)
    elif assume_general:
        est = max(0, O[0].value - OY[0].value)
        assumptions.append(
            f"assume-general: Y imposes independent conditions on |O({D})|, h0(I_Y(D)) = {est}"
        )
        h0 = CohValue.exact(est)
    seq = [h0, O[0], OY[0], CohValue.unknown(), O[1], OY[1],
           CohValue.unknown(), O[2], OY[2], CohValue.unknown(), O[3], OY[3]]
    sol = solve_exact_sequence(seq)
    return BoundedTable(CohTable((sol[0], sol[3], sol[6], sol[9])), tuple(rules), tuple(assumptions))


def bundle_twist_cohomology(S: Scroll, P: BundlePresentation, B: DivisorClass = DivisorClass(0, 0),
                            assume_general: bool = False) -> BoundedTable:
    """Cohomology of E(B), exact where the sequences force it and as intervals otherwise."""
    if isinstance(P, OmegaTwistBundle):
        return BoundedTable(omega_twist_cohomology(S, P.D + B), ("exact omega cohomology",))
    if isinstance(P, LineExtension):
        _, mid, _ = solve_short_exact(
            line_bundle_cohomology(S, P.sub + B), CohTable.unknown(), line_bundle_cohomology(S, P.quotient + B)
        )
        return BoundedTable(mid, ("long exact sequence of the extension",))
    if isinstance(P, SerreBundle):
        ideal = ideal_sheaf_cohomology(S, P.datum, P.quotient + B, assume_general)
        _, mid, _ = solve_short_exact(line_bundle_cohomology(S, P.sub + B), CohTable.unknown(), ideal.table)
        return BoundedTable(mid, ("long exact sequence of the Serre extension",) + ideal.rules,
                            ideal.assumptions)
    raise DomainError(f"unsupported presentation {P!r}")


# --- Serre instantons -----------------------------------------------------------


def serre_datum(S: Scroll, kind: str, alpha: int, chern_only: bool = False) -> SerreDatum:
    if alpha < 1:
        raise DomainError("alpha must be at least 1")
    fam = curve_family(S, kind, chern_only)
    if fam.kind == "ruling_curve_aab":
        a, b = S.a0, S.a2
        flags = () if b <= a + 1 else ("b > a+1: Chern arithmetic only, no Ext-vanishing claims",)
        return SerreDatum(fam, alpha, DivisorClass(1, -b), DivisorClass(-1, a + b - 1), flags)
    if fam.kind == "ruling_curve_even":
        b0 = S.c // 2
        return SerreDatum(fam, alpha, DivisorClass(1, 0), DivisorClass(-1, b0 - 1))
    raise DomainError("Serre instantons use the aab or even families")


def serre_charge_closed_form(S: Scroll, kind: str, alpha: int) -> int:
    kind = FAMILY_ALIASES.get(kind, kind)
    if kind == "ruling_curve_aab":
        return S.a0 * (alpha - 1) + 1
    return (S.c // 2) * (alpha - 1) + 1


@dataclass(frozen=True)
class SerreInstanton:
    presentation: SerreBundle
    numerics: InstantonNumerics
    charge: int


def serre_instanton(S: Scroll, kind: str, alpha: int, chern_only: bool = False) -> SerreInstanton:
    datum = serre_datum(S, kind, alpha, chern_only)
    P = SerreBundle(datum)
    c1, c2 = chern_data(S, P)
    if c1 != DivisorClass(-1, S.c - 2):
        raise InternalInconsistency(f"Serre bundle has c1 = {c1}, expected -H+(c-2)F")
    if datum.family.kind == "ruling_curve_aab":
        a, b = S.a0, S.a2
        expected = CurveClass(alpha, -(alpha * (a + b) + a - 1))
    else:
        b0 = S.c // 2
        expected = CurveClass(alpha, -(b0 * (alpha + 1) - 1))
    if c2 != expected:
        raise InternalInconsistency(f"Serre bundle has c2 = {c2}, expected {expected}")
    n = InstantonNumerics(S, c2.k1, c2.k2)
    charge, _ = charge_and_slope(n)
    if charge != serre_charge_closed_form(S, kind, alpha):
        raise InternalInconsistency("Serre charge disagrees with its closed form")
    if not admissible(n).admissible:
        raise InternalInconsistency(f"Serre instanton {c2} fails the admissibility gate")
    return SerreInstanton(P, n, charge)


# --- stability ------------------------------------------------------------------

MODES = ("stable", "semistable")


@dataclass(frozen=True)
class StabilityCell:
    B: DivisorClass
    delta: int
    h0: CohValue


@dataclass(frozen=True)
class StabilityVerdict:
    verdict: str  # Stable | Semistable | Unstable | Undetermined
    mode: str
    mu: Fraction
    threshold: int
    witness: StabilityCell | None
    cells: tuple
    unresolved: tuple
    bound: str
    assumptions: tuple = field(default=())

    @property
    def stable(self) -> bool:
        return self.verdict == "Stable"


def _thresholds(mu: Fraction) -> tuple[int, int]:
    """(stable, semistable): h0(E(B)) must vanish for delta(B) <= -mu, resp. < -mu."""
    return math.floor(-mu), math.ceil(-mu) - 1


def _enumerate(S: Scroll, doms: tuple, thr: int) -> tuple[list, str]:
    """Classes B = aH+bF with delta(B) <= thr where some dominating L(B) can have sections.

    L = O(xH+yF) twisted by B has sections only if x+a >= 0 and y+b >= -(x+a) a2.
    With b <= thr - ac this bounds a above by (x a2 + y + thr)/(a0+a1).
    """
    c, a2, low = S.c, S.a2, S.a0 + S.a1
    seen = set()
    parts = []
    for L in doms:
        x, y = L.a, L.b
        amin, amax = -x, (x * a2 + y + thr) // low
        parts.append(f"L=O({L}): a in [{amin},{amax}], b in [-(x+a)a2-y, thr-ac]")
        for a in range(amin, amax + 1):
            for b in range(-(x + a) * a2 - y, thr - a * c + 1):
                seen.add((a, b))
    return sorted(seen, key=lambda ab: (ab[0] * c + ab[1], ab)), "; ".join(parts)


def stability_decision(S: Scroll, P: BundlePresentation, mode: str = "stable",
                       assume_general: bool = False) -> StabilityVerdict:
    if mode not in MODES:
        raise DomainError(f"unknown mode {mode!r}; choose from {', '.join(MODES)}")
    c1, _ = chern_data(S, P)
    mu = Fraction(intersect_curve_divisor(S, mul_divisors(c1, H), H), 2)
    st, ss = _thresholds(mu)
    thr = st if mode == "stable" else ss
    pairs, bound = _enumerate(S, dominating_line_bundles(S, P), thr)
    cells, assumptions = [], []
    for a, b in pairs:
        B = DivisorClass(a, b)
        bt = bundle_twist_cohomology(S, P, B, assume_general)
        assumptions.extend(x for x in bt.assumptions if x not in assumptions)
        cells.append(StabilityCell(B, a * S.c + b, bt.table[0]))
    nonzero = [x for x in cells if x.h0.lo > 0]
    unresolved = tuple(x for x in cells if not x.h0.is_exact and x.h0.lo == 0)
    destab = [x for x in nonzero if x.delta <= ss]
    if destab:
        verdict, witness = "Unstable", destab[0]
    elif unresolved and (mode == "semistable" or not nonzero):
        verdict, witness = "Undetermined", None
    elif mode == "stable" and nonzero:
        # sections only at delta = -mu: semistable, with a witness against stability
        verdict, witness = ("Semistable" if not [u for u in unresolved if u.delta <= ss]
                            else "Undetermined"), nonzero[0]
    else:
        verdict, witness = ("Stable" if mode == "stable" else "Semistable"), None
    return StabilityVerdict(verdict, mode, mu, thr, witness, tuple(cells), unresolved, bound,
                            tuple(assumptions))


# --- named examples ---------------------------------------------------------------

EXAMPLES = ("ulrich_twist", "ulrich_section_locus", "p1xp2_counterexample")


def p1xp2_bundle() -> tuple[Scroll, SerreBundle]:
    """On S(1,1,1): a line in a fibre as zero locus, c1(F) = H-5F, E = F(-H+3F)."""
    S = Scroll(1, 1, 1)
    fam = curve_family(S, "line_in_fiber")
    return S, SerreBundle(SerreDatum(fam, 1, DivisorClass(1, -5), DivisorClass(-1, 3)))


@dataclass(frozen=True)
class ExampleReport:
    name: str
    presentation: BundlePresentation
    c1: DivisorClass
    c2: CurveClass
    tables: dict  # label -> CohTable
    verdict: StabilityVerdict | None
    splitting: str
    facts: dict = field(default_factory=dict)


def named_examples(S: Scroll, name: str, assume_general: bool = False) -> ExampleReport:
    if name == "ulrich_twist":
        P = OmegaTwistBundle(DivisorClass(1, -1))
        c1, c2 = chern_data(S, P)
        tables = {
            "E": bundle_twist_cohomology(S, P).table,
            "E(-H)": bundle_twist_cohomology(S, P, DivisorClass(-1, 0)).table,
        }
        return ExampleReport(name, P, c1, c2, tables, stability_decision(S, P, "stable"),
                             "O + O(-1) on a generic line in a fibre (recorded, not computed)")
    if name == "ulrich_section_locus":
        if S.a0 != S.a1 or S.a2 <= S.a0:
            raise DomainError(f"ulrich_section_locus needs S(a,a,b) with a < b, got {S}")
        a, b = S.a0, S.a2
        P = OmegaTwistBundle(DivisorClass(2, -(a + b)))
        c1, c2 = chern_data(S, P)
        table = bundle_twist_cohomology(S, P).table
        facts = {"h0": table[0].value, "stated_h0": 1, "zero_locus_class": c2,
                 "ruling_curve_class": CurveClass(1, -(a + b))}
        return ExampleReport(name, P, c1, c2, {"E": table}, None,
                             "not recorded", facts)
    if name == "p1xp2_counterexample":
        S0, P = p1xp2_bundle()
        if S != S0:
            raise DomainError("p1xp2_counterexample lives on S(1,1,1)")
        c1, c2 = chern_data(S, P)
        tables = {
            "E": bundle_twist_cohomology(S, P, assume_general=assume_general).table,
            "E(-H)": bundle_twist_cohomology(S, P, DivisorClass(-1, 0), assume_general).table,
            "E(H-3F)": bundle_twist_cohomology(S, P, DivisorClass(1, -3), assume_general).table,
        }
        verdict = stability_decision(S, P, "semistable", assume_general)
        return ExampleReport(name, P, c1, c2, tables, verdict,
                             "not recorded", {"instanton_c1": c1 == DivisorClass(-1, 1)})
    raise DomainError(f"unknown example {name!r}; choose from {', '.join(EXAMPLES)}")


def extension_bundle(S: Scroll, k2: int) -> LineExtension:
    """The k1 = 0 extension 0 -> O(-k2 F) -> E -> O(-H+(c+k2-2)F) -> 0."""
    return LineExtension(DivisorClass(0, -k2), DivisorClass(-1, S.c + k2 - 2))


def rank_two(S: Scroll, P: BundlePresentation) -> RankTwo:
    c1, c2 = chern_data(S, P)
    return RankTwo(c1, c2)
