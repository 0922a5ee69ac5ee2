"""Numerical invariants of H-instanton bundles on a scroll.

An H-instanton here is a rank-2 bundle E with c1 = -H+(c-2)F, c2 = k1 H^2 + k2 HF,
no sections and h^1(E(-H)) = 0.  The functions below gate admissible Chern data,
fill cohomology tables on the Beilinson window from vanishing rules, and do the
dimension bookkeeping of the moduli constructions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .chow import (
    CurveClass,
    DivisorClass,
    LineBundle,
    OmegaTwist,
    Scroll,
    StructureSheafCurve,
    euler_pairing,
    intersect_curve_divisor,
    mul_divisors,
)
from .cohomology import line_bundle_cohomology
from .errors import DomainError, InternalInconsistency
from .riemann_roch import (
    InstantonNumerics,
    chi_endomorphism,
    chi_instanton_twist,
    chi_sheaf,
)
from .symbolic import SymbolicCount

LINE_CLASS = CurveClass(0, 1)


# --- charge and admissibility ------------------------------------------------


def charge_and_slope(n: InstantonNumerics) -> tuple[int, Fraction]:
    """Charge H.c2 = c k1 + k2 and slope c1.H^2 / 2 = -1."""
    S = n.S
    charge = intersect_curve_divisor(S, n.c2, DivisorClass(1, 0))
    slope = Fraction(intersect_curve_divisor(S, mul_divisors(n.c1, DivisorClass(1, 0)), DivisorClass(1, 0)), 2)
    return charge, slope


def coefficient_sum_charge(n: InstantonNumerics) -> int:
    """The alternative convention k1 + k2, reported next to the charge."""
    return n.k1 + n.k2


@dataclass(frozen=True)
class AdmissibilityVerdict:
    admissible: bool
    reason: str
    minimal: bool
    charge: int


def admissible(n: InstantonNumerics) -> AdmissibilityVerdict:
    c, k1, k2 = n.S.c, n.k1, n.k2
    charge, _ = charge_and_slope(n)
    if k1 < 0:
        return AdmissibilityVerdict(False, "k1 must be nonnegative", False, charge)
    if k2 < 1 - c * k1:
        return AdmissibilityVerdict(False, "k2 must be at least 1-ck1 (h1(E) >= 0)", False, charge)
    if k1 >= 2 and k2 == 1 - c * k1:
        return AdmissibilityVerdict(False, "k2 must exceed 1-ck1 for k1≥2", False, charge)
    return AdmissibilityVerdict(True, "admissible", charge == 1, charge)


def require_admissible(n: InstantonNumerics) -> None:
    v = admissible(n)
    if not v.admissible:
        raise DomainError(f"inadmissible: {v.reason}")


# --- vanishing tables --------------------------------------------------------


@dataclass(frozen=True)
class VanishingEntry:
    """One h^i entry: a symbolic count (None when unresolved) with its justification."""

    count: SymbolicCount | None
    rule: str

    @property
    def is_exact(self) -> bool:
        return self.count is not None and self.count.is_constant


@dataclass
class VanishingTable:
    n: InstantonNumerics
    cells: dict = field(default_factory=dict)  # twist descriptor -> tuple of 4 entries

    def __getitem__(self, twist) -> tuple:
        try:
            return self.cells[twist]
        except KeyError:
            raise DomainError(f"{twist} lies outside the Beilinson window") from None

    def numeric(self, twist, assignment=None) -> tuple:
        """Evaluate a cell, symbols defaulting to zero; unresolved entries give None."""
        return tuple(
            None if e.count is None else e.count.evaluate(assignment) for e in self[twist]
        )

    def infeasible(self) -> tuple:
        """Cells whose forced value is a negative integer: no bundle has these invariants."""
        return tuple(
            (t, i, e.count.const)
            for t, entries in self.cells.items()
            for i, e in enumerate(entries)
            if e.is_exact and e.count.const < 0
        )

    def exact_values(self, twist) -> tuple | None:
        entries = self[twist]
        if all(e.is_exact for e in entries):
            return tuple(e.count.const for e in entries)
        return None


def window_bounds(S: Scroll) -> range:
    return range(-S.c - 1, S.c + 2)


def omega_window(S: Scroll) -> tuple:
    c = S.c
    return tuple(
        OmegaTwist(DivisorClass(1, b)) for b in sorted({-1, -2, 2 - c, 1 - c}, reverse=True)
    )


def _symbol_sites(S: Scroll) -> dict:
    """Named unresolved entries: (twist, degree) -> symbol."""
    c = S.c
    return {
        (LineBundle(DivisorClass(0, 3 - c)), 2): "α",
        (LineBundle(DivisorClass(0, 2 - c)), 2): "β",
        (LineBundle(DivisorClass(-2, c - 1)), 1): "θ",
        (OmegaTwist(DivisorClass(1, 1 - c)), 2): "δ",
        (OmegaTwist(DivisorClass(1, 2 - c)), 2): "γ",
    }


def _line_zero_rules(n: InstantonNumerics, a: int, b: int) -> dict:
    """Degree -> rule name for the vanishings proven directly at E(aH+bF)."""
    c, a0 = n.S.c, n.S.a0
    zeros: dict = {}
    if a * c + b <= 0:
        zeros[0] = "slope: h0(E(B))=0 for H^2.B <= 0 (semistability)"
    strictly_semistable_seed = n.k1 == 0 and n.k2 == 1
    if a == 0 and b <= 1 and not (b == 1 and strictly_semistable_seed):
        zeros.setdefault(0, "h0 fibre range: h0(E(bF))=0, b<=1")
    if a == -1 and b <= a0 + 1:
        zeros.setdefault(0, "h0 fibre range: h0(E(-H+bF))=0, b<=a0+1")
    if a == -2 and b <= 2 * a0 + 1:
        zeros.setdefault(0, "h0 fibre range: h0(E(-2H+bF))=0, b<=2a0+1")
    if a == -1 and b <= 0:
        zeros[1] = "minus-H column: h1(E(-H+bF))=0, b<=0"
    if a == -1 and b >= 0:
        zeros[2] = "minus-H column: h2(E(-H+bF))=0, b>=0"
    if a == 0 and b in (0, -1):
        zeros[2] = "low twists: h2(E)=h2(E(-F))=0"
    if a in (-1, -2) and b == 0:
        zeros.setdefault(1, "h1 descent: h1(E(-tH))=0, t>=1")
    return zeros


def _fill(zeros: dict, chi: int, sites: dict, twist, partner_sites: dict) -> tuple:
    entries: list = [None] * 4
    for i, rule in zeros.items():
        entries[i] = VanishingEntry(SymbolicCount(0), rule)
    unknown = [i for i in range(4) if entries[i] is None]
    if not unknown:
        if chi != 0:
            raise InternalInconsistency(f"all entries of {twist} vanish but chi = {chi}")
    elif len(unknown) == 1:
        i = unknown[0]
        v = (-1) ** i * chi
        if v < 0 and twist == LineBundle(DivisorClass(0, 0)):
            raise InternalInconsistency(f"forced h^{i}(E) is negative ({v})")
        rule = "euler characteristic" if v >= 0 else "euler characteristic (negative: not realizable)"
        entries[i] = VanishingEntry(SymbolicCount(v), rule)
    elif unknown == [1, 2]:
        named = {i: sites.get((twist, i)) or partner_sites.get(i) for i in (1, 2)}
        if named[2]:
            sym = SymbolicCount.symbol(named[2])
            entries[2] = VanishingEntry(sym, f"symbol {named[2]}")
            entries[1] = VanishingEntry(sym - chi, f"euler characteristic with {named[2]}")
        elif named[1]:
            sym = SymbolicCount.symbol(named[1])
            entries[1] = VanishingEntry(sym, f"symbol {named[1]}")
            entries[2] = VanishingEntry(sym + chi, f"euler characteristic with {named[1]}")
    for i in range(4):
        if entries[i] is None:
            entries[i] = VanishingEntry(None, "unresolved")
    return tuple(entries)


@lru_cache(maxsize=4096)
def vanishing_table(n: InstantonNumerics) -> VanishingTable:
    """Cohomology of E tensor the Beilinson window objects, from named vanishing rules."""
    require_admissible(n)
    S = n.S
    sites = _symbol_sites(S)
    table = VanishingTable(n)
    for a in (-2, -1, 0):
        for b in window_bounds(S):
            twist = LineBundle(DivisorClass(a, b))
            zeros = _line_zero_rules(n, a, b)
            pa, pb = -a - 2, -b
            for i, rule in _line_zero_rules(n, pa, pb).items():
                zeros.setdefault(3 - i, f"duality with E({DivisorClass(pa, pb)}): {rule}")
            partner = LineBundle(DivisorClass(pa, pb))
            partner_sites = {3 - i: s for (t, i), s in sites.items() if t == partner}
            chi = chi_sheaf(S, n.twisted(DivisorClass(a, b)))
            table.cells[twist] = _fill(zeros, chi, sites, twist, partner_sites)
    small = S.a2 <= 2
    for twist in omega_window(S):
        b = twist.D.b
        zeros = {}
        if small and b in (-1, -2, 2 - S.c):
            for i in (0, 2, 3):
                zeros[i] = "omega column (a2<=2): h^i=0 for i!=1"
        if small and b == 1 - S.c:
            zeros[0] = zeros[3] = "omega column (a2<=2): h0=h3=0"
        # Omega(H+bF) sits inside the sum of O((a_i+b)F) and is a quotient of the sum of O(-H+(c-a_i+b)F)
        fibre = [LineBundle(DivisorClass(0, ai + b)) for ai in S.a]
        if all(t in table.cells and table.cells[t][0].count == SymbolicCount(0) for t in fibre):
            zeros.setdefault(0, "subsheaf of fibre twists with h0=0")
        lhs = [LineBundle(DivisorClass(-1, S.c - ai + b)) for ai in S.a]
        if all(t in table.cells and table.cells[t][3].count == SymbolicCount(0) for t in lhs):
            zeros.setdefault(3, "quotient of minus-H twists with h3=0")
        chi = chi_instanton_twist(n, "Omega(H+bF)", b)
        table.cells[twist] = _fill(zeros, chi, sites, twist, {})
    return table


# --- k1 = 0 ------------------------------------------------------------------


@dataclass(frozen=True)
class ExtensionData:
    sub: DivisorClass
    quotient: DivisorClass
    c1_matches: bool
    c2_matches: bool
    t0: int

    def h0_fibre_twist(self, S: Scroll, t: int) -> int:
        """h0(E(tF)) from the extension, exact because h0 of the quotient twist vanishes."""
        sub = line_bundle_cohomology(S, self.sub + DivisorClass(0, t))[0].value
        quo = line_bundle_cohomology(S, self.quotient + DivisorClass(0, t))[0].value
        if quo != 0:
            raise InternalInconsistency("quotient twist unexpectedly has sections")
        return sub


def k1zero_classify(n: InstantonNumerics) -> ExtensionData:
    if n.k1 != 0:
        raise DomainError("the extension description needs k1 = 0")
    if n.k2 < 1:
        raise DomainError("k1 = 0 requires k2 >= 1")
    S = n.S
    sub = DivisorClass(0, -n.k2)
    quotient = DivisorClass(-1, S.c + n.k2 - 2)
    c1_ok = sub + quotient == n.c1
    c2_ok = mul_divisors(sub, quotient) == n.c2
    if not (c1_ok and c2_ok):
        raise InternalInconsistency("extension Chern classes do not match")
    data = ExtensionData(sub, quotient, c1_ok, c2_ok, n.k2)
    # t0 is the smallest fibre twist with a section
    if data.h0_fibre_twist(S, n.k2 - 1) != 0 or data.h0_fibre_twist(S, n.k2) != 1:
        raise InternalInconsistency("minimal section twist is not k2")
    return data


# --- moduli dimensions -------------------------------------------------------


MODULI_FORMULAS = ("teo1", "teo2", "serremoduli")


def moduli_dimension(n: InstantonNumerics, formula: str) -> int:
    S, c, k1, k2 = n.S, n.S.c, n.k1, n.k2
    if formula == "teo1":
        if k1 != 1:
            raise DomainError("the k1=1 family formula needs k1 = 1")
        return 6 * (c - 1 + k2)
    if formula == "teo2":
        return 2 * (c - 5 + 2 * k1 * (c + 1) + 3 * k2)
    if formula == "serremoduli":
        return 2 * c - 10 - 2 * intersect_curve_divisor(S, n.c2, S.canonical)
    raise DomainError(f"unknown formula {formula!r}; choose from {', '.join(MODULI_FORMULAS)}")


def ext1_from_chi(n: InstantonNumerics) -> int:
    """ext^1(E,E) = 1 - chi(E,E) when hom = 1 and ext^2 = ext^3 = 0."""
    return 1 - chi_endomorphism(n)


@dataclass(frozen=True)
class ElementaryTransformation:
    result: InstantonNumerics
    ext1: int
    chi_E_L: int
    chi_L_E: int
    chi_L_L: int
    increment: int
    published_increment: int = 4
    published_chi_E_L: int = 1


def elementary_transformation(n: InstantonNumerics, ext1: int) -> ElementaryTransformation:
    """Kernel of E -> O_L for a line L in a fibre: c2 grows by HF."""
    if ext1 != ext1_from_chi(n):
        raise DomainError(f"ext1 must equal 1 - chi(E,E) = {ext1_from_chi(n)}")
    S = n.S
    E = n.descriptor
    L = StructureSheafCurve(LINE_CLASS, rational=True)
    chi_EL = euler_pairing(S, E, L)
    chi_LE = euler_pairing(S, L, E)
    chi_LL = euler_pairing(S, L, L)
    new = InstantonNumerics(S, n.k1, n.k2 + 1)
    chi_new = chi_endomorphism(n) - chi_EL - chi_LE + chi_LL
    if chi_new != chi_endomorphism(new):
        raise InternalInconsistency("pairing expansion disagrees with chi(End) of the new data")
    return ElementaryTransformation(new, 1 - chi_new, chi_EL, chi_LE, chi_LL, 1 - chi_new - ext1)


# --- classical comparisons ---------------------------------------------------


def _p3_instanton_chi(c2: Fraction | int, t: int) -> Fraction:
    # rank 2, c1 = 0 on P^3: chi(F(t)) = 2 binom(t+3,3) - c2 (t+2)
    return Fraction(2 * (t + 1) * (t + 2) * (t + 3), 6) - c2 * (t + 2)


def veronese_p3(d: int, k: int | None = None) -> dict:
    """H-instantons on (P^3, O(d)): the charge bound and the monad multiplicities."""
    if d < 1:
        raise DomainError("d must be positive")
    bound = Fraction((d - 1) * (d + 1), 3) + (d - 2) ** 2
    minimal = math.ceil(bound)
    # oracle: chi(F(d-2)) <= 0 for the classical instanton F = E(2-d)
    threshold_c2 = Fraction((d - 1) * (d + 1), 3)
    if _p3_instanton_chi(threshold_c2, d - 2) != 0:
        raise InternalInconsistency("P^3 Riemann-Roch does not vanish at the bound")
    out = {
        "d": d,
        "bound": bound,
        "minimal_charge": minimal,
        "bound_attained": bound.denominator == 1,
    }
    if k is not None:
        m = k - (d - 2) ** 2
        if m < 0:
            raise DomainError(f"charge {k} is below (d-2)^2")
        out["monad"] = [
            {"twist": d - 3, "multiplicity": m},
            {"twist": d - 2, "multiplicity": 2 * m + 2},
            {"twist": d - 1, "multiplicity": m},
        ]
    return out


def fano_index1(g: int, c2: int) -> dict:
    """Index-one Fano threefolds of genus g: chi(E) = g + 3 - c2 and the bound c2 >= g+3."""
    if g < 2:
        raise DomainError("genus must be at least 2")
    chi = Fraction(2 * g - 2 - 3 * c2 + g + 11, 3)
    # oracle: rank-2 Riemann-Roch with c1 = H, K = -H, H^3 = 2g-2, H.c2(T) = 24
    deg = 2 * g - 2
    rr = 2 + Fraction(deg - 3 * c2, 6) + Fraction(deg - 2 * c2, 4) + Fraction(deg + 24, 12)
    if chi != rr:
        raise InternalInconsistency("index-one Fano chi disagrees with Riemann-Roch")
    return {"g": g, "c2": c2, "chi": chi, "threshold": g + 3, "admissible": c2 >= g + 3}


def classical_comparisons(kind: str, *args) -> dict:
    if kind == "veronese_p3":
        return veronese_p3(*args)
    if kind == "fano_index1":
        return fano_index1(*args)
    raise DomainError(f"unknown comparison {kind!r}")
