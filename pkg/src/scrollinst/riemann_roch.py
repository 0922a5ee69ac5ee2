"""Euler characteristics of instanton twists and endomorphism bundles."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chow import (
    ChernCharacter,
    CurveClass,
    DivisorClass,
    RankTwo,
    Scroll,
    SheafDescriptor,
    chern_character,
    euler_characteristic,
    euler_pairing,
    formal_sum,
    intersect_curve_divisor,
    mul_divisors,
    rank_two_twist,
)
from .errors import DomainError, InternalInconsistency


@dataclass(frozen=True)
class InstantonNumerics:
    """Numerical data of a rank-2 bundle with c1 = -H+(c-2)F and c2 = k1 H^2 + k2 HF."""

    S: Scroll
    k1: int
    k2: int

    @property
    def c1(self) -> DivisorClass:
        return DivisorClass(-1, self.S.c - 2)

    @property
    def c2(self) -> CurveClass:
        return CurveClass(self.k1, self.k2)

    @property
    def descriptor(self) -> RankTwo:
        return RankTwo(self.c1, self.c2)

    def twisted(self, D: DivisorClass) -> RankTwo:
        return rank_two_twist(self.c1, self.c2, D)


def chi_sheaf(S: Scroll, x: SheafDescriptor) -> int:
    """Integral of ch(x) td(S)."""
    return euler_characteristic(S, x)


def rank_two_rr(S: Scroll, c1: DivisorClass, c2: CurveClass) -> Fraction:
    """Closed rank-2 Riemann-Roch, written out term by term.

    chi = 2 + (c1^3 - 3 c1 c2)/6 - K (c1^2 - 2 c2)/4 + c1 (K^2 + c2(T))/12.
    """
    K = S.canonical
    sq = mul_divisors(c1, c1)
    cube = intersect_curve_divisor(S, sq, c1)
    c1c2 = intersect_curve_divisor(S, c2, c1)
    ch2 = CurveClass(sq.k1 - 2 * c2.k1, sq.k2 - 2 * c2.k2)
    td2_num = mul_divisors(K, K) + S.tangent_c2
    return (
        2
        + Fraction(cube - 3 * c1c2, 6)
        - Fraction(intersect_curve_divisor(S, ch2, K), 4)
        + Fraction(intersect_curve_divisor(S, td2_num, c1), 12)
    )


def instanton_twist_rr(n: InstantonNumerics, D: DivisorClass) -> Fraction:
    """chi(E(D)) = 1 - c2.(D+H) + D(2D^2 + K^2 + c2(T))/6 + H.D.(K + 2H + D)."""
    S = n.S
    K = S.canonical
    H = DivisorClass(1, 0)
    DD = mul_divisors(D, D)
    inner = CurveClass(2 * DD.k1, 2 * DD.k2) + mul_divisors(K, K) + S.tangent_c2
    return (
        1
        - intersect_curve_divisor(S, n.c2, D + H)
        + Fraction(intersect_curve_divisor(S, inner, D), 6)
        + intersect_curve_divisor(S, mul_divisors(H, D), K + 2 * H + D)
    )


TWIST_KINDS = ("bF", "H+bF", "-H+bF", "Omega(H-F)", "Omega(H-2F)", "Omega(H+bF)")


def twist_closed_form(n: InstantonNumerics, kind: str, b: int = 0) -> int:
    """Closed-form specializations of chi for the standard instanton twists."""
    c, k1, k2 = n.S.c, n.k1, n.k2
    if kind == "bF":
        return 1 - (c + b) * k1 - k2 + b
    if kind == "H+bF":
        return 2 - (b + 2 * c) * k1 - 2 * k2 + 2 * c + 4 * b
    if kind == "-H+bF":
        return -k1 * b
    if kind == "Omega(H-F)":
        return 2 - 2 * k1 * (c - 1) - k2 - c
    if kind == "Omega(H-2F)":
        return 3 - c - (2 * c - 4) * k1 - k2
    if kind == "Omega(H+bF)":
        return 1 - b - c - (2 * c + 2 * b) * k1 - k2
    raise DomainError(f"unknown twist kind {kind!r}; choose from {', '.join(TWIST_KINDS)}")


def published_omega_h_minus_2f(n: InstantonNumerics) -> int:
    """The displayed variant with k2 subtracted twice, kept for the deviations report."""
    c, k1, k2 = n.S.c, n.k1, n.k2
    return 3 - k2 - k1 * (2 * c - 4) - k2 - c


def expand_twist(n: InstantonNumerics, kind: str, b: int = 0) -> SheafDescriptor:
    """The twist as a descriptor built from rank-2 classes only.

    E tensor Omega(D) is expanded through the relative Euler sequence as
    sum_i E(D - H + a_i F) minus E(D).
    """
    if kind == "bF":
        return n.twisted(DivisorClass(0, b))
    if kind == "H+bF":
        return n.twisted(DivisorClass(1, b))
    if kind == "-H+bF":
        return n.twisted(DivisorClass(-1, b))
    if kind == "Omega(H-F)":
        D = DivisorClass(1, -1)
    elif kind == "Omega(H-2F)":
        D = DivisorClass(1, -2)
    elif kind == "Omega(H+bF)":
        D = DivisorClass(1, b)
    else:
        raise DomainError(f"unknown twist kind {kind!r}")
    items = [(n.twisted(D + DivisorClass(-1, ai)), 1) for ai in n.S.a]
    items.append((n.twisted(D), -1))
    return formal_sum(items)


def chi_instanton_twist(n: InstantonNumerics, kind: str, b: int = 0) -> int:
    """Closed-form chi of a standard twist, certified against the integral of ch.td."""
    value = twist_closed_form(n, kind, b)
    oracle = chi_sheaf(n.S, expand_twist(n, kind, b))
    if value != oracle:
        raise InternalInconsistency(
            f"closed form for {kind} (b={b}) gives {value}, ch.td gives {oracle}"
        )
    return value


def chi_endomorphism(n: InstantonNumerics) -> int:
    """chi(E, E) = 11 - 2c - 4k1(c+1) - 6k2, certified by the pairing integral."""
    S = n.S
    ch = chern_character(S, n.descriptor)
    pairing = euler_pairing(S, n.descriptor, n.descriptor)
    K = S.canonical
    c1 = n.c1
    disc = CurveClass(4 * n.k1, 4 * n.k2) - mul_divisors(c1, c1)
    expansion = 4 + Fraction(intersect_curve_divisor(S, disc, K), 2)
    closed = 11 - 2 * S.c - 4 * n.k1 * (S.c + 1) - 6 * n.k2
    if not (pairing == expansion == closed) or ch.ch0 != 2:
        raise InternalInconsistency(
            f"chi(End) disagreement: pairing {pairing}, expansion {expansion}, closed {closed}"
        )
    return closed


def published_chi_endomorphism(n: InstantonNumerics) -> int:
    """2 K.c2 - 2c + 10, the constant as printed; one less than the derived value."""
    K = n.S.canonical
    return 2 * intersect_curve_divisor(n.S, n.c2, K) - 2 * n.S.c + 10


def ch_of(n: InstantonNumerics) -> ChernCharacter:
    return chern_character(n.S, n.descriptor)
