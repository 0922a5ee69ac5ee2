"""Chow ring arithmetic on a three-dimensional rational normal scroll.

The scroll S(a0, a1, a2) is P(O(a0) + O(a1) + O(a2)) over P^1.  Its Chow ring
has basis 1; H, F; H^2, HF; pt = H^2 F subject to H^3 = c, H^2 F = 1, F^2 = 0,
where c = a0 + a1 + a2.  Classes in degree one and two are stored as integer
(or rational) coefficient pairs over (H, F) and (H^2, HF) respectively.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

from .errors import DomainError, InternalInconsistency, UnsupportedDescriptor

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class Scroll:
    a0: int
    a1: int
    a2: int

    def __post_init__(self) -> None:
        for v in (self.a0, self.a1, self.a2):
            if not isinstance(v, int) or isinstance(v, bool):
                raise DomainError(f"scroll entries must be integers, got {v!r}")
        if not 0 < self.a0 <= self.a1 <= self.a2:
            raise DomainError(
                f"scroll needs 0 < a0 <= a1 <= a2, got ({self.a0},{self.a1},{self.a2})"
            )

    @property
    def c(self) -> int:
        """Degree of S in its embedding."""
        return self.a0 + self.a1 + self.a2

    @property
    def a(self) -> tuple[int, int, int]:
        return (self.a0, self.a1, self.a2)

    @property
    def canonical(self) -> "DivisorClass":
        return DivisorClass(-3, self.c - 2)

    @property
    def tangent_c2(self) -> "CurveClass":
        return CurveClass(3, 6 - 2 * self.c)

    def __str__(self) -> str:
        return f"S({self.a0},{self.a1},{self.a2})"


@dataclass(frozen=True, order=True)
class DivisorClass:
    """The class aH + bF."""

    a: int
    b: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b)

    def __mul__(self, k: int) -> "DivisorClass":
        return DivisorClass(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_divisor(self.a, self.b)


@dataclass(frozen=True, order=True)
class CurveClass:
    """The class k1 H^2 + k2 HF."""

    k1: int
    k2: int

    def __add__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(self.k1 + other.k1, self.k2 + other.k2)

    def __sub__(self, other: "CurveClass") -> "CurveClass":
        return CurveClass(self.k1 - other.k1, self.k2 - other.k2)

    def __mul__(self, k: int) -> "CurveClass":
        return CurveClass(k * self.k1, k * self.k2)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return format_divisor(self.k1, self.k2, "H^2", "HF")


def format_divisor(a: int, b: int, x: str = "H", y: str = "F") -> str:
    """Render aX+bY compactly, e.g. ``-H+2F`` or ``0``."""
    parts = []
    for coeff, sym in ((a, x), (b, y)):
        if coeff == 0:
            continue
        if coeff == 1:
            s = sym
        elif coeff == -1:
            s = "-" + sym
        else:
            s = f"{coeff}{sym}"
        if parts and not s.startswith("-"):
            s = "+" + s
        parts.append(s)
    return "".join(parts) or "0"


def mul_divisors(d1: DivisorClass, d2: DivisorClass) -> CurveClass:
    """Product of two divisor classes, using F^2 = 0."""
    return CurveClass(d1.a * d2.a, d1.a * d2.b + d2.a * d1.b)


def intersect_curve_divisor(S: Scroll, gamma: CurveClass, d: DivisorClass) -> int:
    """Degree of (k1 H^2 + k2 HF) . (aH + bF)."""
    return gamma.k1 * d.a * S.c + gamma.k1 * d.b + gamma.k2 * d.a


def _pt(c: int, x1: tuple, x2: tuple) -> Rational:
    # (aH+bF)(k1H^2+k2HF) as a multiple of the point class
    a, b = x1
    k1, k2 = x2
    return k1 * a * c + k1 * b + k2 * a


@dataclass(frozen=True)
class ChernCharacter:
    """Graded rational class ch0 + ch1 + ch2 + ch3 in A*(S)_Q."""

    ch0: Fraction
    ch1: tuple[Fraction, Fraction]
    ch2: tuple[Fraction, Fraction]
    ch3: Fraction

    @staticmethod
    def make(ch0: Rational = 0, ch1=(0, 0), ch2=(0, 0), ch3: Rational = 0) -> "ChernCharacter":
        F = Fraction
        return ChernCharacter(F(ch0), (F(ch1[0]), F(ch1[1])), (F(ch2[0]), F(ch2[1])), F(ch3))

    @staticmethod
    def zero() -> "ChernCharacter":
        return ChernCharacter.make()

    def __add__(self, o: "ChernCharacter") -> "ChernCharacter":
        return ChernCharacter(
            self.ch0 + o.ch0,
            (self.ch1[0] + o.ch1[0], self.ch1[1] + o.ch1[1]),
            (self.ch2[0] + o.ch2[0], self.ch2[1] + o.ch2[1]),
            self.ch3 + o.ch3,
        )

    def scale(self, k: Rational) -> "ChernCharacter":
        return ChernCharacter(
            self.ch0 * k,
            (self.ch1[0] * k, self.ch1[1] * k),
            (self.ch2[0] * k, self.ch2[1] * k),
            self.ch3 * k,
        )

    def __neg__(self) -> "ChernCharacter":
        return self.scale(-1)

    def __sub__(self, o: "ChernCharacter") -> "ChernCharacter":
        return self + (-o)

    def dual(self) -> "ChernCharacter":
        """Negate odd-degree parts, i.e. ch of the derived dual."""
        return ChernCharacter(
            self.ch0, (-self.ch1[0], -self.ch1[1]), self.ch2, -self.ch3
        )

    def is_zero(self) -> bool:
        return not (self.ch0 or any(self.ch1) or any(self.ch2) or self.ch3)

    def as_tuple(self) -> tuple:
        return (self.ch0, self.ch1, self.ch2, self.ch3)

    def mul(self, S: Scroll, o: "ChernCharacter") -> "ChernCharacter":
        """Ring product in A*(S)_Q."""
        c = S.c
        x0, x1, x2, x3 = self.ch0, self.ch1, self.ch2, self.ch3
        y0, y1, y2, y3 = o.ch0, o.ch1, o.ch2, o.ch3
        d2 = (x1[0] * y1[0], x1[0] * y1[1] + x1[1] * y1[0])
        return ChernCharacter(
            x0 * y0,
            (x0 * y1[0] + y0 * x1[0], x0 * y1[1] + y0 * x1[1]),
            (x0 * y2[0] + y0 * x2[0] + d2[0], x0 * y2[1] + y0 * x2[1] + d2[1]),
            x0 * y3 + y0 * x3 + _pt(c, x1, y2) + _pt(c, y1, x2),
        )


# --- sheaf descriptors -------------------------------------------------------


@dataclass(frozen=True)
class LineBundle:
    D: DivisorClass

    def __str__(self) -> str:
        return f"O({self.D})"


@dataclass(frozen=True)
class OmegaTwist:
    """The relative cotangent bundle twisted by D."""

    D: DivisorClass

    def __str__(self) -> str:
        return f"Omega({self.D})"


@dataclass(frozen=True)
class OmegaDualTwist:
    D: DivisorClass

    def __str__(self) -> str:
        return f"OmegaDual({self.D})"


@dataclass(frozen=True)
class EndOmegaTwist:
    """Omega tensor Omega^dual, twisted by D (rank four)."""

    D: DivisorClass

    def __str__(self) -> str:
        return f"End(Omega)({self.D})"


@dataclass(frozen=True)
class RankTwo:
    """A rank-2 bundle known only through (c1, c2)."""

    c1: DivisorClass
    c2: CurveClass

    def __str__(self) -> str:
        return f"RankTwo(c1={self.c1}, c2={self.c2})"


@dataclass(frozen=True)
class StructureSheafCurve:
    gamma: CurveClass
    rational: bool = True

    def __str__(self) -> str:
        return f"O_C[{self.gamma}]"


@dataclass(frozen=True)
class FormalSum:
    terms: tuple  # tuple of (descriptor, int multiplicity)

    def __str__(self) -> str:
        out = []
        for d, m in self.terms:
            out.append(str(d) if m == 1 else f"{m}*{d}")
        return " + ".join(out) or "0"


SheafDescriptor = Union[
    LineBundle,
    OmegaTwist,
    OmegaDualTwist,
    EndOmegaTwist,
    RankTwo,
    StructureSheafCurve,
    FormalSum,
]


def formal_sum(items: Iterable[tuple]) -> FormalSum:
    return FormalSum(tuple((d, int(m)) for d, m in items))


def omega_dual_as_omega(D: DivisorClass, S: Scroll) -> OmegaTwist:
    """Omega^dual(D) = Omega(D + 3H - cF), since Omega has rank two and det -3H+cF."""
    return OmegaTwist(D + DivisorClass(3, -S.c))


def rank_two_twist(c1: DivisorClass, c2: CurveClass, D: DivisorClass) -> RankTwo:
    """Chern data of E(D) for a rank-2 E with the given Chern classes."""
    return RankTwo(c1 + 2 * D, c2 + mul_divisors(c1, D) + mul_divisors(D, D))


def twist(x: SheafDescriptor, D: DivisorClass) -> SheafDescriptor:
    """Tensor a descriptor by O(D)."""
    if isinstance(x, LineBundle):
        return LineBundle(x.D + D)
    if isinstance(x, OmegaTwist):
        return OmegaTwist(x.D + D)
    if isinstance(x, OmegaDualTwist):
        return OmegaDualTwist(x.D + D)
    if isinstance(x, EndOmegaTwist):
        return EndOmegaTwist(x.D + D)
    if isinstance(x, RankTwo):
        return rank_two_twist(x.c1, x.c2, D)
    if isinstance(x, FormalSum):
        return FormalSum(tuple((twist(d, D), m) for d, m in x.terms))
    raise UnsupportedDescriptor(f"cannot twist {x}")


def rank(x: SheafDescriptor) -> int:
    if isinstance(x, LineBundle):
        return 1
    if isinstance(x, (OmegaTwist, OmegaDualTwist, RankTwo)):
        return 2
    if isinstance(x, EndOmegaTwist):
        return 4
    if isinstance(x, StructureSheafCurve):
        return 0
    if isinstance(x, FormalSum):
        return sum(m * rank(d) for d, m in x.terms)
    raise UnsupportedDescriptor(str(x))


# --- Chern characters and Todd class ----------------------------------------


def exp_divisor(S: Scroll, D: DivisorClass) -> ChernCharacter:
    """Truncated exp(D) = 1 + D + D^2/2 + D^3/6."""
    sq = mul_divisors(D, D)
    cube = intersect_curve_divisor(S, sq, D)
    return ChernCharacter(
        Fraction(1),
        (Fraction(D.a), Fraction(D.b)),
        (Fraction(sq.k1, 2), Fraction(sq.k2, 2)),
        Fraction(cube, 6),
    )


def _omega_ch(S: Scroll, D: DivisorClass) -> ChernCharacter:
    # relative Euler sequence: ch(Omega) = exp(-H) * sum_i exp(a_i F) - 1
    acc = ChernCharacter.zero()
    for ai in S.a:
        acc = acc + exp_divisor(S, DivisorClass(-1, ai))
    return (acc - ChernCharacter.make(1)).mul(S, exp_divisor(S, D))


def _omega_dual_ch(S: Scroll, D: DivisorClass) -> ChernCharacter:
    # dual Euler sequence: ch(Omega^dual) = exp(H) * sum_i exp(-a_i F) - 1
    acc = ChernCharacter.zero()
    for ai in S.a:
        acc = acc + exp_divisor(S, DivisorClass(1, -ai))
    return (acc - ChernCharacter.make(1)).mul(S, exp_divisor(S, D))


def rank_two_ch(S: Scroll, c1: DivisorClass, c2: CurveClass) -> ChernCharacter:
    sq = mul_divisors(c1, c1)
    cube = intersect_curve_divisor(S, sq, c1)
    c1c2 = intersect_curve_divisor(S, c2, c1)
    return ChernCharacter(
        Fraction(2),
        (Fraction(c1.a), Fraction(c1.b)),
        (Fraction(sq.k1 - 2 * c2.k1, 2), Fraction(sq.k2 - 2 * c2.k2, 2)),
        Fraction(cube - 3 * c1c2, 6),
    )


@lru_cache(maxsize=None)
def todd_class(S: Scroll) -> ChernCharacter:
    """Todd class of S from c1(T_S) = -K_S and c2(T_S) = 3H^2 + (6-2c)HF."""
    K = S.canonical
    c2T = S.tangent_c2
    K2 = mul_divisors(K, K)
    td3 = Fraction(intersect_curve_divisor(S, c2T, -K), 24)
    return ChernCharacter(
        Fraction(1),
        (Fraction(-K.a, 2), Fraction(-K.b, 2)),
        (Fraction(K2.k1 + c2T.k1, 12), Fraction(K2.k2 + c2T.k2, 12)),
        td3,
    )


def chern_character(S: Scroll, x: SheafDescriptor) -> ChernCharacter:
    if isinstance(x, LineBundle):
        return exp_divisor(S, x.D)
    if isinstance(x, OmegaTwist):
        return _omega_ch(S, x.D)
    if isinstance(x, OmegaDualTwist):
        return _omega_dual_ch(S, x.D)
    if isinstance(x, EndOmegaTwist):
        zero = DivisorClass(0, 0)
        return _omega_ch(S, zero).mul(S, _omega_dual_ch(S, x.D))
    if isinstance(x, RankTwo):
        return rank_two_ch(S, x.c1, x.c2)
    if isinstance(x, StructureSheafCurve):
        if not x.rational:
            raise UnsupportedDescriptor("only rational curves (chi(O_C)=1) are supported")
        g = x.gamma
        if intersect_curve_divisor(S, g, DivisorClass(1, 0)) < 0:
            raise DomainError(f"curve class {g} has negative degree")
        td1 = todd_class(S).ch1
        return ChernCharacter.make(0, (0, 0), (g.k1, g.k2), 1 - _pt(S.c, td1, (g.k1, g.k2)))
    if isinstance(x, FormalSum):
        acc = ChernCharacter.zero()
        for d, m in x.terms:
            acc = acc + chern_character(S, d).scale(m)
        return acc
    raise UnsupportedDescriptor(f"unknown descriptor {x!r}")


def integrate(S: Scroll, x: ChernCharacter) -> Fraction:
    """Degree of the top-dimensional part against the point class."""
    return x.ch3


def integral_against_todd(S: Scroll, ch: ChernCharacter, td: ChernCharacter | None = None) -> Fraction:
    """Return the integral of ch * td over S without forming the full product."""
    td = td if td is not None else todd_class(S)
    c = S.c
    return (
        ch.ch3
        + _pt(c, ch.ch1, td.ch2)
        + _pt(c, td.ch1, ch.ch2)
        + ch.ch0 * td.ch3
    )


def _as_int(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InternalInconsistency(f"{what} is not integral: {value}")
    return int(value)


def euler_pairing(S: Scroll, x: SheafDescriptor, y: SheafDescriptor) -> int:
    """chi(x, y) = integral of ch(x)^dual . ch(y) . td(S)."""
    prod = chern_character(S, x).dual().mul(S, chern_character(S, y))
    return _as_int(integral_against_todd(S, prod), f"chi({x}, {y})")


def euler_characteristic(S: Scroll, x: SheafDescriptor) -> int:
    return _as_int(integral_against_todd(S, chern_character(S, x)), f"chi({x})")
