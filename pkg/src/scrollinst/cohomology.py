"""Cohomology tables for line bundles and relative-cotangent twists.

Everything is pushed forward to P^1, where h0 and h1 of a split bundle are
elementary.  Unresolved dimensions are represented by integer intervals, and
long exact sequences are solved exactly on such intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Optional, Sequence

from .chow import (
    DivisorClass,
    EndOmegaTwist,
    FormalSum,
    LineBundle,
    OmegaDualTwist,
    OmegaTwist,
    Scroll,
    SheafDescriptor,
    omega_dual_as_omega,
)
from .errors import DomainError, InternalInconsistency, UnsupportedDescriptor


@dataclass(frozen=True)
class CohValue:
    """A cohomology dimension: exact when lo == hi; hi=None means unbounded."""

    lo: int
    hi: Optional[int]

    def __post_init__(self) -> None:
        if self.lo < 0 or (self.hi is not None and self.hi < self.lo):
            raise InternalInconsistency(f"invalid cohomology interval [{self.lo},{self.hi}]")

    @staticmethod
    def exact(n: int) -> "CohValue":
        return CohValue(n, n)

    @staticmethod
    def unknown() -> "CohValue":
        return CohValue(0, None)

    @property
    def is_exact(self) -> bool:
        return self.hi == self.lo

    @property
    def value(self) -> int:
        if not self.is_exact:
            raise DomainError(f"value {self} is not exact")
        return self.lo

    def contains(self, n: int) -> bool:
        return self.lo <= n and (self.hi is None or n <= self.hi)

    def __add__(self, o: "CohValue") -> "CohValue":
        hi = None if self.hi is None or o.hi is None else self.hi + o.hi
        return CohValue(self.lo + o.lo, hi)

    def scale(self, m: int) -> "CohValue":
        return CohValue(self.lo * m, None if self.hi is None else self.hi * m)

    def __str__(self) -> str:
        if self.is_exact:
            return str(self.lo)
        return f"[{self.lo},{'inf' if self.hi is None else self.hi}]"

    def to_json(self):
        if self.is_exact:
            return self.lo
        return {"lo": self.lo, "hi": self.hi}


@dataclass(frozen=True)
class CohTable:
    h: tuple  # four CohValue entries, degrees 0..3

    @staticmethod
    def exact(*values: int) -> "CohTable":
        if len(values) != 4:
            raise DomainError("a cohomology table has four entries")
        return CohTable(tuple(CohValue.exact(v) for v in values))

    @staticmethod
    def unknown() -> "CohTable":
        return CohTable(tuple(CohValue.unknown() for _ in range(4)))

    def __getitem__(self, i: int) -> CohValue:
        return self.h[i]

    @property
    def is_exact(self) -> bool:
        return all(v.is_exact for v in self.h)

    @property
    def values(self) -> tuple:
        return tuple(v.value for v in self.h)

    @property
    def chi(self) -> int:
        return sum((-1) ** i * v for i, v in enumerate(self.values))

    def reversed(self) -> "CohTable":
        return CohTable(tuple(reversed(self.h)))

    def __add__(self, o: "CohTable") -> "CohTable":
        return CohTable(tuple(x + y for x, y in zip(self.h, o.h)))

    def scale(self, m: int) -> "CohTable":
        return CohTable(tuple(x.scale(m) for x in self.h))

    def shifted(self, k: int) -> "CohTable":
        """Table of G with h^i(G) = h^{i-k}(self), only for degrees staying in 0..3."""
        out = []
        for i in range(4):
            j = i - k
            out.append(self.h[j] if 0 <= j < 4 else CohValue.exact(0))
        return CohTable(tuple(out))

    def __str__(self) -> str:
        return "(" + ", ".join(str(v) for v in self.h) + ")"

    def to_json(self):
        return [v.to_json() for v in self.h]


ZERO_TABLE = CohTable.exact(0, 0, 0, 0)


# --- P^1 oracle -------------------------------------------------------------


@dataclass(frozen=True)
class P1BundleSum:
    """A split bundle on P^1 given by its multiset of degrees (sorted)."""

    degrees: tuple

    @staticmethod
    def of(degrees) -> "P1BundleSum":
        return P1BundleSum(tuple(sorted(degrees)))

    def __add__(self, o: "P1BundleSum") -> "P1BundleSum":
        return P1BundleSum.of(self.degrees + o.degrees)


def p1_cohomology(B: P1BundleSum, twist: int = 0) -> tuple[int, int]:
    h0 = sum(max(d + twist + 1, 0) for d in B.degrees)
    h1 = sum(max(-d - twist - 1, 0) for d in B.degrees)
    return h0, h1


@lru_cache(maxsize=None)
def _sym(a: tuple, k: int) -> tuple:
    return tuple(sorted(sum(t) for t in combinations_with_replacement(a, k)))


def sym_decompose(S: Scroll, a: int) -> P1BundleSum:
    """Splitting type of Sym^a(O(a0)+O(a1)+O(a2))."""
    if a < 0:
        raise DomainError(f"symmetric power needs a >= 0, got {a}")
    return P1BundleSum(_sym(S.a, a))


# --- line bundles ------------------------------------------------------------


def line_bundle_cohomology(S: Scroll, D: DivisorClass) -> CohTable:
    """h^i(O(aH+bF)) via pushforward to P^1."""
    a, b = D.a, D.b
    if a >= 0:
        h0, h1 = p1_cohomology(sym_decompose(S, a), b)
        return CohTable.exact(h0, h1, 0, 0)
    if a > -3:
        return ZERO_TABLE
    # relative duality: R^2 pi_* O(aH) = (Sym^{-a-3} D)^dual (-c)
    h0, h1 = p1_cohomology(sym_decompose(S, -a - 3), S.c - b - 2)
    return CohTable.exact(0, 0, h1, h0)


def serre_dual_table(S: Scroll, D: DivisorClass) -> CohTable:
    """Oracle: h^i(O(D)) = h^{3-i}(O(K - D))."""
    return line_bundle_cohomology(S, S.canonical - D).reversed()


# --- relative cotangent twists ----------------------------------------------


@lru_cache(maxsize=None)
def _omega_pushforward(a_vec: tuple, a: int) -> tuple:
    """Splitting type of pi_* Omega(aH) for a >= 1.

    By torus weights, each monomial multidegree M of total degree a contributes
    O(M.a_vec) with multiplicity (number of nonzero entries of M) - 1.
    """
    out = []
    for combo in combinations_with_replacement(range(3), a):
        support = len(set(combo))
        deg = sum(a_vec[i] for i in combo)
        out.extend([deg] * (support - 1))
    return tuple(sorted(out))


def omega_pushforward(S: Scroll, a: int) -> P1BundleSum:
    if a < 1:
        raise DomainError("the pushforward description needs a >= 1")
    return P1BundleSum(_omega_pushforward(S.a, a))


def _omega_exact(S: Scroll, D: DivisorClass) -> tuple[CohTable, str]:
    a, b = D.a, D.b
    if a >= 1:
        h0, h1 = p1_cohomology(omega_pushforward(S, a), b)
        rule = "zero for a=1" if a == 1 else "pushforward to P^1"
        return CohTable.exact(h0, h1, 0, 0), rule
    if a == 0:
        return line_bundle_cohomology(S, DivisorClass(0, b)).shifted(1), "shift of O(bF)"
    # Serre duality with Omega^dual = Omega(3H-cF) and K = -3H+(c-2)F
    dual, _ = _omega_exact(S, DivisorClass(-a, -2 - b))
    return dual.reversed(), "Serre duality"


def omega_twist_cohomology(S: Scroll, D: DivisorClass, dual: bool = False) -> CohTable:
    """h^i(Omega(D)) or, with ``dual``, h^i(Omega^dual(D)); always exact."""
    if dual:
        D = omega_dual_as_omega(D, S).D
    return _omega_exact(S, D)[0]


def omega_twist_rule(S: Scroll, D: DivisorClass, dual: bool = False) -> str:
    """Name of the case used to evaluate a twist of Omega or its dual."""
    if dual and D.a == -1:
        return "dual, a=-1: sum of fibre line bundles"
    if dual:
        D = omega_dual_as_omega(D, S).D
    if D.a == 2:
        return "a=2: sum of fibre line bundles"
    return _omega_exact(S, D)[1]


def omega_dual_minus_h(S: Scroll, b: int) -> CohTable:
    """Independent evaluation of Omega^dual(-H+bF) as the sum of O((b-a_j)F)."""
    acc = ZERO_TABLE
    for aj in S.a:
        acc = acc + line_bundle_cohomology(S, DivisorClass(0, b - aj))
    return acc


def omega_two_h(S: Scroll, b: int) -> CohTable:
    """Independent evaluation of Omega(2H+bF) as the sum of O((c-a_j+b)F)."""
    acc = ZERO_TABLE
    for aj in S.a:
        acc = acc + line_bundle_cohomology(S, DivisorClass(0, S.c - aj + b))
    return acc


# --- long exact sequences ---------------------------------------------------


def _sub_lo(lo: int, hi_other: Optional[int]) -> int:
    return 0 if hi_other is None else max(0, lo - hi_other)


def _sub_hi(hi: Optional[int], lo_other: int) -> Optional[int]:
    return None if hi is None else hi - lo_other


def solve_exact_sequence(terms: Sequence[CohValue]) -> list[CohValue]:
    """Sharpest bounds on the dimensions in an exact sequence 0->V1->...->Vn->0.

    Writing r_i for the rank of V_i -> V_{i+1}, exactness means
    v_i = r_{i-1} + r_i with r_0 = r_n = 0.  The constraint graph is a path, so
    forward and backward interval propagation gives exact projections.
    """
    n = len(terms)
    fwd = [(0, 0)]  # feasible r_i from constraints 1..i
    for i in range(n):
        plo, phi = fwd[-1]
        lo = _sub_lo(terms[i].lo, phi)
        hi = _sub_hi(terms[i].hi, plo)
        if hi is not None and hi < lo:
            raise InternalInconsistency("exact sequence has no consistent ranks")
        fwd.append((lo, hi))
    bwd = [(0, 0)] * (n + 1)  # bwd[i]: feasible r_i from constraints i+1..n
    for i in range(n - 1, -1, -1):
        nlo, nhi = bwd[i + 1]
        lo = _sub_lo(terms[i].lo, nhi)
        hi = _sub_hi(terms[i].hi, nlo)
        if hi is not None and hi < lo:
            raise InternalInconsistency("exact sequence has no consistent ranks")
        bwd[i] = (lo, hi)
    if fwd[n][0] > 0 or bwd[0][0] > 0:
        raise InternalInconsistency("exact sequence cannot close up")
    out = []
    for i in range(n):
        llo, lhi = fwd[i]
        rlo, rhi = bwd[i + 1]
        lo = max(terms[i].lo, llo + rlo)
        his = [h for h in (terms[i].hi, None if lhi is None or rhi is None else lhi + rhi) if h is not None]
        hi = min(his) if his else None
        if hi is not None and hi < lo:
            raise InternalInconsistency("exact sequence bounds are contradictory")
        out.append(CohValue(lo, hi))
    return out


def solve_short_exact(A: CohTable, B: CohTable, C: CohTable) -> tuple[CohTable, CohTable, CohTable]:
    """Refine the tables of 0 -> A -> B -> C -> 0 through the long exact sequence."""
    seq = []
    for i in range(4):
        seq += [A[i], B[i], C[i]]
    sol = solve_exact_sequence(seq)
    return (
        CohTable(tuple(sol[3 * i] for i in range(4))),
        CohTable(tuple(sol[3 * i + 1] for i in range(4))),
        CohTable(tuple(sol[3 * i + 2] for i in range(4))),
    )


def _sum_lines(S: Scroll, divisors) -> CohTable:
    acc = ZERO_TABLE
    for D in divisors:
        acc = acc + line_bundle_cohomology(S, D)
    return acc


def omega_les_bounds(S: Scroll, D: DivisorClass) -> CohTable:
    """Bounds on h^i(Omega(D)) using only line bundles and the two Euler-type sequences.

    Used as an independent oracle for :func:`omega_twist_cohomology`.
    """
    unknown = CohTable.unknown()
    # 0 -> Omega(D) -> sum O(D-H+a_i F) -> O(D) -> 0
    mid1 = _sum_lines(S, [D + DivisorClass(-1, ai) for ai in S.a])
    t1, _, _ = solve_short_exact(unknown, mid1, line_bundle_cohomology(S, D))
    # 0 -> O(D-3H+cF) -> sum O(D-2H+(c-a_i)F) -> Omega(D) -> 0
    left2 = line_bundle_cohomology(S, D + DivisorClass(-3, S.c))
    mid2 = _sum_lines(S, [D + DivisorClass(-2, S.c - ai) for ai in S.a])
    _, _, t2 = solve_short_exact(left2, mid2, t1)
    return t2


def end_omega_cohomology(S: Scroll, D: DivisorClass) -> CohTable:
    """h^i(Omega tensor Omega^dual (D)) from two Euler-type sequences."""
    unknown = CohTable.unknown()
    # 0 -> Omega(D) -> sum Omega(D+H-a_i F) -> End(D) -> 0
    left = omega_twist_cohomology(S, D)
    mid = ZERO_TABLE
    for ai in S.a:
        mid = mid + omega_twist_cohomology(S, D + DivisorClass(1, -ai))
    _, _, t1 = solve_short_exact(left, mid, unknown)
    # 0 -> End(D) -> sum Omega(D+2H-(c-a_i)F) -> Omega(D+3H-cF) -> 0
    mid2 = ZERO_TABLE
    for ai in S.a:
        mid2 = mid2 + omega_twist_cohomology(S, D + DivisorClass(2, ai - S.c))
    right2 = omega_twist_cohomology(S, D + DivisorClass(3, -S.c))
    t2, _, _ = solve_short_exact(t1, mid2, right2)
    return t2


def sheaf_cohomology(S: Scroll, x: SheafDescriptor) -> CohTable:
    """Cohomology of any descriptor built from O(D), Omega(D), Omega^dual(D), End(Omega)(D)."""
    if isinstance(x, LineBundle):
        return line_bundle_cohomology(S, x.D)
    if isinstance(x, OmegaTwist):
        return omega_twist_cohomology(S, x.D)
    if isinstance(x, OmegaDualTwist):
        return omega_twist_cohomology(S, x.D, dual=True)
    if isinstance(x, EndOmegaTwist):
        return end_omega_cohomology(S, x.D)
    if isinstance(x, FormalSum):
        acc = ZERO_TABLE
        for d, m in x.terms:
            if m < 0:
                raise UnsupportedDescriptor("cohomology of a virtual sum is undefined")
            acc = acc + sheaf_cohomology(S, d).scale(m)
        return acc
    raise UnsupportedDescriptor(f"no cohomology rule for {x}")
