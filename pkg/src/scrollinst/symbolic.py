"""Affine integer expressions in the unresolved cohomology symbols."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

SYMBOLS = ("α", "β", "γ", "δ", "θ")
ASCII_NAMES = {"α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta", "θ": "theta"}


@dataclass(frozen=True)
class SymbolicCount:
    """const + sum of coeff * symbol, with integer coefficients."""

    const: int = 0
    terms: tuple = ()  # sorted (symbol, coeff) pairs with coeff != 0

    @staticmethod
    def of(const: int = 0, coeffs: Mapping[str, int] | None = None) -> "SymbolicCount":
        coeffs = coeffs or {}
        for sym in coeffs:
            if sym not in SYMBOLS:
                raise ValueError(f"unknown symbol {sym!r}")
        terms = tuple(sorted((s, c) for s, c in coeffs.items() if c))
        return SymbolicCount(int(const), terms)

    @staticmethod
    def symbol(name: str) -> "SymbolicCount":
        return SymbolicCount.of(0, {name: 1})

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    @property
    def is_constant(self) -> bool:
        return not self.terms

    def __add__(self, o) -> "SymbolicCount":
        if isinstance(o, int):
            return SymbolicCount(self.const + o, self.terms)
        merged = self.coeffs
        for s, c in o.terms:
            merged[s] = merged.get(s, 0) + c
        return SymbolicCount.of(self.const + o.const, merged)

    __radd__ = __add__

    def __neg__(self) -> "SymbolicCount":
        return SymbolicCount(-self.const, tuple((s, -c) for s, c in self.terms))

    def __sub__(self, o) -> "SymbolicCount":
        return self + (-o if not isinstance(o, int) else -o)

    def __mul__(self, k: int) -> "SymbolicCount":
        return SymbolicCount.of(self.const * k, {s: c * k for s, c in self.terms})

    __rmul__ = __mul__

    def evaluate(self, assignment: Mapping[str, int] | None = None) -> int:
        assignment = assignment or {}
        return self.const + sum(c * assignment.get(s, 0) for s, c in self.terms)

    def is_zero(self) -> bool:
        return self.const == 0 and not self.terms

    def __str__(self) -> str:
        parts = []
        if self.const or not self.terms:
            parts.append(str(self.const))
        for s, c in self.terms:
            mag = "" if abs(c) == 1 else str(abs(c))
            sign = "-" if c < 0 else "+"
            if not parts and sign == "+":
                parts.append(f"{mag}{s}")
            else:
                parts.append(f"{sign}{mag}{s}")
        return "".join(parts)
