"""Valuations of monomials and characters at fan rays, and the derived
canonical / maximal-shift divisor coefficients.

At a toric ray with primitive vector v the valuation of a monomial x^m is the
pairing <v, m>; the valuation of a character is its fractional part, which is
independent of the chosen exponent representative because v pairs integrally
with the invariant lattice.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .group import (
    AbelianGroup,
    Character,
    char_inv,
    char_order,
    coordinate_characters,
    monomial_weight,
)
from .lattice import Fan, Ray, Vector


def fract(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


@dataclass(frozen=True)
class QDivisor:
    """Sparse rational divisor on the fan rays: absent ray ids mean 0."""

    items: tuple[tuple[int, Fraction], ...]

    @classmethod
    def of(
        cls, data: Mapping[int, Fraction] | Iterable[tuple[int, Fraction]]
    ) -> "QDivisor":
        pairs = data.items() if isinstance(data, Mapping) else data
        cleaned = sorted((int(r), Fraction(c)) for r, c in pairs if c != 0)
        ids = [r for r, _ in cleaned]
        if len(set(ids)) != len(ids):
            raise ValueError("repeated ray id in divisor data")
        return cls(tuple(cleaned))

    @classmethod
    def zero(cls) -> "QDivisor":
        return cls(())

    def coeff(self, ray_id: int) -> Fraction:
        for r, c in self.items:
            if r == ray_id:
                return c
        return Fraction(0)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(r for r, _ in self.items)

    @property
    def is_zero(self) -> bool:
        return not self.items

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for _, c in self.items)

    def __add__(self, other: "QDivisor") -> "QDivisor":
        acc = dict(self.items)
        for r, c in other.items:
            acc[r] = acc.get(r, Fraction(0)) + c
        return QDivisor.of(acc)

    def __sub__(self, other: "QDivisor") -> "QDivisor":
        return self + (-other)

    def __neg__(self) -> "QDivisor":
        return QDivisor(tuple((r, -c) for r, c in self.items))

    def dominates(self, other: "QDivisor") -> bool:
        """Coefficientwise >= on the union of supports."""
        ids = set(self.support) | set(other.support)
        return all(self.coeff(r) >= other.coeff(r) for r in ids)


def monomial_valuation(ray: Ray, monomial: Sequence[int]) -> Fraction:
    """<v_P, m>: valuation of the monomial x^m along the ray divisor."""
    return sum((v * e for v, e in zip(ray.vector, monomial)), Fraction(0))


def char_valuation(ray: Ray, chi: Character) -> Fraction:
    """Fractional valuation of a character at the ray, in [0, 1)."""
    return fract(monomial_valuation(ray, chi.rep))


@functools.lru_cache(maxsize=None)
def _min_valuation_table(
    vector: Vector, group: AbelianGroup
) -> dict[tuple[int, ...], Fraction]:
    """Per-character minima of <v, m> over one exponent box.

    Reducing any exponent by the order of the corresponding coordinate weight
    keeps the character and cannot increase the pairing (v is in the closed
    orthant), so searching m_i in [0, order(rho(x_i))) realizes the minimum
    over all regular homogeneous functions.
    """
    orders = [char_order(c) for c in coordinate_characters(group)]
    best: dict[tuple[int, ...], Fraction] = {}
    for m in itertools.product(*(range(o) for o in orders)):
        rep = monomial_weight(group, m).rep
        val = sum((v * e for v, e in zip(vector, m)), Fraction(0))
        cur = best.get(rep)
        if cur is None or val < cur:
            best[rep] = val
    return best


def max_shift_coeff(ray: Ray, chi: Character) -> Fraction:
    """Minimal valuation at the ray over all regular functions of weight chi."""
    return _min_valuation_table(ray.vector, chi.group)[chi.rep]


def canonical_divisor(fan: Fan, chi: Character) -> QDivisor:
    """The divisor with the fractional character valuations as coefficients."""
    return QDivisor.of({ray.id: char_valuation(ray, chi) for ray in fan.rays})


def max_shift_divisor(fan: Fan, chi: Character) -> QDivisor:
    """The maximal shift divisor of chi: per-ray minimal valuations."""
    return QDivisor.of({ray.id: max_shift_coeff(ray, chi) for ray in fan.rays})


def min_shift_divisor(fan: Fan, chi: Character) -> QDivisor:
    """Lower bound divisor: minus the maximal shift of the inverse character."""
    return -max_shift_divisor(fan, char_inv(chi))


__all__ = [
    "QDivisor",
    "canonical_divisor",
    "char_valuation",
    "fract",
    "max_shift_coeff",
    "max_shift_divisor",
    "min_shift_divisor",
    "monomial_valuation",
]
