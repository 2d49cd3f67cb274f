"""Reductor sets: character-indexed divisor sets encoding gnat-families.

A set {D_chi} with the right fractional parts is a reductor set exactly when

    q_{chi,P} + <v_P, e_i> - q_{chi*rho(x_i), P} >= 0

for every ray P, character chi and coordinate monomial x_i.  Multiplicativity
reduces the condition to the basic monomials, and the inequalities decouple
ray by ray.  Normalised sets (D at the trivial character = 0) are the unique
representatives of equivalence classes of families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import NotGWeil, NotIntegral
from .group import Character, char_inv
from .instance import Instance
from .ratlinalg import solve
from .valuation import (
    QDivisor,
    canonical_divisor,
    char_valuation,
    fract,
    max_shift_divisor,
    min_shift_divisor,
)


@dataclass(frozen=True)
class ReductorSet:
    """Divisors aligned with the instance's canonical character order."""

    instance: Instance
    divisors: tuple[QDivisor, ...]

    def divisor_of(self, chi: Character) -> QDivisor:
        return self.divisors[self.instance.index_of(chi)]

    @property
    def is_normalised(self) -> bool:
        return self.divisors[0].is_zero

    def as_mapping(self) -> dict[Character, QDivisor]:
        return dict(zip(self.instance.characters, self.divisors))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReductorSet):
            return NotImplemented
        return self.divisors == other.divisors

    def __hash__(self) -> int:
        return hash(self.divisors)


def reductor_set(
    instance: Instance, divisors: Mapping[Character, QDivisor]
) -> ReductorSet:
    """Build a set from a (possibly partial) character -> divisor mapping;
    missing characters get the zero divisor."""
    table = [QDivisor.zero()] * instance.n_chars
    for chi, div in divisors.items():
        table[instance.index_of(chi)] = div
    return ReductorSet(instance, tuple(table))


def _from_per_char(instance: Instance, fn: Callable[[Character], QDivisor]) -> ReductorSet:
    return ReductorSet(instance, tuple(fn(c) for c in instance.characters))


def canonical_set(instance: Instance) -> ReductorSet:
    """Fractional character valuations lifted to [0, 1): always a reductor set."""
    return _from_per_char(instance, lambda c: canonical_divisor(instance.fan, c))


def maxshift_set(instance: Instance) -> ReductorSet:
    """Per-ray minimal valuations over each weight space: the upper bound
    attained by a normalised reductor set."""
    return _from_per_char(instance, lambda c: max_shift_divisor(instance.fan, c))


def minshift_set(instance: Instance) -> ReductorSet:
    """Reflection of the maximal shift set; attains the lower bound."""
    return _from_per_char(instance, lambda c: min_shift_divisor(instance.fan, c))


@dataclass(frozen=True)
class Violation:
    kind: str  # "fractional" or "reductor"
    ray: int
    character: tuple[int, ...]
    generator: int | None
    value: Fraction
    expected: Fraction | None = None


def check_reductor(rs: ReductorSet) -> tuple[Violation, ...]:
    """All fractional-part and reductor-inequality violations, ordered by
    ray id, then character index, then generator index.  Empty means valid."""
    inst = rs.instance
    out: list[Violation] = []
    for ray in inst.fan.rays:
        coeffs = [d.coeff(ray.id) for d in rs.divisors]
        for ci, chi in enumerate(inst.characters):
            expected = char_valuation(ray, chi)
            if fract(coeffs[ci]) != expected:
                out.append(
                    Violation("fractional", ray.id, chi.rep, None, coeffs[ci], expected)
                )
            for gi, rho_idx in enumerate(inst.gen_char_index):
                target = inst.mul_index(ci, rho_idx)
                lhs = coeffs[ci] + ray.vector[gi] - coeffs[target]
                if lhs < 0:
                    out.append(Violation("reductor", ray.id, chi.rep, gi, lhs))
    return tuple(out)


def normalize(rs: ReductorSet) -> ReductorSet:
    """Subtract the trivial-character divisor from every member."""
    d0 = rs.divisors[0]
    if not d0.is_integral:
        raise NotGWeil("divisor at the trivial character has fractional coefficients")
    if d0.is_zero:
        return rs
    return ReductorSet(rs.instance, tuple(d - d0 for d in rs.divisors))


def twist(rs: ReductorSet, n: QDivisor) -> ReductorSet:
    """Add one integral divisor to every member (an equivalent family)."""
    if not n.is_integral:
        raise NotIntegral("twists require integer coefficients")
    return ReductorSet(rs.instance, tuple(d + n for d in rs.divisors))


def char_shift(rs: ReductorSet, lam: Character) -> ReductorSet:
    """The shift symmetry D'_{chi*lam} = D_chi - D_{lam^-1} on normalised sets."""
    inst = rs.instance
    lam_inv = inst.index_of(char_inv(lam))
    base = rs.divisors[lam_inv]
    return ReductorSet(
        inst,
        tuple(
            rs.divisors[inst.mul_index(c, lam_inv)] - base for c in range(inst.n_chars)
        ),
    )


def reflect(rs: ReductorSet) -> ReductorSet:
    """The reflection symmetry D'_chi = -D_{chi^-1} on normalised sets."""
    inst = rs.instance
    return ReductorSet(inst, tuple(-rs.divisors[inst.inv_index[c]] for c in range(inst.n_chars)))


def is_principal(instance: Instance, d: QDivisor) -> tuple[int, ...] | None:
    """Exponent vector m of an invariant function with div(x^m) = d, or None.

    The rays of any maximal cone form a lattice basis, so matching the
    coefficients there pins m down (inside the invariant lattice exactly when
    those coefficients are integers); the remaining rays are then verified.
    """
    coeffs = {ray.id: d.coeff(ray.id) for ray in instance.fan.rays}
    if set(d.support) - set(coeffs):
        return None  # supported outside the fan
    if any(c.denominator != 1 for c in coeffs.values()):
        return None
    cone = instance.fan.max_cones[0]
    mat = [instance.fan.rays[i].vector for i in cone]
    rhs = [coeffs[i] for i in cone]
    m = solve(mat, rhs)
    if any(x.denominator != 1 for x in m):
        return None
    witness = tuple(int(x) for x in m)
    for ray in instance.fan.rays:
        pairing = sum((v * e for v, e in zip(ray.vector, witness)), Fraction(0))
        if pairing != coeffs[ray.id]:
            return None
    return witness


def linear_equiv_witness(a: ReductorSet, b: ReductorSet) -> tuple[int, ...] | None:
    """Common-difference witness: m with D_chi - D'_chi = div(x^m) for all chi."""
    diffs: Iterable[QDivisor] = (da - db for da, db in zip(a.divisors, b.divisors))
    first: QDivisor | None = None
    for d in diffs:
        if first is None:
            first = d
        elif d != first:
            return None
    assert first is not None
    return is_principal(a.instance, first)


def linear_equiv(a: ReductorSet, b: ReductorSet) -> bool:
    return linear_equiv_witness(a, b) is not None


__all__ = [
    "ReductorSet",
    "Violation",
    "canonical_set",
    "char_shift",
    "check_reductor",
    "is_principal",
    "linear_equiv",
    "linear_equiv_witness",
    "maxshift_set",
    "minshift_set",
    "normalize",
    "reductor_set",
    "reflect",
    "twist",
]
