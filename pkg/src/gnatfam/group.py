"""Finite abelian diagonal groups and their character lattices.

A group element is stored as its weight vector in (Q/Z)^n: the tuple of
rotation numbers of the diagonal action on each coordinate.  Characters are
cosets of the invariant-monomial lattice

    M0 = { m in Z^n : <g, m> in Z for every g in the group },

represented by the canonical exponent vector obtained by reducing against the
Hermite basis of M0.  This gives O(1) character equality and a stable,
lexicographic enumeration order with the trivial character first.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import GroupTooLarge, InputError, NonFaithful
from .ratlinalg import invert, row_hnf

Weight = tuple[Fraction, ...]
Monomial = tuple[int, ...]

DEFAULT_MAX_ORDER = 10_000


@dataclass(frozen=True)
class GeneratorSpec:
    """One diagonal generator: order r and integer weights (a_1, ..., a_n)."""

    order: int
    weights: tuple[int, ...]


@dataclass(frozen=True)
class GroupSpec:
    dimension: int
    generators: tuple[GeneratorSpec, ...] = ()

    @classmethod
    def cyclic(cls, order: int, weights: Sequence[int]) -> "GroupSpec":
        """The cyclic group 1/order(weights), e.g. ``cyclic(3, (1, 2))``."""
        return cls(dimension=len(weights), generators=(GeneratorSpec(order, tuple(weights)),))


@dataclass(frozen=True)
class AbelianGroup:
    """A finite abelian subgroup of the diagonal torus, closed and sorted."""

    dimension: int
    order: int
    elements: tuple[Weight, ...]
    exponent: int
    m0_basis: tuple[tuple[int, ...], ...]

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"AbelianGroup(n={self.dimension}, order={self.order})"


@dataclass(frozen=True)
class Character:
    """Element of the dual group, keyed by its canonical exponent vector."""

    rep: tuple[int, ...]
    group: AbelianGroup = field(compare=False, repr=False)

    @property
    def is_trivial(self) -> bool:
        return not any(self.rep)


def _validate_spec(spec: GroupSpec) -> None:
    if spec.dimension < 1:
        raise InputError(f"dimension must be >= 1, got {spec.dimension}")
    for idx, gen in enumerate(spec.generators):
        if gen.order < 1:
            raise InputError(f"generator {idx}: order must be >= 1, got {gen.order}")
        if len(gen.weights) != spec.dimension:
            raise InputError(
                f"generator {idx}: expected {spec.dimension} weights, got {len(gen.weights)}"
            )
        for w in gen.weights:
            if not 0 <= w < gen.order:
                raise InputError(
                    f"generator {idx}: weight {w} outside [0, {gen.order})"
                )


def _add_mod1(a: Weight, b: Weight) -> Weight:
    out = []
    for x, y in zip(a, b):
        s = x + y
        out.append(Fraction(s.numerator % s.denominator, s.denominator))
    return tuple(out)


def build_group(
    spec: GroupSpec,
    *,
    quotient: bool = False,
    max_order: int = DEFAULT_MAX_ORDER,
) -> AbelianGroup:
    """Close the generator weight vectors under addition mod 1.

    By default the presentation must be faithful: a closure smaller than the
    product of the generator orders raises ``NonFaithful``.  Pass
    ``quotient=True`` to accept the image group instead.  Closures larger
    than ``max_order`` raise ``GroupTooLarge``.
    """
    _validate_spec(spec)
    n = spec.dimension
    zero = tuple(Fraction(0) for _ in range(n))
    gens = [
        tuple(Fraction(w % g.order, g.order) for w in g.weights) for g in spec.generators
    ]
    elems = {zero}
    stack = [zero]
    while stack:
        cur = stack.pop()
        for g in gens:
            nxt = _add_mod1(cur, g)
            if nxt not in elems:
                elems.add(nxt)
                if len(elems) > max_order:
                    raise GroupTooLarge(
                        f"group closure exceeds cap of {max_order} elements"
                    )
                stack.append(nxt)
    presented = math.prod(g.order for g in spec.generators)
    if not quotient and len(elems) != presented:
        raise NonFaithful(
            f"presented order {presented} but the weight vectors generate only "
            f"{len(elems)} elements; pass quotient=True to work with the image"
        )
    elements = tuple(sorted(elems))
    exponent = 1
    for e in elements:
        for c in e:
            exponent = math.lcm(exponent, c.denominator)
    m0 = _invariant_lattice(n, elements, exponent, len(elements))
    return AbelianGroup(
        dimension=n,
        order=len(elements),
        elements=elements,
        exponent=exponent,
        m0_basis=m0,
    )


def _invariant_lattice(
    n: int, elements: Sequence[Weight], exponent: int, order: int
) -> tuple[tuple[int, ...], ...]:
    # N = Z^n + sum Z*g, scaled by the exponent so rows are integral.
    scaled: list[list[int]] = []
    for i in range(n):
        scaled.append([exponent if j == i else 0 for j in range(n)])
    for e in elements:
        scaled.append([int(c * exponent) for c in e])
    h = row_hnf(scaled, n)
    det_h = math.prod(h[i][i] for i in range(n))
    assert exponent**n == det_h * order, "overlattice index must equal the group order"
    basis = [[Fraction(x, exponent) for x in row] for row in h]
    inv = invert(basis)
    # M0 is the dual lattice of N; its generators are the columns of the
    # inverse basis matrix, which are integer vectors because Z^n <= N.
    cols = []
    for j in range(n):
        col = [inv[i][j] for i in range(n)]
        assert all(x.denominator == 1 for x in col)
        cols.append([int(x) for x in col])
    m0 = row_hnf(cols, n)
    assert math.prod(m0[i][i] for i in range(n)) == order
    return tuple(tuple(row) for row in m0)


def _reduce(group: AbelianGroup, exponents: Sequence[int]) -> tuple[int, ...]:
    """Canonical representative of ``exponents`` modulo the invariant lattice."""
    if len(exponents) != group.dimension:
        raise InputError(
            f"exponent vector has length {len(exponents)}, expected {group.dimension}"
        )
    m = [int(x) for x in exponents]
    for i, row in enumerate(group.m0_basis):
        q = m[i] // row[i]
        if q:
            m = [a - q * b for a, b in zip(m, row)]
    return tuple(m)


def character_from_rep(group: AbelianGroup, exponents: Sequence[int]) -> Character:
    """The character of any integer exponent vector (reduced mod M0)."""
    return Character(_reduce(group, exponents), group)


def monomial_weight(group: AbelianGroup, monomial: Sequence[int]) -> Character:
    """Weight of the monomial x^m under the group action."""
    if any(e < 0 for e in monomial):
        raise InputError("monomials have nonnegative exponents")
    return character_from_rep(group, monomial)


def trivial_character(group: AbelianGroup) -> Character:
    return Character(tuple(0 for _ in range(group.dimension)), group)


def char_mul(a: Character, b: Character) -> Character:
    assert a.group == b.group, "characters belong to different groups"
    return character_from_rep(a.group, [x + y for x, y in zip(a.rep, b.rep)])


def char_inv(a: Character) -> Character:
    return character_from_rep(a.group, [-x for x in a.rep])


def char_order(a: Character) -> int:
    acc = a
    k = 1
    while not acc.is_trivial:
        acc = char_mul(acc, a)
        k += 1
    return k


@functools.lru_cache(maxsize=None)
def enumerate_characters(group: AbelianGroup) -> tuple[Character, ...]:
    """All characters in lexicographic order of canonical reps; trivial first."""
    ranges = [range(row[i]) for i, row in enumerate(group.m0_basis)]
    return tuple(Character(rep, group) for rep in itertools.product(*ranges))


def weight_pairing(element: Weight, monomial: Sequence[int]) -> Fraction:
    """<g, m>: the rotation number of g acting on the monomial x^m."""
    return sum((c * e for c, e in zip(element, monomial)), Fraction(0))


def coordinate_characters(group: AbelianGroup) -> tuple[Character, ...]:
    """Weights of the basic monomials x_1, ..., x_n."""
    n = group.dimension
    return tuple(
        character_from_rep(group, [int(i == j) for j in range(n)]) for i in range(n)
    )


def group_from_elements(
    dimension: int, elements: Iterable[Weight], *, max_order: int = DEFAULT_MAX_ORDER
) -> AbelianGroup:
    """Rebuild a group directly from weight vectors (always quotients)."""
    gens = []
    for e in elements:
        order = 1
        for c in e:
            order = math.lcm(order, c.denominator)
        gens.append(GeneratorSpec(order, tuple(int(c * order) for c in e)))
    spec = GroupSpec(dimension=dimension, generators=tuple(gens))
    return build_group(spec, quotient=True, max_order=max_order)


__all__ = [
    "AbelianGroup",
    "Character",
    "GeneratorSpec",
    "GroupSpec",
    "Monomial",
    "build_group",
    "char_inv",
    "char_mul",
    "char_order",
    "character_from_rep",
    "coordinate_characters",
    "enumerate_characters",
    "group_from_elements",
    "monomial_weight",
    "trivial_character",
    "weight_pairing",
]
