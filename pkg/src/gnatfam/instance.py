"""A validated problem instance: group, overlattice and resolution fan,
with precomputed character indexing shared by the divisor-level machinery."""

from __future__ import annotations

from typing import Sequence

from .errors import InputError
from .group import (
    AbelianGroup,
    Character,
    GroupSpec,
    build_group,
    char_inv,
    char_mul,
    coordinate_characters,
    enumerate_characters,
)
from .lattice import (
    Fan,
    FanValidation,
    Overlattice,
    Vector,
    build_lattice,
    classify_rays,
    make_fan,
    minimal_resolution_2d,
    validate_fan,
)


class Instance:
    """Immutable bundle of group + lattice + classified fan.

    Carries the canonical character order and index tables used by the
    reductor checks and the per-ray enumeration.
    """

    def __init__(self, group: AbelianGroup, lattice: Overlattice, fan: Fan) -> None:
        self.group = group
        self.lattice = lattice
        self.validation: FanValidation = validate_fan(fan, lattice)
        self.fan = classify_rays(fan, lattice)
        self.characters: tuple[Character, ...] = enumerate_characters(group)
        self.char_index: dict[tuple[int, ...], int] = {
            c.rep: i for i, c in enumerate(self.characters)
        }
        self.inv_index: tuple[int, ...] = tuple(
            self.char_index[char_inv(c).rep] for c in self.characters
        )
        self.gen_char_index: tuple[int, ...] = tuple(
            self.char_index[c.rep] for c in coordinate_characters(group)
        )
        self._mul_memo: dict[tuple[int, int], int] = {}

    @property
    def n_chars(self) -> int:
        return len(self.characters)

    def index_of(self, chi: Character) -> int:
        try:
            return self.char_index[chi.rep]
        except KeyError:
            raise InputError("character does not belong to this instance") from None

    def mul_index(self, i: int, j: int) -> int:
        if i > j:
            i, j = j, i
        key = (i, j)
        got = self._mul_memo.get(key)
        if got is None:
            got = self.char_index[char_mul(self.characters[i], self.characters[j]).rep]
            self._mul_memo[key] = got
        return got


def build_instance(
    spec: GroupSpec | AbelianGroup,
    fan: str | tuple[Sequence[Vector], Sequence[Sequence[int]]] = "minimal",
    *,
    quotient: bool = False,
    max_order: int | None = None,
) -> Instance:
    """Assemble an instance from a group spec and a fan description.

    ``fan`` is either the string ``"minimal"`` (dimension 2 only) or a pair
    ``(ray_vectors, cones)``.  The fan is canonicalized, validated and
    classified; inspect ``instance.validation`` for the outcome.
    """
    if isinstance(spec, AbelianGroup):
        group = spec
    else:
        kwargs = {"quotient": quotient}
        if max_order is not None:
            kwargs["max_order"] = max_order
        group = build_group(spec, **kwargs)
    lattice = build_lattice(group)
    if fan == "minimal":
        built = minimal_resolution_2d(lattice)
    elif isinstance(fan, str):
        raise InputError(f"unknown fan description {fan!r}")
    else:
        vectors, cones = fan
        built = make_fan(vectors, cones)
    return Instance(group, lattice, built)


__all__ = ["Instance", "build_instance"]
