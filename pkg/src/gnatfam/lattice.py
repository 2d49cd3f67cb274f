"""Overlattice of weights and fans of toric resolutions.

The quotient singularity lives in the lattice N = Z^n + sum Z*g.  A
resolution is described by a fan of smooth (unimodular in N) simplicial cones
subdividing the positive orthant; rays are primitive vectors of N.  In
dimension 2 the minimal resolution is computed from the boundary of the
convex hull of the nonzero lattice points of the orthant (the classical
Hirzebruch-Jung subdivision).
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionUnsupported, InputError
from .group import AbelianGroup, Weight
from .ratlinalg import det, invert, row_hnf, rowvec_times, vec_gcd

Vector = tuple[Fraction, ...]


class RayKind(str, enum.Enum):
    EXCEPTIONAL = "exceptional"
    COORDINATE_BRANCH = "coordinate-branch"
    COORDINATE_PLAIN = "coordinate-plain"


@dataclass(frozen=True)
class Ray:
    vector: Vector
    id: int
    kind: RayKind | None = None


@dataclass(frozen=True)
class Fan:
    rays: tuple[Ray, ...]
    max_cones: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Overlattice:
    dimension: int
    basis: tuple[Vector, ...]
    basis_inv: tuple[Vector, ...]
    index: int
    unit_points: tuple[Vector, ...]

    def coords(self, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
        """Coordinates of v in the lattice basis (integral iff v is in N)."""
        return tuple(rowvec_times(tuple(v), self.basis_inv))

    def contains(self, v: Sequence[Fraction]) -> bool:
        return all(c.denominator == 1 for c in self.coords(v))

    def is_primitive(self, v: Sequence[Fraction]) -> bool:
        cs = self.coords(v)
        if any(c.denominator != 1 for c in cs):
            return False
        return vec_gcd([int(c) for c in cs]) == 1

    def dual_basis(self) -> tuple[tuple[int, ...], ...]:
        """Hermite basis of the dual lattice { m : <v, m> in Z for v in N }."""
        cols = []
        inv = [list(r) for r in self.basis_inv]
        n = self.dimension
        for j in range(n):
            col = [inv[i][j] for i in range(n)]
            assert all(x.denominator == 1 for x in col)
            cols.append([int(x) for x in col])
        return tuple(tuple(r) for r in row_hnf(cols, n))


def build_lattice(group: AbelianGroup) -> Overlattice:
    """The overlattice Z^n + sum Z*g, with index |G| over Z^n."""
    n = group.dimension
    e = group.exponent
    scaled = [[e if j == i else 0 for j in range(n)] for i in range(n)]
    for elem in group.elements:
        scaled.append([int(c * e) for c in elem])
    h = row_hnf(scaled, n)
    basis = tuple(tuple(Fraction(x, e) for x in row) for row in h)
    basis_inv = tuple(tuple(row) for row in invert(basis))
    index = e**n // math.prod(h[i][i] for i in range(n))
    assert index == group.order
    unit_points = tuple(p for p in group.elements if any(p))
    return Overlattice(
        dimension=n,
        basis=basis,
        basis_inv=basis_inv,
        index=index,
        unit_points=unit_points,
    )


def make_fan(ray_vectors: Sequence[Vector], cones: Sequence[Sequence[int]]) -> Fan:
    """Canonicalize raw fan data: rays sorted lexicographically, ids by
    position, cone index lists remapped, sorted and deduplicated."""
    vectors = [tuple(Fraction(c) for c in v) for v in ray_vectors]
    if len(set(vectors)) != len(vectors):
        raise InputError("duplicate ray vectors")
    order = sorted(range(len(vectors)), key=lambda i: vectors[i])
    remap = {old: new for new, old in enumerate(order)}
    rays = tuple(Ray(vectors[old], new) for new, old in enumerate(order))
    new_cones = []
    for cone in cones:
        mapped = []
        for idx in cone:
            if not isinstance(idx, int) or not 0 <= idx < len(vectors):
                raise InputError(f"cone ray index {idx!r} out of range")
            mapped.append(remap[idx])
        if len(set(mapped)) != len(mapped):
            raise InputError(f"cone {list(cone)} repeats a ray")
        new_cones.append(tuple(sorted(mapped)))
    return Fan(rays=rays, max_cones=tuple(sorted(set(new_cones))))


def minimal_resolution_2d(lat: Overlattice) -> Fan:
    """Hirzebruch-Jung fan: rays are the primitive lattice points on the
    compact boundary of conv((N cap orthant) - 0), cones the consecutive pairs."""
    if lat.dimension != 2:
        raise DimensionUnsupported(
            f"automatic minimal resolutions only in dimension 2, got {lat.dimension}"
        )
    one = Fraction(1)
    zero = Fraction(0)
    candidates = set(lat.unit_points)
    candidates.update({(one, zero), (zero, one)})
    # Pareto-minimal points: anything dominated componentwise lies strictly
    # inside the hull and cannot contribute to the boundary chain.
    minimal = [
        p
        for p in candidates
        if not any(
            q != p and q[0] <= p[0] and q[1] <= p[1] for q in candidates
        )
    ]
    minimal.sort()  # x ascending; y is then strictly descending
    chain: list[Vector] = []
    for p in minimal:
        while len(chain) >= 2:
            ax, ay = chain[-1][0] - chain[-2][0], chain[-1][1] - chain[-2][1]
            bx, by = p[0] - chain[-1][0], p[1] - chain[-1][1]
            if ax * by - ay * bx <= 0:  # right turn or collinear: not a vertex
                chain.pop()
            else:
                break
        chain.append(p)
    rays: list[Vector] = [chain[0]]
    for u, w in itertools.pairwise(chain):
        delta = (w[0] - u[0], w[1] - u[1])
        cs = lat.coords(delta)
        assert all(c.denominator == 1 for c in cs)
        g = vec_gcd([int(c) for c in cs])
        step = (delta[0] / g, delta[1] / g)
        for k in range(1, g):
            rays.append((u[0] + k * step[0], u[1] + k * step[1]))
        rays.append(w)
    cones = [(i, i + 1) for i in range(len(rays) - 1)]
    return make_fan(rays, cones)


@dataclass(frozen=True)
class FanIssue:
    category: str
    message: str
    ray: int | None = None
    cone: int | None = None


@dataclass(frozen=True)
class FanValidation:
    issues: tuple[FanIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.issues


def validate_fan(fan: Fan, lat: Overlattice) -> FanValidation:
    """Check ray primitivity/containment, cone unimodularity in N, and
    properness over the orthant by facet pairing.  Mathematical failures are
    collected in the report; malformed indices raise ``InputError``.
    """
    n = lat.dimension
    issues: list[FanIssue] = []
    ray_ok: list[bool] = []
    for ray in fan.rays:
        if len(ray.vector) != n:
            raise InputError(f"ray {ray.id} has wrong dimension")
        good = True
        if any(c < 0 for c in ray.vector):
            issues.append(
                FanIssue("orthant", "ray lies outside the positive orthant", ray=ray.id)
            )
            good = False
        cs = lat.coords(ray.vector)
        if any(c.denominator != 1 for c in cs):
            issues.append(
                FanIssue("primitivity", "ray is not a lattice point", ray=ray.id)
            )
            good = False
        elif not any(cs):
            issues.append(FanIssue("primitivity", "zero ray", ray=ray.id))
            good = False
        elif vec_gcd([int(c) for c in cs]) != 1:
            issues.append(
                FanIssue(
                    "primitivity",
                    f"ray is {vec_gcd([int(c) for c in cs])} times a lattice vector",
                    ray=ray.id,
                )
            )
            good = False
        ray_ok.append(good)

    used = set()
    for ci, cone in enumerate(fan.max_cones):
        if len(cone) != n or len(set(cone)) != n:
            raise InputError(f"cone {ci} must list {n} distinct rays")
        for idx in cone:
            if not 0 <= idx < len(fan.rays):
                raise InputError(f"cone {ci} references missing ray {idx}")
            used.add(idx)
        if all(ray_ok[i] for i in cone):
            mat = [lat.coords(fan.rays[i].vector) for i in cone]
            d = det(mat)
            if abs(d) != 1:
                issues.append(
                    FanIssue(
                        "unimodularity",
                        f"cone determinant is {d} in the lattice",
                        cone=ci,
                    )
                )
    for ray in fan.rays:
        if ray.id not in used:
            issues.append(
                FanIssue("structure", "ray belongs to no maximal cone", ray=ray.id)
            )

    if n == 1:
        if len(fan.max_cones) != 1:
            issues.append(
                FanIssue("properness", "a 1-dimensional fan needs exactly one cone")
            )
    else:
        facets: dict[frozenset[int], list[int]] = {}
        for ci, cone in enumerate(fan.max_cones):
            for facet in itertools.combinations(cone, n - 1):
                facets.setdefault(frozenset(facet), []).append(ci)
        for facet, owners in sorted(facets.items(), key=lambda kv: sorted(kv[0])):
            if len(owners) > 2:
                issues.append(
                    FanIssue(
                        "properness",
                        f"facet {sorted(facet)} shared by {len(owners)} cones",
                    )
                )
            elif len(owners) == 1:
                on_boundary = any(
                    all(fan.rays[i].vector[coord] == 0 for i in facet)
                    for coord in range(n)
                )
                if not on_boundary:
                    issues.append(
                        FanIssue(
                            "properness",
                            f"interior facet {sorted(facet)} belongs to only one cone",
                            cone=owners[0],
                        )
                    )
    return FanValidation(tuple(issues))


def classify_rays(fan: Fan, lat: Overlattice) -> Fan:
    """Assign kinds: rays along a coordinate axis are branch (e_i/k, k >= 2)
    or plain (exactly e_i); everything else is an exceptional divisor."""
    rays = []
    for ray in fan.rays:
        support = [i for i, c in enumerate(ray.vector) if c != 0]
        if len(support) == 1:
            kind = (
                RayKind.COORDINATE_PLAIN
                if ray.vector[support[0]] == 1
                else RayKind.COORDINATE_BRANCH
            )
        else:
            kind = RayKind.EXCEPTIONAL
        rays.append(Ray(ray.vector, ray.id, kind))
    return Fan(rays=tuple(rays), max_cones=fan.max_cones)


__all__ = [
    "Fan",
    "FanIssue",
    "FanValidation",
    "Overlattice",
    "Ray",
    "RayKind",
    "build_lattice",
    "classify_rays",
    "make_fan",
    "minimal_resolution_2d",
    "validate_fan",
]
