"""Enumeration of all normalised reductor sets on a resolution.

The reductor inequalities decouple ray by ray, so the full catalog is the
cartesian product of per-ray solution sets.  At one ray the unknowns are the
coefficients q_chi (q at the trivial character pinned to 0), constrained by

    fixed fractional parts,
    bounds  -M_{chi^-1,P} <= q_chi <= M_{chi,P},  and
    difference constraints  q_{chi*rho(x_i)} <= q_chi + <v_P, e_i>.

The solver walks characters in canonical order, propagating interval bounds
along the constraint arrows; a deliberately dumb box-filter oracle double
checks it.  All arithmetic is scaled by |G| so the search runs on integers.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .errors import CatalogTooLarge
from .group import char_inv
from .instance import Instance
from .lattice import Ray
from .reductor import ReductorSet
from .valuation import QDivisor, char_valuation, fract, max_shift_coeff

DEFAULT_MAX_CATALOG = 10**6


@dataclass(frozen=True)
class RaySolutionSet:
    """All admissible coefficient vectors (q_chi) at one ray, sorted."""

    ray: int
    solutions: tuple[tuple[Fraction, ...], ...]

    @property
    def count(self) -> int:
        return len(self.solutions)


@dataclass(frozen=True)
class _RayProblem:
    """One ray's constraint system, scaled by the group order to integers."""

    scale: int
    residues: tuple[int, ...]       # q_chi * scale mod scale
    lower: tuple[int, ...]          # scaled, already on the residue grid
    upper: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (src, tgt, w): q_tgt <= q_src + w


def _snap_down(value: int, residue: int, scale: int) -> int:
    return value - ((value - residue) % scale)


def _snap_up(value: int, residue: int, scale: int) -> int:
    return value + ((residue - value) % scale)


def _ray_problem(ray: Ray, instance: Instance) -> _RayProblem:
    inst = instance
    scale = inst.group.order
    m = inst.n_chars
    residues = []
    lower = []
    upper = []
    for c, chi in enumerate(inst.characters):
        res = char_valuation(ray, chi) * scale
        hi = max_shift_coeff(ray, chi) * scale
        lo = -max_shift_coeff(ray, char_inv(chi)) * scale
        assert res.denominator == hi.denominator == lo.denominator == 1
        res, hi, lo = int(res), int(hi), int(lo)
        if c == 0:
            res = hi = lo = 0
        residues.append(res)
        lower.append(_snap_up(lo, res, scale))
        upper.append(_snap_down(hi, res, scale))
    edges = []
    for gi, rho_idx in enumerate(inst.gen_char_index):
        w = ray.vector[gi] * scale
        assert w.denominator == 1
        for c in range(m):
            t = inst.mul_index(c, rho_idx)
            if t != c:
                edges.append((c, t, int(w)))
    return _RayProblem(scale, tuple(residues), tuple(lower), tuple(upper), tuple(edges))


def per_ray_solutions(ray: Ray, instance: Instance) -> RaySolutionSet:
    """Depth-first enumeration with difference-constraint bound propagation.

    Characters are assigned in canonical order; each assignment tightens the
    surviving intervals along the constraint arrows (upper bounds flow with
    an arrow, lower bounds against it) until a fixpoint, pruning the search.
    """
    prob = _ray_problem(ray, instance)
    m = len(prob.residues)
    scale = prob.scale
    out_adj: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    in_adj: list[list[tuple[int, int]]] = [[] for _ in range(m)]
    tightest: dict[tuple[int, int], int] = {}
    for s, t, w in prob.edges:
        key = (s, t)
        if key not in tightest or w < tightest[key]:
            tightest[key] = w
    for (s, t), w in tightest.items():
        out_adj[s].append((t, w))
        in_adj[t].append((s, w))

    def propagate(lo: list[int], hi: list[int], seeds: list[int]) -> bool:
        queue = list(seeds)
        while queue:
            c = queue.pop()
            for t, w in out_adj[c]:
                cand = _snap_down(hi[c] + w, prob.residues[t], scale)
                if cand < hi[t]:
                    hi[t] = cand
                    if cand < lo[t]:
                        return False
                    queue.append(t)
            for s, w in in_adj[c]:
                cand = _snap_up(lo[c] - w, prob.residues[s], scale)
                if cand > lo[s]:
                    lo[s] = cand
                    if cand > hi[s]:
                        return False
                    queue.append(s)
        return True

    solutions: list[tuple[Fraction, ...]] = []

    def descend(level: int, lo: list[int], hi: list[int]) -> None:
        if level == m:
            solutions.append(tuple(Fraction(v, scale) for v in lo))
            return
        for value in range(lo[level], hi[level] + 1, scale):
            lo2 = lo.copy()
            hi2 = hi.copy()
            lo2[level] = hi2[level] = value
            if propagate(lo2, hi2, [level]):
                descend(level + 1, lo2, hi2)

    lo0 = list(prob.lower)
    hi0 = list(prob.upper)
    if all(lo0[c] <= hi0[c] for c in range(m)) and propagate(lo0, hi0, list(range(m))):
        descend(1, lo0, hi0)
    return RaySolutionSet(ray.id, tuple(solutions))


def brute_force_per_ray(ray: Ray, instance: Instance) -> RaySolutionSet:
    """Independent oracle: filter the full integer box by the raw inequalities.

    No propagation and no tightening; every inequality is evaluated directly
    on candidate values (as soon as both endpoints are decided, which prunes
    nothing that plain filtering would keep).
    """
    prob = _ray_problem(ray, instance)
    m = len(prob.residues)
    scale = prob.scale
    candidates = [
        list(range(prob.lower[c], prob.upper[c] + 1, scale)) for c in range(m)
    ]
    by_level: list[list[tuple[int, int, int]]] = [[] for _ in range(m)]
    for s, t, w in prob.edges:
        by_level[max(s, t)].append((s, t, w))
    solutions: list[tuple[Fraction, ...]] = []
    q = [0] * m

    def descend(level: int) -> None:
        if level == m:
            solutions.append(tuple(Fraction(v, scale) for v in q))
            return
        for value in candidates[level]:
            q[level] = value
            if all(q[s] + w - q[t] >= 0 for s, t, w in by_level[level]):
                descend(level + 1)

    if candidates[0] == [0]:
        descend(1)
    return RaySolutionSet(ray.id, tuple(solutions))


@dataclass(frozen=True)
class FamilyCatalog:
    """Per-ray solution sets plus the (possibly huge) total product count."""

    instance: Instance
    per_ray: tuple[RaySolutionSet, ...]
    total_count: int

    def digits_of(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_count:
            raise IndexError(index)
        digits = []
        for sols in reversed(self.per_ray):
            index, d = divmod(index, sols.count)
            digits.append(d)
        return tuple(reversed(digits))

    def rank_of(self, digits: tuple[int, ...]) -> int:
        rank = 0
        for sols, d in zip(self.per_ray, digits):
            rank = rank * sols.count + d
        return rank

    def family_at(self, index: int) -> ReductorSet:
        digits = self.digits_of(index)
        return self._assemble(digits)

    def _assemble(self, digits: tuple[int, ...]) -> ReductorSet:
        divisors = []
        for c in range(self.instance.n_chars):
            coeffs = {}
            for sols, d in zip(self.per_ray, digits):
                coeffs[sols.ray] = sols.solutions[d][c]
            divisors.append(QDivisor.of(coeffs))
        return ReductorSet(self.instance, tuple(divisors))

    def iter_families(self, max_catalog: int = DEFAULT_MAX_CATALOG):
        """Stream every normalised reductor set in lexicographic digit order."""
        if self.total_count > max_catalog:
            raise CatalogTooLarge(
                f"catalog has {self.total_count} families, cap is {max_catalog}"
            )
        for digits in itertools.product(*(range(s.count) for s in self.per_ray)):
            yield self._assemble(digits)

    def index_of(self, rs: ReductorSet) -> int | None:
        """Catalog position of a normalised reductor set, or None."""
        digits = []
        for sols in self.per_ray:
            vector = tuple(d.coeff(sols.ray) for d in rs.divisors)
            try:
                digits.append(sols.solutions.index(vector))
            except ValueError:
                return None
        return self.rank_of(tuple(digits))


def enumerate_all(
    instance: Instance,
    mode: str = "count",
    *,
    max_catalog: int = DEFAULT_MAX_CATALOG,
    jobs: int | None = None,
) -> FamilyCatalog:
    """Solve every ray and form the product catalog.

    ``mode="count"`` never materializes anything.  ``mode="materialize"``
    additionally guarantees the catalog fits under ``max_catalog`` so that
    ``iter_families`` can stream it; beyond the cap it raises
    ``CatalogTooLarge``.  ``jobs`` bounds ray-level parallelism.
    """
    if mode not in ("count", "materialize"):
        raise ValueError(f"unknown mode {mode!r}")
    rays = instance.fan.rays
    if jobs is not None and jobs > 1 and len(rays) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            per_ray = tuple(pool.map(lambda r: per_ray_solutions(r, instance), rays))
    else:
        per_ray = tuple(per_ray_solutions(r, instance) for r in rays)
    total = 1
    for sols in per_ray:
        total *= sols.count
    catalog = FamilyCatalog(instance, per_ray, total)
    if mode == "materialize" and total > max_catalog:
        raise CatalogTooLarge(
            f"catalog has {total} families, cap is {max_catalog}"
        )
    return catalog


def _shift_perm(inst: Instance, sols: RaySolutionSet, lam_idx: int) -> list[int]:
    lookup = {v: i for i, v in enumerate(sols.solutions)}
    lam_inv = inst.inv_index[lam_idx]
    perm = []
    for vector in sols.solutions:
        base = vector[lam_inv]
        image = tuple(
            vector[inst.mul_index(c, lam_inv)] - base for c in range(inst.n_chars)
        )
        perm.append(lookup[image])
    return perm


def _reflect_perm(inst: Instance, sols: RaySolutionSet) -> list[int]:
    lookup = {v: i for i, v in enumerate(sols.solutions)}
    perm = []
    for vector in sols.solutions:
        image = tuple(-vector[inst.inv_index[c]] for c in range(inst.n_chars))
        perm.append(lookup[image])
    return perm


def orbits(catalog: FamilyCatalog, instance: Instance | None = None) -> tuple[tuple[int, ...], ...]:
    """Partition of catalog indices under all character shifts + reflection.

    Both symmetries act ray by ray, so each is a product of permutations of
    the per-ray solution lists; missing images would mean the catalog is not
    closed and raise ``KeyError`` (mathematically impossible for valid input).
    """
    inst = instance if instance is not None else catalog.instance
    generators: list[list[list[int]]] = []
    for lam_idx in range(1, inst.n_chars):
        generators.append([_shift_perm(inst, s, lam_idx) for s in catalog.per_ray])
    generators.append([_reflect_perm(inst, s) for s in catalog.per_ray])

    parent = list(range(catalog.total_count))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: int, b: int) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for index in range(catalog.total_count):
        digits = catalog.digits_of(index)
        for gen in generators:
            image = tuple(perm[d] for perm, d in zip(gen, digits))
            union(index, catalog.rank_of(image))
    buckets: dict[int, list[int]] = {}
    for index in range(catalog.total_count):
        buckets.setdefault(find(index), []).append(index)
    return tuple(tuple(sorted(members)) for _, members in sorted(buckets.items()))


__all__ = [
    "DEFAULT_MAX_CATALOG",
    "FamilyCatalog",
    "RaySolutionSet",
    "brute_force_per_ray",
    "enumerate_all",
    "orbits",
    "per_ray_solutions",
]
