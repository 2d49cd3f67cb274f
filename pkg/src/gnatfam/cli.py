"""Command-line interface: JSON in, deterministic JSON out.

Exit codes: 0 success, 1 input/usage error, 2 mathematical check failure.
Rationals travel as strings ("p/q" or "p"), characters as comma-joined
canonical exponent vectors, rays by their stable ids.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import enumeration, reductor
from .errors import GnatfamError, InputError
from .group import GeneratorSpec, GroupSpec
from .instance import Instance, build_instance
from .valuation import QDivisor

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_MATH = 2

ENV_MAX_CATALOG = "GNATFAM_MAX_CATALOG"


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # exit 1 on usage errors, not 2
        raise InputError(message)


def _parse_rational(text: Any) -> Fraction:
    if not isinstance(text, str):
        raise InputError(f"expected a rational string, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}: {exc}") from None


def _format_rational(value: Fraction) -> str:
    return str(value)


def _char_label(rep: tuple[int, ...]) -> str:
    return ",".join(str(e) for e in rep)


def _parse_char_label(instance: Instance, label: str):
    parts = label.split(",")
    try:
        exponents = [int(p) for p in parts]
    except ValueError:
        raise InputError(f"bad character label {label!r}") from None
    if len(exponents) != instance.group.dimension:
        raise InputError(
            f"character label {label!r} has {len(exponents)} entries, "
            f"expected {instance.group.dimension}"
        )
    from .group import character_from_rep

    return character_from_rep(instance.group, exponents)


def _load_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from None


def _emit(payload: Any) -> None:
    sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def load_instance(path: str, *, quotient: bool, max_group: int) -> Instance:
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise InputError("instance file must be a JSON object")
    try:
        dimension = raw["dimension"]
        group_raw = raw["group"]
        fan_raw = raw["fan"]
    except KeyError as exc:
        raise InputError(f"instance file missing field {exc}") from None
    if not isinstance(dimension, int) or dimension < 1:
        raise InputError("dimension must be a positive integer")
    gens = []
    for i, g in enumerate(group_raw.get("generators", [])):
        try:
            order = int(g["order"])
            weights = tuple(int(w) for w in g["weights"])
        except (KeyError, TypeError, ValueError):
            raise InputError(f"generator {i} must have an order and integer weights") from None
        gens.append(GeneratorSpec(order, weights))
    spec = GroupSpec(dimension=dimension, generators=tuple(gens))
    if fan_raw == "minimal":
        fan = "minimal"
    elif isinstance(fan_raw, dict):
        try:
            vectors = [
                tuple(_parse_rational(c) for c in ray) for ray in fan_raw["rays"]
            ]
            cones = [list(cone) for cone in fan_raw["cones"]]
        except (KeyError, TypeError):
            raise InputError("explicit fans need 'rays' and 'cones' lists") from None
        for v in vectors:
            if len(v) != dimension:
                raise InputError("every ray needs one coordinate per dimension")
        for cone in cones:
            for idx in cone:
                if not isinstance(idx, int):
                    raise InputError(f"cone index {idx!r} is not an integer")
        fan = (vectors, cones)
    else:
        raise InputError("fan must be \"minimal\" or an object with rays and cones")
    return build_instance(spec, fan, quotient=quotient, max_order=max_group)


def _validation_report(instance: Instance) -> dict:
    return {
        "valid": instance.validation.ok,
        "group": {
            "dimension": instance.group.dimension,
            "order": instance.group.order,
        },
        "lattice": {"index": instance.lattice.index},
        "rays": [
            {
                "id": ray.id,
                "vector": [_format_rational(c) for c in ray.vector],
                "kind": ray.kind.value if ray.kind else None,
            }
            for ray in instance.fan.rays
        ],
        "cones": [list(c) for c in instance.fan.max_cones],
        "failures": [
            {
                "category": issue.category,
                "message": issue.message,
                "ray": issue.ray,
                "cone": issue.cone,
            }
            for issue in instance.validation.issues
        ],
    }


def _require_valid(instance: Instance) -> int | None:
    """Emit the validation report and exit 2 when the fan is not a resolution."""
    if not instance.validation.ok:
        _emit(_validation_report(instance))
        return EXIT_MATH
    return None


def serialize_family(rs: reductor.ReductorSet) -> dict:
    out: dict[str, dict[str, str]] = {}
    for chi, div in zip(rs.instance.characters, rs.divisors):
        if div.is_zero:
            continue
        out[_char_label(chi.rep)] = {
            str(rid): _format_rational(c) for rid, c in div.items
        }
    return out


def parse_family(instance: Instance, raw: Any) -> reductor.ReductorSet:
    if not isinstance(raw, dict):
        raise InputError("family file must be a JSON object")
    n_rays = len(instance.fan.rays)
    mapping = {}
    for label, coeffs in raw.items():
        chi = _parse_char_label(instance, label)
        if not isinstance(coeffs, dict):
            raise InputError(f"coefficients of {label!r} must be an object")
        items = {}
        for rid_text, value in coeffs.items():
            try:
                rid = int(rid_text)
            except ValueError:
                raise InputError(f"bad ray id {rid_text!r}") from None
            if not 0 <= rid < n_rays:
                raise InputError(f"ray id {rid} out of range (fan has {n_rays} rays)")
            items[rid] = _parse_rational(value)
        if chi in mapping:
            raise InputError(f"character {label!r} appears twice")
        mapping[chi] = QDivisor.of(items)
    return reductor.reductor_set(instance, mapping)


def _violations_payload(violations) -> list[dict]:
    out = []
    for v in violations:
        entry = {
            "type": v.kind,
            "ray": v.ray,
            "character": _char_label(v.character),
            "value": _format_rational(v.value),
        }
        if v.generator is not None:
            entry["generator"] = v.generator
        if v.expected is not None:
            entry["expected_fract"] = _format_rational(v.expected)
        out.append(entry)
    return out


def cmd_validate(args) -> int:
    instance = load_instance(
        args.instance, quotient=args.quotient_nonfaithful, max_group=args.max_group
    )
    _emit(_validation_report(instance))
    return EXIT_OK if instance.validation.ok else EXIT_MATH


def cmd_families(args) -> int:
    instance = load_instance(
        args.instance, quotient=args.quotient_nonfaithful, max_group=args.max_group
    )
    failed = _require_valid(instance)
    if failed is not None:
        return failed
    which = {
        "canonical": reductor.canonical_set,
        "maxshift": reductor.maxshift_set,
        "minshift": reductor.minshift_set,
    }[args.which]
    _emit(serialize_family(which(instance)))
    return EXIT_OK


def _max_catalog() -> int:
    raw = os.environ.get(ENV_MAX_CATALOG)
    if raw is None:
        return enumeration.DEFAULT_MAX_CATALOG
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{ENV_MAX_CATALOG} must be an integer, got {raw!r}") from None


def cmd_enumerate(args) -> int:
    instance = load_instance(
        args.instance, quotient=args.quotient_nonfaithful, max_group=args.max_group
    )
    failed = _require_valid(instance)
    if failed is not None:
        return failed
    cap = _max_catalog()
    mode = "materialize" if args.materialize else "count"
    catalog = enumeration.enumerate_all(
        instance, mode, max_catalog=cap, jobs=args.jobs
    )
    payload: dict[str, Any] = {
        "total": catalog.total_count,
        "per_ray": {str(s.ray): s.count for s in catalog.per_ray},
    }
    if args.materialize:
        directory = Path(args.materialize)
        directory.mkdir(parents=True, exist_ok=True)
        width = max(1, len(str(max(catalog.total_count - 1, 0))))
        for i, family in enumerate(catalog.iter_families(cap)):
            name = directory / f"family_{i:0{width}d}.json"
            name.write_text(
                json.dumps(serialize_family(family), indent=2, sort_keys=True) + "\n",
                encoding="utf-8",
            )
        payload["materialized"] = {
            "directory": str(directory),
            "files": catalog.total_count,
        }
    if args.orbits:
        if catalog.total_count > cap:
            raise InputError(
                f"orbit computation needs a materializable catalog "
                f"({catalog.total_count} > cap {cap})"
            )
        payload["orbits"] = [list(o) for o in enumeration.orbits(catalog)]
    _emit(payload)
    return EXIT_OK


def cmd_check(args) -> int:
    instance = load_instance(
        args.instance, quotient=args.quotient_nonfaithful, max_group=args.max_group
    )
    failed = _require_valid(instance)
    if failed is not None:
        return failed
    rs = parse_family(instance, _load_json(args.set))
    violations = reductor.check_reductor(rs)
    _emit({"valid": not violations, "violations": _violations_payload(violations)})
    return EXIT_OK if not violations else EXIT_MATH


def cmd_equiv(args) -> int:
    instance = load_instance(
        args.instance, quotient=args.quotient_nonfaithful, max_group=args.max_group
    )
    failed = _require_valid(instance)
    if failed is not None:
        return failed
    results = {}
    for side, path in (("a", args.a), ("b", args.b)):
        rs = parse_family(instance, _load_json(path))
        violations = reductor.check_reductor(rs)
        if violations:
            _emit(
                {
                    "error": f"family {side!r} is not a reductor set",
                    "violations": _violations_payload(violations),
                }
            )
            return EXIT_MATH
        results[side] = rs
    witness = reductor.linear_equiv_witness(results["a"], results["b"])
    _emit(
        {
            "linearly_equivalent": witness is not None,
            "witness": _char_label(witness) if witness is not None else None,
        }
    )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gnatfam", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("instance", help="path to an instance JSON file")
        p.add_argument(
            "--jobs",
            type=int,
            default=os.cpu_count() or 1,
            help="ray-level parallelism (output is identical for any value)",
        )
        p.add_argument(
            "--quotient-nonfaithful",
            action="store_true",
            help="accept non-faithful presentations by passing to the image group",
        )
        p.add_argument(
            "--max-group",
            type=int,
            default=10_000,
            help="cap on the group closure size",
        )

    p = sub.add_parser("validate", help="validate group, lattice and fan")
    common(p)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("families", help="print a distinguished family")
    common(p)
    p.add_argument("which", choices=("canonical", "maxshift", "minshift"))
    p.set_defaults(func=cmd_families)

    p = sub.add_parser("enumerate", help="count or materialize all families")
    common(p)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--count-only", action="store_true", help="counts only (default)")
    group.add_argument("--materialize", metavar="DIR", help="write every family to DIR")
    p.add_argument("--orbits", action="store_true", help="include symmetry orbits")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("check", help="check a family file against the instance")
    common(p)
    p.add_argument("--set", required=True, help="family JSON file")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("equiv", help="test two families for linear equivalence")
    common(p)
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=cmd_equiv)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GnatfamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry() -> None:  # console-script hook
    sys.exit(main())


__all__ = ["main", "entry", "build_parser", "load_instance", "parse_family", "serialize_family"]
