#!/usr/bin/env python3
"""Regenerate the A-series universal-cluster fixture used by the acceptance suite.

For the cyclic group 1/r(1, r-1) acting on C^2 the minimal resolution carries
the universal family of G-clusters, and the coefficient of its chi_k-eigensheaf
divisor at the exceptional ray (j/r, (r-j)/r) is the minimum of

    (j*a + (r-j)*b) / r      over monomials x^a y^b of weight chi_k,

i.e. with a + (r-1)*b = k (mod r).  This script evaluates that minimum by raw
exhaustive search over a generous exponent box (a, b < 2r) and freezes the
values into tests/data/ghilb_a_series.json.  It deliberately does not import
the package: the fixture must stay an independent check.
"""

from fractions import Fraction
import json
import pathlib

RADII = (2, 3, 4)
OUT = pathlib.Path(__file__).resolve().parent.parent / "tests" / "data" / "ghilb_a_series.json"


def min_valuation(r: int, j: int, k: int) -> Fraction:
    best = None
    for a in range(2 * r):
        for b in range(2 * r):
            if (a + (r - 1) * b) % r != k % r:
                continue
            val = Fraction(j * a + (r - j) * b, r)
            if best is None or val < best:
                best = val
    assert best is not None, "every character is hit by some monomial"
    return best


def main() -> None:
    table = {}
    for r in RADII:
        per_ray = {}
        for j in range(1, r):
            per_ray[str(j)] = {str(k): str(min_valuation(r, j, k)) for k in range(r)}
        table[str(r)] = per_ray
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(table, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
