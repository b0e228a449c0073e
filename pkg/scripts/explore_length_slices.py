#!/usr/bin/env python3
"""Empirical contrast between length-finite and non-length-finite families.

Two experiments:
  1. growth: |Z_2(x)| over the dense families as the denominator bound rises
     (the finite shadow of "infinitely many length-2 factorizations");
  2. stability: |Z_l(x)| over the decreasing families as the truncation
     doubles, restricted to slices whose completeness certificate holds
     (so the count provably equals the count in the infinite monoid).

Usage: python scripts/explore_length_slices.py [max_den]
"""

import sys
from fractions import Fraction

from posmon.factorize import completeness_certificate, factorizations_of_length
from posmon.monoids import (
    ConductorQ,
    Grams,
    MonoidSpec,
    PowerOf,
    SRing,
    UnitFractionPrimes,
)

F = Fraction


def growth(max_den: int) -> None:
    print("== dense families: |Z_2(x)| by denominator bound ==")
    targets = [
        ("conductor, x=3", lambda d: MonoidSpec(ConductorQ(), max_den=d), F(3)),
        ("sring r=2, x=5", lambda d: MonoidSpec(SRing(F(2)), max_den=d), F(5)),
        ("sring r=5/2, x=6", lambda d: MonoidSpec(SRing(F(5, 2)), max_den=d), F(6)),
    ]
    bounds = [d for d in (2, 4, 8, 16, max_den) if d <= max_den]
    for label, build, x in targets:
        counts = [len(factorizations_of_length(build(d), x, 2)) for d in bounds]
        pretty = ", ".join(f"D={d}: {c}" for d, c in zip(bounds, counts))
        print(f"  {label:<20} {pretty}")


def stability() -> None:
    print("== decreasing families: certified |Z_l(x)| under truncation doubling ==")
    setups = [
        ("grams", lambda k: MonoidSpec(Grams(), k=k), F(2, 3), 2),
        ("power q=2/3", lambda k: MonoidSpec(PowerOf(F(2, 3)), k=k), F(2), 2),
        ("unit fractions", lambda k: MonoidSpec(UnitFractionPrimes(), k=k), F(1), 2),
    ]
    for label, build, x, ell in setups:
        spec = build(6)
        certified, threshold = completeness_certificate(spec, x, ell)
        counts = [len(factorizations_of_length(build(k), x, ell)) for k in (6, 12, 24)]
        print(
            f"  {label:<16} x={x} l={ell} certified={certified} "
            f"(threshold {threshold}) counts k=6,12,24: {counts}"
        )


def main() -> int:
    max_den = int(sys.argv[1]) if len(sys.argv) > 1 else 24
    growth(max_den)
    print()
    stability()
    return 0


if __name__ == "__main__":
    sys.exit(main())
