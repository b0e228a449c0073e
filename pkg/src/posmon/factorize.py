"""Exact enumeration of factorizations, length slices, and length sets.

The searcher is a depth-first bounded knapsack over the atoms of a truncated
monoid: atoms are visited in descending order, multiplicities high-first, with
two prunes.  The value prune discards branches whose remaining value cannot be
reached by the remaining atoms and length budget.  The valuation prune
constrains the multiplicity of any atom that is the unique one carrying a
negative p-adic valuation: such multiplicities must land on a residue class
mod a power of p, which collapses the Grams-style search space.

Every emitted factorization is re-evaluated against the queried element
before it leaves this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .errors import (
    CertificateUnavailableError,
    InvalidArgumentError,
    NotAMemberError,
    UnboundedQueryError,
)
from .monoids import (
    ConductorQ,
    Explicit,
    MonoidSpec,
    SRing,
    contains,
    generators,
)
from .rationals import padic_valuation, prime_factors

__all__ = [
    "Factorization",
    "QueryResult",
    "COMPLETE",
    "COMPLETE_FOR_LENGTH",
    "TRUNCATION_BOUNDED",
    "atoms_for_query",
    "enumerate_factorizations",
    "factorizations_of_length",
    "length_set",
    "completeness_certificate",
    "is_irredundant_pair",
    "maximal_irredundant_subset",
]

COMPLETE = "complete"
COMPLETE_FOR_LENGTH = "complete-for-length"
TRUNCATION_BOUNDED = "truncation-bounded"


@dataclass(frozen=True, order=True)
class Factorization:
    """A finite multiset of atoms, stored as (atom, multiplicity) ascending."""

    parts: tuple[tuple[Fraction, int], ...]

    def __post_init__(self):
        for atom, mult in self.parts:
            if atom <= 0:
                raise InvalidArgumentError(f"atom {atom} is not strictly positive")
            if mult < 1:
                raise InvalidArgumentError("multiplicities must be >= 1")
        if list(self.parts) != sorted(self.parts):
            raise InvalidArgumentError("parts must be sorted ascending by atom")
        if len({a for a, _ in self.parts}) != len(self.parts):
            raise InvalidArgumentError("repeated atom entries; merge multiplicities")

    @classmethod
    def from_atoms(cls, atoms) -> "Factorization":
        counts: dict[Fraction, int] = {}
        for a in atoms:
            a = Fraction(a)
            counts[a] = counts.get(a, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def length(self) -> int:
        return sum(m for _, m in self.parts)

    @property
    def value(self) -> Fraction:
        return sum((a * m for a, m in self.parts), Fraction(0))

    @property
    def support(self) -> frozenset[Fraction]:
        return frozenset(a for a, _ in self.parts)

    def expanded(self) -> tuple[Fraction, ...]:
        """The multiset as a sorted tuple with repetitions."""
        out: list[Fraction] = []
        for a, m in self.parts:
            out.extend([a] * m)
        return tuple(out)

    def __str__(self) -> str:
        return "[" + ", ".join(str(a) for a in self.expanded()) + "]"


@dataclass(frozen=True)
class QueryResult:
    factorizations: tuple[Factorization, ...]
    completeness: str
    truncation: dict

    @property
    def lengths(self) -> list[int]:
        return sorted({z.length for z in self.factorizations})

    def __iter__(self):
        return iter(self.factorizations)

    def __len__(self):
        return len(self.factorizations)


def _conductor_grid_atoms(max_den: int) -> list[Fraction]:
    atoms = []
    for d in range(1, max_den + 1):
        for n in range(d, 2 * d):
            a = Fraction(n, d)
            if a.denominator == d and 1 <= a < 2:
                atoms.append(a)
    return sorted(set(atoms))


def _sring_grid_atoms(r: Fraction, max_den: int) -> list[Fraction]:
    atoms = [Fraction(1)]
    c = ceil(r)
    for d in range(1, max_den + 1):
        n = ceil(r * d)
        while Fraction(n, d) < r + 1:
            a = Fraction(n, d)
            if a.denominator == d and a != c:
                atoms.append(a)
            n += 1
    return sorted(set(atoms))


def atoms_for_query(spec: MonoidSpec) -> list[Fraction]:
    """Atoms of the truncated monoid, ascending.

    Sequence families: the first k generators (their certified atom sets).
    Explicit: the generators that admit no two-part split.  Dense families:
    the closed-form atom set restricted to denominators <= max_den.
    """
    fam = spec.family
    if isinstance(fam, ConductorQ):
        if spec.max_den is None:
            raise UnboundedQueryError("conductor family requires a denominator bound")
        return _conductor_grid_atoms(spec.max_den)
    if isinstance(fam, SRing):
        if spec.max_den is None:
            raise UnboundedQueryError("sring family requires a denominator bound")
        return _sring_grid_atoms(fam.r, spec.max_den)
    gens = generators(spec)
    if isinstance(fam, Explicit):
        atoms = []
        for g in gens:
            if not any(h < g and contains(spec, g - h).member for h in gens):
                atoms.append(g)
        return sorted(atoms)
    return sorted(gens)


def _valuation_constraints(atoms: list[Fraction], x: Fraction):
    """Per-atom multiplicity constraints from p-adic valuations.

    For a prime p with exactly one atom a of negative valuation -e, any
    solution multiplicity m of a satisfies: p^e | m when v_p(x) >= 0, and
    v_p(m) = e + v_p(x) exactly when v_p(x) < 0.  Returns (constraints,
    feasible); constraints maps atom index -> list of (p, e, vx).
    """
    primes: set[int] = set()
    for a in atoms:
        primes.update(prime_factors(a.denominator))
    constraints: dict[int, list[tuple[int, int, int]]] = {}
    for p in primes:
        negative = [i for i, a in enumerate(atoms) if padic_valuation(a, p) < 0]
        if len(negative) != 1:
            continue
        i = negative[0]
        e = -padic_valuation(atoms[i], p)
        vx = padic_valuation(x, p) if x != 0 else 0
        if vx < 0 and e + vx < 0:
            return constraints, False  # x needs a more negative valuation than any atom offers
        constraints.setdefault(i, []).append((p, e, vx))
    # If den(x) has a prime no atom can cancel, there is no solution at all.
    for p in prime_factors(x.denominator):
        if all(padic_valuation(a, p) >= 0 for a in atoms):
            return constraints, False
    return constraints, True


def _mult_allowed(m: int, constraints: list[tuple[int, int, int]]) -> bool:
    for p, e, vx in constraints:
        if vx >= 0:
            if m % p**e != 0:
                return False
        else:
            target = e + vx
            if m == 0:
                return False
            v = 0
            mm = m
            while mm % p == 0:
                mm //= p
                v += 1
            if v != target:
                return False
    return True


def _search(
    atoms: list[Fraction],
    x: Fraction,
    max_len: int | None,
    exact_len: int | None,
) -> list[Factorization]:
    """All multisets of atoms summing to x, under the requested length regime."""
    if x == 0:
        return [Factorization(())] if exact_len in (None, 0) else []
    desc = sorted(atoms, reverse=True)
    constraints, feasible = _valuation_constraints(desc, x)
    if not feasible:
        return []
    budget = exact_len if exact_len is not None else max_len
    out: list[Factorization] = []
    n = len(desc)

    def rec(i: int, rem: Fraction, left: int | None, prefix: list[tuple[Fraction, int]]):
        if rem == 0:
            if exact_len is None or left == 0:
                out.append(Factorization(tuple(sorted(prefix))))
            return
        if i == n:
            return
        a = desc[i]
        cap = int(rem / a)
        if left is not None:
            cap = min(cap, left)
            if rem > left * a:
                return  # even the largest remaining atom cannot absorb rem
            if exact_len is not None and rem < left * desc[-1]:
                return  # forced multiplicities undershoot the required length
        cons = constraints.get(i, ())
        for m in range(cap, -1, -1):
            if cons and not _mult_allowed(m, cons):
                continue
            if m:
                prefix.append((a, m))
            rec(i + 1, rem - m * a, None if left is None else left - m, prefix)
            if m:
                prefix.pop()

    rec(0, x, budget, [])
    for z in out:
        if z.value != x:  # soundness gate on emission
            raise AssertionError(f"engine emitted {z} for {x}")
    return sorted(out, key=lambda z: z.expanded())


def _require_member(spec: MonoidSpec, x: Fraction) -> None:
    if not contains(spec, x).member:
        raise NotAMemberError(f"{x} is not in the monoid (within truncation)")


def _max_possible_length(atoms: list[Fraction], x: Fraction) -> int:
    return int(x / min(atoms)) if atoms else 0


def enumerate_factorizations(
    spec: MonoidSpec, x: Fraction | int | str, max_len: int | None = None
) -> QueryResult:
    """All factorizations of x into atoms of the truncation (length <= max_len)."""
    x = Fraction(x)
    _require_member(spec, x)
    if spec.is_dense and max_len is None:
        raise UnboundedQueryError(
            "dense families require max_len (atom grids admit unbounded slices)"
        )
    atoms = atoms_for_query(spec)
    found = _search(atoms, x, max_len, None)
    if spec.is_dense:
        completeness = TRUNCATION_BOUNDED
    elif isinstance(spec.family, Explicit):
        if max_len is None or max_len >= _max_possible_length(atoms, x):
            completeness = COMPLETE
        else:
            completeness = COMPLETE_FOR_LENGTH
    else:
        completeness = TRUNCATION_BOUNDED
    return QueryResult(tuple(found), completeness, spec.descriptor())


def factorizations_of_length(
    spec: MonoidSpec, x: Fraction | int | str, length: int
) -> QueryResult:
    """The length-`length` slice of the factorization set of x."""
    if length < 1:
        raise InvalidArgumentError("length must be >= 1")
    x = Fraction(x)
    _require_member(spec, x)
    atoms = atoms_for_query(spec)
    found = _search(atoms, x, None, length)
    if spec.is_dense:
        completeness = TRUNCATION_BOUNDED
    elif isinstance(spec.family, Explicit):
        completeness = COMPLETE_FOR_LENGTH
    else:
        try:
            certified, _ = completeness_certificate(spec, x, length)
        except CertificateUnavailableError:
            certified = False
        completeness = COMPLETE_FOR_LENGTH if certified else TRUNCATION_BOUNDED
    return QueryResult(tuple(found), completeness, spec.descriptor())


def length_set(
    spec: MonoidSpec, x: Fraction | int | str, max_len: int | None = None
) -> tuple[set[int], str]:
    """{|z| : z in Z(x) found}, with the weakest completeness that applies."""
    x = Fraction(x)
    _require_member(spec, x)
    result = enumerate_factorizations(spec, x, max_len)
    lengths = set(result.lengths)
    if result.completeness == COMPLETE:
        return lengths, COMPLETE
    if not spec.is_dense and not isinstance(spec.family, Explicit) and max_len is not None:
        try:
            if all(completeness_certificate(spec, x, l)[0] for l in range(1, max_len + 1)):
                return lengths, COMPLETE_FOR_LENGTH
        except CertificateUnavailableError:
            pass
    if result.completeness == COMPLETE_FOR_LENGTH:
        return lengths, COMPLETE_FOR_LENGTH
    return lengths, TRUNCATION_BOUNDED


def completeness_certificate(
    spec: MonoidSpec, x: Fraction | int | str, length: int
) -> tuple[bool, Fraction | None]:
    """Soundness bridge from the truncation to the infinite monoid.

    For a decreasing family truncated to its k largest atoms, every atom in a
    length-`length` factorization of x (in the full monoid) is at least
    x - (length-1) * a_max.  When that threshold clears the smallest included
    atom, the slice computed over the truncation is the full slice.
    Returns (certified, threshold).
    """
    x = Fraction(x)
    fam = spec.family
    if isinstance(fam, Explicit):
        return True, None  # no truncation: vacuously certified
    if fam.monotonicity != "decreasing":
        raise CertificateUnavailableError(
            f"{fam.name} truncations are not ordered by atom size; no certificate"
        )
    a_max = fam.generator(0)
    atoms = atoms_for_query(spec)
    threshold = x - (length - 1) * a_max
    return threshold >= min(atoms), threshold


def is_irredundant_pair(z1: Factorization, z2: Factorization) -> bool:
    """True iff the two factorizations share no atom."""
    return not (z1.support & z2.support)


def maximal_irredundant_subset(zs) -> list[Factorization]:
    """A maximal irredundant subset, greedy in deterministic order.

    All inputs must factor the same element.  The returned subset is pairwise
    atom-disjoint, and every input factorization shares an atom with some
    member (checked before returning).
    """
    zs = sorted(set(zs), key=lambda z: z.expanded())
    if not zs:
        return []
    values = {z.value for z in zs}
    if len(values) > 1:
        raise InvalidArgumentError(
            f"factorizations of distinct elements {sorted(values)} cannot be compared"
        )
    chosen: list[Factorization] = []
    used: set[Fraction] = set()
    for z in zs:
        if not (z.support & used):
            chosen.append(z)
            used.update(z.support)
    for z in zs:
        if not any(z.support & c.support for c in chosen):
            raise AssertionError("maximality postcondition failed")
    return chosen
