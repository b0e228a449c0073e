"""Positive monoids given by generator families, with certified truncations.

A monoid is described by a :class:`GeneratorFamily` plus a truncation policy
(:class:`MonoidSpec`).  Sequence families (Grams, powers of q, unit fractions
over primes, the alternating family) expose their first ``k`` generators
exactly.  Dense families (the conductor monoid {0} u Q>=1 and the rational
semiring S_r = N0 u Q>=r) are never enumerated; membership and atomhood route
to closed forms, and factorization queries restrict atoms to a rational grid
of bounded denominator.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil

from .errors import (
    HypothesisViolatedError,
    InvalidArgumentError,
    NotAMemberError,
    NotSequenceGeneratedError,
    UnboundedQueryError,
)
from .rationals import is_prime, nth_prime, padic_valuation, prime_factors

__all__ = [
    "GeneratorFamily",
    "Explicit",
    "Grams",
    "PowerOf",
    "UnitFractionPrimes",
    "Alternating",
    "ConductorQ",
    "SRing",
    "MonoidSpec",
    "MembershipResult",
    "AtomVerdict",
    "generators",
    "contains",
    "is_atom",
    "is_multiplicative_atom",
    "certified_atoms",
    "family_from_config",
]

# Monotonicity metadata values.  "decreasing" families are generated by a
# strictly decreasing sequence, hence co-well-ordered, hence length-finite
# once atomic.  The alternating family is neither well- nor co-well-ordered.
DECREASING = "decreasing"
NON_MONOTONE = "non-monotone"
FINITE = "finite"
DENSE = "dense"


class GeneratorFamily:
    """Base class; concrete families are frozen dataclasses below."""

    name: str = "family"
    dense: bool = False
    monotonicity: str = NON_MONOTONE

    def generator(self, n: int) -> Fraction:
        raise NotSequenceGeneratedError(f"{self.name} has no generator sequence")

    def generator_count(self) -> int | None:
        """Number of generators when finite, else None."""
        return None

    def descriptor(self) -> dict:
        return {"name": self.name}


@dataclass(frozen=True)
class Explicit(GeneratorFamily):
    """Finitely many explicit positive rational generators."""

    gens: tuple[Fraction, ...]
    name = "explicit"
    monotonicity = FINITE

    def __init__(self, gens):
        seen: list[Fraction] = []
        for g in gens:
            g = Fraction(g)
            if g <= 0:
                raise InvalidArgumentError(f"generator {g} is not strictly positive")
            if g not in seen:
                seen.append(g)
        if not seen:
            raise InvalidArgumentError("explicit family needs at least one generator")
        object.__setattr__(self, "gens", tuple(seen))

    def generator(self, n: int) -> Fraction:
        return self.gens[n]

    def generator_count(self) -> int | None:
        return len(self.gens)

    def descriptor(self) -> dict:
        return {"name": self.name, "gens": [str(g) for g in self.gens]}


@dataclass(frozen=True)
class Grams(GeneratorFamily):
    """Generators 1/(2^n p_n), p_n the n-th odd prime, n >= 0."""

    name = "grams"
    monotonicity = DECREASING

    def generator(self, n: int) -> Fraction:
        return Fraction(1, 2**n * nth_prime(n, exclude_two=True))

    def index_prime(self, n: int) -> int:
        return nth_prime(n, exclude_two=True)


@dataclass(frozen=True)
class PowerOf(GeneratorFamily):
    """Generators q^n, n >= 0, for rational q in (0, 1)."""

    q: Fraction
    name = "power"
    monotonicity = DECREASING

    def __init__(self, q):
        q = Fraction(q)
        if not 0 < q < 1:
            raise InvalidArgumentError("power family needs 0 < q < 1")
        object.__setattr__(self, "q", q)

    def generator(self, n: int) -> Fraction:
        return self.q**n

    def check_atom_hypothesis(self) -> None:
        # The atom closed form A = {q^n} needs 1/q not a natural number,
        # i.e. the numerator of q must exceed 1.
        if self.q.numerator == 1:
            raise HypothesisViolatedError(
                f"1/q = {self.q.denominator} is a natural number; "
                "atoms of <q^n> are not certified for this q"
            )

    def descriptor(self) -> dict:
        return {"name": self.name, "q": str(self.q)}


@dataclass(frozen=True)
class UnitFractionPrimes(GeneratorFamily):
    """Generators 1/p over the primes p in increasing order."""

    name = "unit-fractions"
    monotonicity = DECREASING

    def generator(self, n: int) -> Fraction:
        return Fraction(1, nth_prime(n + 1))

    def index_prime(self, n: int) -> int:
        return nth_prime(n + 1)


@dataclass(frozen=True)
class Alternating(GeneratorFamily):
    """Generators a_n = 1 + (-1)^n / p_n over a strictly increasing prime sequence.

    Defaults to the full prime sequence p_1 = 2, p_2 = 3, ...; any strictly
    increasing sequence of primes may be supplied instead.  The generator
    sequence oscillates around 1, so the family is neither well- nor
    co-well-ordered.
    """

    primes: tuple[int, ...] | None = None
    name = "alternating"
    monotonicity = NON_MONOTONE

    def __post_init__(self):
        if self.primes is not None:
            ps = tuple(self.primes)
            if not ps:
                raise InvalidArgumentError("custom prime sequence is empty")
            if any(not is_prime(p) for p in ps):
                raise InvalidArgumentError("custom sequence contains a non-prime")
            if any(a >= b for a, b in zip(ps, ps[1:])):
                raise InvalidArgumentError("custom prime sequence must strictly increase")
            object.__setattr__(self, "primes", ps)

    def index_prime(self, n: int) -> int:
        """The prime p_n attached to generator a_n (1-based)."""
        if self.primes is not None:
            if not 1 <= n <= len(self.primes):
                raise InvalidArgumentError(f"index {n} outside custom prime sequence")
            return self.primes[n - 1]
        return nth_prime(n)

    def generator(self, n: int) -> Fraction:
        # 1-based internally; generator(i) below maps from 0-based position.
        p = self.index_prime(n + 1)
        return 1 + Fraction((-1) ** (n + 1), p)

    def generator_count(self) -> int | None:
        return None if self.primes is None else len(self.primes)

    def descriptor(self) -> dict:
        d = {"name": self.name}
        if self.primes is not None:
            d["primes"] = list(self.primes)
        return d


@dataclass(frozen=True)
class ConductorQ(GeneratorFamily):
    """The dense positive monoid {0} u (Q intersect [1, oo))."""

    name = "conductor"
    dense = True
    monotonicity = DENSE


@dataclass(frozen=True)
class SRing(GeneratorFamily):
    """The rational points of S_r = N0 u R>=r for rational r > 1.

    Both a positive monoid (additively) and a positive semiring; the
    multiplicative atom closed form is exposed via is_multiplicative_atom.
    """

    r: Fraction
    name = "sring"
    dense = True
    monotonicity = DENSE

    def __init__(self, r):
        r = Fraction(r)
        if r <= 1:
            raise InvalidArgumentError("sring family needs rational r > 1")
        object.__setattr__(self, "r", r)

    def descriptor(self) -> dict:
        return {"name": self.name, "r": str(self.r)}


@dataclass(frozen=True)
class MonoidSpec:
    """A generator family plus the truncation a query is certified against.

    ``k`` bounds the generator index for sequence families; ``max_den``
    bounds denominators of the atom grid for dense families.  Explicit
    families carry no truncation (queries over them are complete).
    """

    family: GeneratorFamily
    k: int | None = None
    max_den: int | None = None

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise InvalidArgumentError("truncation index bound k must be >= 1")
        if self.max_den is not None and self.max_den < 1:
            raise InvalidArgumentError("denominator bound must be >= 1")

    @property
    def is_dense(self) -> bool:
        return self.family.dense

    def sequence_bound(self) -> int:
        if isinstance(self.family, Explicit):
            return len(self.family.gens)
        if self.is_dense:
            raise NotSequenceGeneratedError(
                f"{self.family.name} is dense: it has no generator sequence"
            )
        count = self.family.generator_count()
        if self.k is None:
            if count is None:
                raise UnboundedQueryError(
                    f"{self.family.name} needs an index bound k for this query"
                )
            return count
        return min(self.k, count) if count is not None else self.k

    def descriptor(self) -> dict:
        d = {"family": self.family.descriptor()}
        if self.k is not None:
            d["k"] = self.k
        if self.max_den is not None:
            d["max_den"] = self.max_den
        return d


@dataclass(frozen=True)
class MembershipResult:
    """Membership verdict plus the evidence that produced it.

    ``combination`` lists (generator, multiplicity) pairs when the family is
    generator-enumerated; dense families justify membership by ``reason``.
    A False verdict is always relative to the truncation recorded here.
    """

    member: bool
    combination: tuple[tuple[Fraction, int], ...] | None
    reason: str
    truncation: dict = field(compare=False, default_factory=dict)


@dataclass(frozen=True)
class AtomVerdict:
    is_atom: bool
    method: str  # closed-form | p-adic-certificate | bounded-search
    detail: str = ""


def generators(spec: MonoidSpec, k: int | None = None) -> list[Fraction]:
    """First k generators in definition order, exact."""
    if spec.is_dense:
        raise NotSequenceGeneratedError(
            f"{spec.family.name} is dense: it has no generator sequence"
        )
    if k is None:
        k = spec.sequence_bound()
    count = spec.family.generator_count()
    if count is not None and k > count:
        raise InvalidArgumentError(
            f"requested {k} generators but the family defines only {count}"
        )
    return [spec.family.generator(i) for i in range(k)]


def _bounded_combination(
    gens: list[Fraction], x: Fraction
) -> tuple[tuple[Fraction, int], ...] | None:
    """One nonnegative-integer combination of gens summing to x, or None.

    Depth-first over generators in descending order, high multiplicities
    first; depth is bounded by x / min(gens), so the search always halts.
    """
    order = sorted(set(gens), reverse=True)

    def rec(i: int, rem: Fraction) -> list[tuple[Fraction, int]] | None:
        if rem == 0:
            return []
        if i == len(order):
            return None
        g = order[i]
        if i == len(order) - 1:
            m, r = divmod(rem, g)
            return [(g, int(m))] if r == 0 and m >= 1 else None
        for m in range(int(rem / g), -1, -1):
            tail = rec(i + 1, rem - m * g)
            if tail is not None:
                return ([(g, m)] if m else []) + tail
        return None

    combo = rec(0, x)
    return None if combo is None else tuple(combo)


def contains(spec: MonoidSpec, x: Fraction | int | str) -> MembershipResult:
    """Membership verdict with certificate.

    Sequence/explicit families run a bounded exact knapsack over the
    truncation; dense families use their closed forms.
    """
    x = Fraction(x)
    if x < 0:
        raise InvalidArgumentError("membership is only defined for x >= 0")
    trunc = spec.descriptor()
    if x == 0:
        return MembershipResult(True, (), "identity element", trunc)
    fam = spec.family
    if isinstance(fam, ConductorQ):
        if x >= 1:
            return MembershipResult(True, None, f"{x} >= 1", trunc)
        return MembershipResult(False, None, f"0 < {x} < 1", trunc)
    if isinstance(fam, SRing):
        if x.denominator == 1:
            return MembershipResult(True, None, f"{x} is a nonnegative integer", trunc)
        if x >= fam.r:
            return MembershipResult(True, None, f"{x} >= r = {fam.r}", trunc)
        return MembershipResult(False, None, f"{x} is neither integral nor >= {fam.r}", trunc)
    gens = generators(spec)
    combo = _bounded_combination(gens, x)
    if combo is not None:
        return MembershipResult(True, combo, "nonnegative integer combination", trunc)
    return MembershipResult(False, None, "no combination within truncation", trunc)


def _sequence_atom_certificate(spec: MonoidSpec, index: int, k: int) -> str:
    """Machine-check the valuation certificate for generator ``index`` (0-based).

    For prime-indexed families the generator must be the unique one among the
    first k whose attached-prime valuation is negative.  For the power family
    the generators' valuations at a prime dividing den(q) are pairwise
    distinct, and q^n is the unique generator at its own valuation.
    """
    fam = spec.family
    gens = [fam.generator(i) for i in range(max(k, index + 1))]
    g = gens[index]
    if isinstance(fam, (Grams, UnitFractionPrimes, Alternating)):
        if isinstance(fam, Alternating):
            p = fam.index_prime(index + 1)
        else:
            p = fam.index_prime(index)
        if padic_valuation(g, p) >= 0:
            raise AssertionError(f"certificate failed: v_{p}({g}) is not negative")
        others = [h for i, h in enumerate(gens) if i != index]
        if any(padic_valuation(h, p) < 0 for h in others):
            raise AssertionError(f"certificate failed: {p}-adic uniqueness violated")
        return f"unique generator with negative {p}-adic valuation"
    if isinstance(fam, PowerOf):
        fam.check_atom_hypothesis()
        p = min(prime_factors(fam.q.denominator))
        vals = [padic_valuation(h, p) for h in gens]
        if len(set(vals)) != len(vals):
            raise AssertionError("certificate failed: valuations collide")
        expected = -index * padic_valuation(Fraction(fam.q.denominator), p)
        if vals[index] != expected:
            raise AssertionError("certificate failed: wrong valuation profile")
        return f"generators separated by {p}-adic valuation; closed form certified"
    raise InvalidArgumentError(f"{fam.name} has no per-generator atom certificate")


def certified_atoms(spec: MonoidSpec, k: int) -> tuple[list[Fraction], str]:
    """First k atoms of a named sequence family, certificate machine-checked."""
    if k < 1:
        raise InvalidArgumentError("k must be >= 1")
    fam = spec.family
    if isinstance(fam, Explicit):
        raise InvalidArgumentError(
            "explicit families have no closed-form atom list; test elements with is_atom"
        )
    if spec.is_dense:
        raise NotSequenceGeneratedError(
            f"{fam.name} atoms form a dense interval; use is_atom"
        )
    if isinstance(fam, PowerOf):
        fam.check_atom_hypothesis()
    count = fam.generator_count()
    if count is not None and k > count:
        raise InvalidArgumentError(f"only {count} generators are defined")
    atoms = []
    for i in range(k):
        _sequence_atom_certificate(spec, i, k)
        atoms.append(fam.generator(i))
    method = "closed-form" if isinstance(fam, PowerOf) else "p-adic-certificate"
    return atoms, method


def _explicit_style_is_atom(spec: MonoidSpec, x: Fraction) -> AtomVerdict:
    gens = generators(spec)
    for g in gens:
        if g < x and contains(spec, x - g).member:
            return AtomVerdict(False, "bounded-search", f"{x} = {g} + {x - g}")
    return AtomVerdict(True, "bounded-search", "no two-part split within truncation")


def is_atom(spec: MonoidSpec, x: Fraction | int | str) -> AtomVerdict:
    """Atomhood of a monoid element, with the certification method used."""
    x = Fraction(x)
    if x == 0:
        raise InvalidArgumentError("0 is invertible, never an atom")
    membership = contains(spec, x)
    if not membership.member:
        raise NotAMemberError(f"{x} is not in the monoid (within truncation)")
    fam = spec.family
    if isinstance(fam, ConductorQ):
        return AtomVerdict(1 <= x < 2, "closed-form", "atoms are Q intersect [1,2)")
    if isinstance(fam, SRing):
        r = fam.r
        ok = (x == 1 or r <= x < r + 1) and x != ceil(r)
        return AtomVerdict(ok, "closed-form", "atoms are ({1} u [r,r+1)) minus {ceil(r)}")
    if isinstance(fam, Explicit):
        return _explicit_style_is_atom(spec, x)
    # Named sequence family: atoms are exactly the generators.
    k = spec.sequence_bound()
    gens = generators(spec, k)
    if x in gens:
        idx = gens.index(x)
        try:
            detail = _sequence_atom_certificate(spec, idx, k)
            method = "closed-form" if isinstance(fam, PowerOf) else "p-adic-certificate"
            return AtomVerdict(True, method, detail)
        except HypothesisViolatedError:
            return _explicit_style_is_atom(spec, x)
    return _explicit_style_is_atom(spec, x)


def is_multiplicative_atom(spec: MonoidSpec, x: Fraction | int | str) -> AtomVerdict:
    """Atomhood in the multiplicative monoid of S_r.

    Closed form: (P_{<r^2} u [r, r^2)) minus P*(S_r)_{>1}; the removed set is
    decided by the finite loop over primes p < x testing x/p in S_r, x/p > 1.
    """
    fam = spec.family
    if not isinstance(fam, SRing):
        raise InvalidArgumentError("multiplicative atoms are defined for the sring family")
    x = Fraction(x)
    if x <= 0:
        raise InvalidArgumentError("multiplicative atoms live in the positive part")
    if not contains(spec, x).member:
        raise NotAMemberError(f"{x} is not in S_r")
    if x == 1:
        raise InvalidArgumentError("1 is the multiplicative unit, never an atom")
    r = fam.r
    in_base = (x.denominator == 1 and x < r * r and is_prime(x.numerator)) or (
        r <= x < r * r
    )
    if not in_base:
        return AtomVerdict(False, "closed-form", "outside P_{<r^2} u [r, r^2)")
    p = 2
    while p < x:
        if is_prime(p):
            y = x / p
            if y > 1 and (y.denominator == 1 or y >= r):
                return AtomVerdict(False, "closed-form", f"{x} = {p} * {y} with {y} in S_r")
        p += 1
    return AtomVerdict(True, "closed-form", "in base set and not p * (S_r element > 1)")


_FAMILY_KEYS = {
    "explicit": ("gens",),
    "grams": (),
    "power": ("q",),
    "unit-fractions": (),
    "alternating": ("primes",),
    "conductor": (),
    "sring": ("r",),
}


def family_from_config(cfg: dict) -> GeneratorFamily:
    """Build a family from a config mapping (the CLI/config-file schema)."""
    name = cfg.get("name")
    if name not in _FAMILY_KEYS:
        raise InvalidArgumentError(
            f"unknown family {name!r}; expected one of {sorted(_FAMILY_KEYS)}"
        )
    if name == "explicit":
        raw = cfg.get("gens")
        if not raw:
            raise InvalidArgumentError("explicit family requires gens")
        if isinstance(raw, str):
            raw = raw.split(",")
        return Explicit(tuple(Fraction(str(g)) for g in raw))
    if name == "grams":
        return Grams()
    if name == "power":
        if "q" not in cfg:
            raise InvalidArgumentError("power family requires q")
        return PowerOf(Fraction(str(cfg["q"])))
    if name == "unit-fractions":
        return UnitFractionPrimes()
    if name == "alternating":
        primes = cfg.get("primes")
        if isinstance(primes, str):
            primes = [int(p) for p in primes.split(",")]
        return Alternating(tuple(primes) if primes else None)
    if name == "conductor":
        return ConductorQ()
    if "r" not in cfg:
        raise InvalidArgumentError("sring family requires r")
    return SRing(Fraction(str(cfg["r"])))
