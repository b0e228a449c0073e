from fractions import Fraction

import pytest

from posmon.certificates import (
    IMPLICATIONS,
    accp_chain,
    bf_violation_unit_fractions,
    check_classification_consistency,
    classify,
    ffm_divisor_bound_alternating,
    lff_violation,
)
from posmon.errors import (
    BoundTooSmallError,
    HypothesisViolatedError,
    InvalidArgumentError,
    NotAMemberError,
)
from posmon.factorize import length_set
from posmon.monoids import (
    Alternating,
    ConductorQ,
    Explicit,
    Grams,
    MonoidSpec,
    PowerOf,
    SRing,
    UnitFractionPrimes,
)

F = Fraction


class TestAccpChain:
    def test_grams_two_steps(self):
        cert = accp_chain(Grams(), 2)
        assert cert.verified
        chain = cert.witness["chain"]
        assert chain[0]["b_n"] == "1" and chain[0]["delta"] == "1/2"
        assert chain[0]["delta_membership"] == "5 * (1/(2^1*5))"
        assert chain[1]["b_n"] == "1/2" and chain[1]["delta"] == "1/4"
        assert chain[1]["delta_membership"] == "7 * (1/(2^2*7))"

    def test_power_two_thirds_identity(self):
        cert = accp_chain(PowerOf(F(2, 3)), 1)
        assert cert.verified
        step = cert.witness["chain"][0]
        # 3 = 1*(2/3)^0 + 3*(2/3)^1, i.e. 3 = 1 + 2
        assert step["b_n"] == "3" and step["b_next"] == "2" and step["delta"] == "1"

    def test_power_identity_to_twenty(self):
        cert = accp_chain(PowerOf(F(2, 3)), 20)
        assert cert.verified and len(cert.witness["chain"]) == 21

    def test_hypothesis_violation(self):
        with pytest.raises(HypothesisViolatedError):
            accp_chain(PowerOf(F(1, 2)), 1)

    def test_unsupported_family(self):
        with pytest.raises(InvalidArgumentError):
            accp_chain(ConductorQ(), 1)


class TestBfViolation:
    @pytest.mark.parametrize(
        "bound,expected",
        [(2, {2}), (5, {2, 3, 5}), (13, {2, 3, 5, 7, 11, 13})],
    )
    def test_length_sets(self, bound, expected):
        cert = bf_violation_unit_fractions(bound)
        assert cert.verified
        assert set(cert.witness["length_set"]) == expected

    def test_matches_engine_for_all_bounds_up_to_31(self):
        from posmon.rationals import is_prime

        for bound in range(2, 32):
            primes = [p for p in range(2, bound + 1) if is_prime(p)]
            cert = bf_violation_unit_fractions(bound)
            spec = MonoidSpec(UnitFractionPrimes(), k=len(primes))
            lengths, _ = length_set(spec, F(1), max_len=bound)
            assert set(cert.witness["length_set"]) == lengths == set(primes)


class TestLffViolation:
    def test_conductor_d3(self):
        cert = lff_violation("conductor", MonoidSpec(ConductorQ(), max_den=3))
        assert cert.verified
        assert cert.witness["pairs"] == [["4/3", "5/3"], ["3/2", "3/2"]]

    def test_sring_additive_d2(self):
        cert = lff_violation("sring-additive", MonoidSpec(SRing(F(2)), max_den=2))
        assert cert.verified
        assert ["5/2", "5/2"] in cert.witness["pairs"]
        assert cert.parameters["x"] == "5"

    def test_sring_multiplicative_s3(self):
        cert = lff_violation(
            "sring-multiplicative", MonoidSpec(SRing(F(2)), max_den=4), s=F(3)
        )
        assert cert.verified
        pairs = [[F(a), F(b)] for a, b in cert.witness["pairs"]]
        assert all(a * b == 9 for a, b in pairs)
        assert [F(12, 5), F(15, 4)] in pairs

    def test_counts_grow_along_doublings(self):
        for target, family in (
            ("conductor", ConductorQ()),
            ("sring-additive", SRing(F(2))),
        ):
            counts = []
            for d in (4, 8, 16):
                cert = lff_violation(target, MonoidSpec(family, max_den=d))
                counts.append(cert.witness["count"])
                assert cert.verified
            assert counts[0] < counts[1] < counts[2]

    def test_bound_too_small(self):
        with pytest.raises(BoundTooSmallError):
            lff_violation("conductor", MonoidSpec(ConductorQ(), max_den=1))

    def test_bad_target(self):
        with pytest.raises(InvalidArgumentError):
            lff_violation("nope", MonoidSpec(ConductorQ(), max_den=3))


class TestFfmDivisorBound:
    @pytest.mark.parametrize(
        "x,expected_indices",
        [(F(1, 2), [1]), (F(11, 6), [1, 2]), (F(4, 3), [2])],
    )
    def test_divisor_atoms_within_bound(self, x, expected_indices):
        spec = MonoidSpec(Alternating(), k=10)
        cert = ffm_divisor_bound_alternating(spec, x)
        assert cert.verified
        assert cert.witness["divisor_indices"] == expected_indices

    def test_non_member_rejected(self):
        with pytest.raises(NotAMemberError):
            ffm_divisor_bound_alternating(MonoidSpec(Alternating(), k=10), F(1, 7))

    def test_wrong_family(self):
        with pytest.raises(InvalidArgumentError):
            ffm_divisor_bound_alternating(MonoidSpec(Grams(), k=3), F(1, 3))


EXPECTED_TABLES = {
    "explicit": {"atomic": "yes", "ACCP": "yes", "BF": "yes", "FF": "yes", "LFF": "yes"},
    "grams": {"atomic": "yes", "ACCP": "no", "BF": "no", "FF": "no", "LFF": "yes"},
    "power": {"atomic": "yes", "ACCP": "no", "BF": "no", "FF": "no", "LFF": "yes"},
    "unit-fractions": {"atomic": "yes", "ACCP": "yes", "BF": "no", "FF": "no", "LFF": "yes"},
    "alternating": {"atomic": "yes", "ACCP": "yes", "BF": "yes", "FF": "yes", "LFF": "yes"},
    "conductor": {"atomic": "yes", "ACCP": "yes", "BF": "yes", "FF": "no", "LFF": "no"},
    "sring": {"atomic": "yes", "ACCP": "yes", "BF": "yes", "FF": "no", "LFF": "no"},
}

SPECS = {
    "explicit": MonoidSpec(Explicit((2, 3))),
    "grams": MonoidSpec(Grams(), k=4),
    "power": MonoidSpec(PowerOf(F(2, 3)), k=4),
    "unit-fractions": MonoidSpec(UnitFractionPrimes(), k=6),
    "alternating": MonoidSpec(Alternating(), k=10),
    "conductor": MonoidSpec(ConductorQ(), max_den=4),
    "sring": MonoidSpec(SRing(F(2)), max_den=6),
}


class TestClassify:
    @pytest.mark.parametrize("name", sorted(EXPECTED_TABLES))
    def test_seven_families_match_certified_table(self, name):
        cert = classify(SPECS[name])
        assert cert.verified
        table = cert.witness["table"]
        assert {k: v["verdict"] for k, v in table.items()} == EXPECTED_TABLES[name]
        assert check_classification_consistency(table)

    def test_sring_multiplicative_table(self):
        cert = classify(SPECS["sring"], structure="multiplicative")
        assert cert.verified
        assert {k: v["verdict"] for k, v in cert.witness["table"].items()} == EXPECTED_TABLES[
            "sring"
        ]

    def test_antimatter_power(self):
        cert = classify(MonoidSpec(PowerOf(F(1, 2)), k=3))
        table = cert.witness["table"]
        assert table["atomic"]["verdict"] == "no"
        assert check_classification_consistency(table)

    def test_consistency_checker_catches_violations(self):
        bad = {
            "atomic": {"verdict": "no", "basis": "x"},
            "ACCP": {"verdict": "yes", "basis": "x"},
            "BF": {"verdict": "no", "basis": "x"},
            "FF": {"verdict": "no", "basis": "x"},
            "LFF": {"verdict": "no", "basis": "x"},
        }
        assert not check_classification_consistency(bad)
        for x, y in IMPLICATIONS:
            table = {p: {"verdict": "unknown", "basis": "-"} for p in bad}
            table[x] = {"verdict": "yes", "basis": "-"}
            table[y] = {"verdict": "no", "basis": "-"}
            assert not check_classification_consistency(table)

    def test_multiplicative_restricted_to_sring(self):
        with pytest.raises(InvalidArgumentError):
            classify(SPECS["grams"], structure="multiplicative")
