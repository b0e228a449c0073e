import random
from decimal import Decimal
from fractions import Fraction

import pytest

from oracles import brute_force_gp_divides
from posmon.errors import InvalidArgumentError, UnsupportedFamilyError
from posmon.factorize import length_set
from posmon.monoids import ConductorQ, Explicit, Grams, MonoidSpec, PowerOf, contains
from posmon.semiring import (
    eval_exponential,
    factor_gp,
    format_gen_poly,
    gen_poly,
    gp_add,
    gp_divide,
    gp_mul,
    gp_one,
    gp_stats,
    gp_zero,
    is_irreducible_gp,
    monomial,
    parse_gen_poly,
)

F = Fraction
E23 = MonoidSpec(Explicit((2, 3)))
N0 = MonoidSpec(Explicit((1,)))


def poly(text, spec=E23):
    return parse_gen_poly(spec, text)


class TestArithmetic:
    def test_product_expansion(self):
        assert gp_mul(poly("1 + x^2"), poly("1 + x^3")) == poly("1 + x^2 + x^3 + x^5")

    def test_monomial_product(self):
        assert gp_mul(poly("x^2"), poly("x^3")) == poly("x^5")

    def test_unit_law(self):
        spec = MonoidSpec(PowerOf(F(2, 3)), k=3)
        f = gen_poly(spec, {F(2, 3): 2, F(1): 3})
        assert gp_mul(f, gp_one(spec)) == f

    def test_add(self):
        assert gp_add(poly("1 + x^2"), poly("x^2 + x^3")) == poly("1 + 2*x^2 + x^3")

    def test_mismatched_specs(self):
        with pytest.raises(InvalidArgumentError):
            gp_add(poly("1"), poly("1", N0))

    def test_membership_enforced(self):
        with pytest.raises(InvalidArgumentError):
            gen_poly(E23, {F(1): 1})  # 1 is not in <2,3>


class TestStats:
    def test_power_family_poly(self):
        spec = MonoidSpec(PowerOf(F(2, 3)), k=3)
        f = gen_poly(spec, {F(2, 3): 2, F(1): 3})
        stats = gp_stats(f)
        assert stats.deg == 1
        assert stats.lc == 3
        assert stats.ord == F(2, 3)
        assert stats.exponent_set == (F(2, 3), F(1))
        assert stats.eval_at_one == 5

    def test_unit_stats(self):
        stats = gp_stats(poly("1"))
        assert stats.deg == 0 and stats.lc == 1

    def test_grams_exponent_addition(self):
        spec = MonoidSpec(Grams(), k=3)
        product = gp_mul(
            gen_poly(spec, {F(1, 3): 1}), gen_poly(spec, {F(1, 10): 1})
        )
        assert gp_stats(product).deg == F(13, 30)

    def test_zero_poly_undefined(self):
        with pytest.raises(InvalidArgumentError):
            gp_stats(gp_zero(E23))


class TestEvalExponential:
    def test_one_plus_e(self):
        assert str(eval_exponential(poly("1 + x", N0), 10)) == "3.718281828"

    def test_zero(self):
        assert eval_exponential(gp_zero(E23), 10) == Decimal(0)

    def test_two_root_e(self):
        spec = MonoidSpec(Explicit((F(1, 2),)))
        f = gen_poly(spec, {F(1, 2): 2})
        assert str(eval_exponential(f, 10)) == "3.297442541"

    def test_matches_float_coarsely(self):
        import math

        f = poly("2 + 3*x^2 + x^5")
        got = float(eval_exponential(f, 20))
        want = 2 + 3 * math.exp(2) + math.exp(5)
        assert abs(got - want) < 1e-9


class TestDivision:
    def test_divide_back(self):
        f = poly("1 + x^2 + x^3 + x^5")
        assert gp_divide(f, poly("1 + x^2")) == poly("1 + x^3")

    def test_monomial_quotient(self):
        assert gp_divide(poly("x^5"), poly("x^3")) == poly("x^2")

    def test_exponent_outside_monoid(self):
        assert gp_divide(poly("x^4"), poly("x^3")) is None

    def test_zero_divisor_and_dividend(self):
        with pytest.raises(ZeroDivisionError):
            gp_divide(poly("1"), gp_zero(E23))
        assert gp_divide(gp_zero(E23), poly("1 + x^2")) == gp_zero(E23)

    def test_dense_exponents_unsupported(self):
        spec = MonoidSpec(ConductorQ(), max_den=3)
        f = gen_poly(spec, {F(3, 2): 1})
        with pytest.raises(UnsupportedFamilyError):
            gp_divide(f, f)

    def test_non_integral_quotient_rejected(self):
        assert gp_divide(poly("3*x^2"), poly("2*x^2")) is None

    def test_roundtrip_random(self):
        rng = random.Random(5)
        members = [F(0), F(2), F(3), F(4), F(5), F(6)]
        for _ in range(200)[:200]:
            def rand_poly():
                exps = rng.sample(members, rng.randint(1, 3))
                return gen_poly(E23, {e: rng.randint(1, 4) for e in exps})

            g, h = rand_poly(), rand_poly()
            f = gp_mul(g, h)
            q = gp_divide(f, g)
            assert q is not None
            assert gp_mul(g, q) == f

    def test_none_confirmed_by_brute_force(self):
        member = lambda e: contains(E23, e).member
        cases = [
            (poly("x^4"), poly("x^3")),
            (poly("1 + x^2 + x^3"), poly("1 + x^2")),
            (poly("2 + x^2"), poly("1 + x^2")),
            (poly("3*x^2"), poly("2*x^2")),
        ]
        for f, g in cases:
            if gp_divide(f, g) is None:
                assert not brute_force_gp_divides(f, g, member), (str(f), str(g))


class TestIrreducibility:
    def test_x_squared_irreducible(self):
        report = is_irreducible_gp(poly("x^2"))
        assert report.irreducible
        assert report.explored["coefficient_cap"] == 1

    def test_reducible_with_witness(self):
        report = is_irreducible_gp(poly("1 + x^2 + x^3 + x^5"))
        assert not report.irreducible
        assert report.witness == poly("1 + x^2")
        assert gp_mul(report.witness, report.cofactor) == poly("1 + x^2 + x^3 + x^5")

    def test_one_plus_x_irreducible(self):
        assert is_irreducible_gp(poly("1 + x", N0)).irreducible

    def test_constant_divisor_found(self):
        report = is_irreducible_gp(poly("2 + 2*x", N0))
        assert not report.irreducible

    def test_units_rejected(self):
        with pytest.raises(InvalidArgumentError):
            is_irreducible_gp(gp_one(E23))
        with pytest.raises(InvalidArgumentError):
            is_irreducible_gp(gp_zero(E23))


class TestFactorSearch:
    def test_x6_two_factorizations(self):
        found = factor_gp(poly("x^6"), 5)
        shapes = {tuple(format_gen_poly(g) for g in fs) for fs in found.factorizations}
        assert shapes == {("x^3", "x^3"), ("x^2", "x^2", "x^2")}
        assert found.lengths == {2, 3}

    def test_square_of_binomial(self):
        found = factor_gp(poly("1 + 2*x + x^2", N0), 4)
        assert [[format_gen_poly(g) for g in fs] for fs in found.factorizations] == [
            ["x + 1", "x + 1"]
        ]

    def test_irreducible_is_its_own_factorization(self):
        found = factor_gp(poly("x^2"), 4)
        assert [[format_gen_poly(g) for g in fs] for fs in found.factorizations] == [["x^2"]]

    def test_max_len_caps_results(self):
        found = factor_gp(poly("x^6"), 2)
        assert found.lengths == {2}

    def test_constants_factor_like_integers(self):
        found = factor_gp(poly("12", N0), 4)
        assert found.lengths == {3}  # 2*2*3, the unique splitting into irreducibles
        assert [[format_gen_poly(g) for g in fs] for fs in found.factorizations] == [
            ["2", "2", "3"]
        ]

    def test_monomial_correspondence_small(self):
        for m in (4, 6, 12):
            found = factor_gp(monomial(E23, m), 8)
            lengths, _ = length_set(E23, m)
            assert found.lengths == lengths


class TestMultiplicativity:
    def test_deg_lc_ord_eval_random(self):
        rng = random.Random(11)
        members = [F(0), F(2), F(3), F(4), F(5), F(6), F(7)]
        for _ in range(200):
            def rand_poly():
                exps = rng.sample(members, rng.randint(1, 4))
                return gen_poly(E23, {e: rng.randint(1, 9) for e in exps})

            f, g = rand_poly(), rand_poly()
            sf, sg, sfg = gp_stats(f), gp_stats(g), gp_stats(gp_mul(f, g))
            assert sfg.deg == sf.deg + sg.deg
            assert sfg.lc == sf.lc * sg.lc
            assert sfg.ord == sf.ord + sg.ord
            assert sfg.eval_at_one == sf.eval_at_one * sg.eval_at_one

    def test_length_bound_shadow(self):
        # factor count <= longest exponent factorization + Omega(eval_at_one)
        from posmon.rationals import prime_factors

        f = gp_mul(gp_mul(poly("2*x^2"), poly("x^3")), poly("3 + 3*x^2"))
        found = factor_gp(f, 8)
        lengths, _ = length_set(E23, gp_stats(f).deg)
        omega = sum(prime_factors(gp_stats(f).eval_at_one).values())
        for fs in found.factorizations:
            non_monomial_degree = sum(1 for g in fs if gp_stats(g).deg != 0)
            assert non_monomial_degree <= max(lengths)
            assert len(fs) <= max(lengths) + omega


class TestParsing:
    def test_syntax_variants(self):
        spec = MonoidSpec(ConductorQ(), max_den=6)
        f = parse_gen_poly(spec, "3*x^(5/2) + 1")
        assert f.terms == ((F(0), 1), (F(5, 2), 3))
        g = parse_gen_poly(N0, "2x + x^2 + 4")
        assert g.terms == ((F(0), 4), (F(1), 2), (F(2), 1))

    def test_format_roundtrip(self):
        for text in ("x^5 + x^3 + x^2 + 1", "3*x^2 + 2", "0", "1"):
            f = parse_gen_poly(E23, text)
            assert parse_gen_poly(E23, format_gen_poly(f)) == f

    def test_rejects_garbage(self):
        with pytest.raises(InvalidArgumentError):
            parse_gen_poly(E23, "x^2 + y")
        with pytest.raises(InvalidArgumentError):
            parse_gen_poly(E23, "")
