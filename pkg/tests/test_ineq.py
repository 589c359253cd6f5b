import math

import pytest

from hhverify.fnspec import parse
from hhverify.hmean import HInterval
from hhverify.ineq import (
    ChainReport,
    ChainTerm,
    HFunction,
    IDENTITY_H,
    bounds_h_pointwise,
    bounds_pointwise,
    chain_harmonic_full,
    chain_harmonic_hh,
    chain_hh_classic,
    chain_h_subinterval,
    chain_reflected_pair,
    chain_refinement,
    chain_subinterval,
    product_inequalities,
    weighted_bounds,
)

I12 = HInterval(1.0, 2.0)
LN2 = math.log(2.0)


def assert_all_equal(report, value, tol=1e-10):
    for term in report.terms:
        assert term.value == pytest.approx(value, abs=tol), report


class TestHFunction:
    @pytest.mark.parametrize(
        "src,h_half,h_int",
        [
            ("x", 0.5, 0.5),
            ("x^2", 0.25, 1.0 / 3.0),
            ("x^0.5", math.sqrt(0.5), 2.0 / 3.0),
            ("1", 1.0, 1.0),
        ],
    )
    def test_builtin_scalars(self, src, h_half, h_int):
        h = HFunction.from_source(src)
        assert h.h_half == pytest.approx(h_half, rel=1e-12)
        assert h.h_int == pytest.approx(h_int, rel=1e-10)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            HFunction.from_source("x - 0.5")

    def test_zero_at_half_rejected(self):
        with pytest.raises(ValueError, match="positive"):
            HFunction.from_source("abs(x - 0.5)")


class TestChainHHClassic:
    def test_square(self):
        r = chain_hh_classic(parse("x^2"), 0.0, 1.0, quad_tol=1e-12)
        assert r.term_values() == pytest.approx((0.25, 1.0 / 3.0, 0.5), abs=1e-11)
        assert r.passed

    def test_constant(self):
        r = chain_hh_classic(parse("4"), -2.0, 3.0)
        assert_all_equal(r, 4.0)
        assert all(s == pytest.approx(0.0, abs=1e-12) for s in r.slacks)

    def test_absolute_value(self):
        r = chain_hh_classic(parse("abs(x)"), -1.0, 1.0, quad_tol=1e-11)
        assert r.term_values() == pytest.approx((0.0, 0.5, 1.0), abs=1e-9)

    def test_bad_interval(self):
        with pytest.raises(ValueError):
            chain_hh_classic(parse("x"), 2.0, 1.0)


class TestChainHarmonicHH:
    def test_reciprocal_equality(self):
        r = chain_harmonic_hh(parse("1/x"), I12, quad_tol=1e-12)
        assert_all_equal(r, 0.75, tol=1e-11)
        assert r.passed

    def test_identity_function(self):
        r = chain_harmonic_hh(parse("x"), I12, quad_tol=1e-12)
        assert r.term_values() == pytest.approx((4.0 / 3.0, 2.0 * LN2, 1.5), abs=1e-11)
        assert r.passed

    def test_concave_direction(self):
        r = chain_harmonic_hh(parse("-ln(x)"), I12, direction="concave")
        assert r.passed
        assert r.term_values()[0] > r.term_values()[2]

    def test_negative_interval(self):
        r = chain_harmonic_hh(parse("1/x"), HInterval(-2.0, -1.0), quad_tol=1e-12)
        assert_all_equal(r, -0.75, tol=1e-11)


class TestBoundsPointwise:
    def test_reciprocal(self):
        r = bounds_pointwise(parse("1/x"), I12, 1.5)
        assert_all_equal(r, 0.75, tol=1e-14)

    def test_right_link_tight_at_endpoint(self):
        f = parse("exp(x)")
        r = bounds_pointwise(f, I12, 1.0)
        assert r.terms[1].value == r.terms[2].value

    def test_left_link_tight_at_midpoint(self):
        f = parse("exp(x)")
        r = bounds_pointwise(f, I12, I12.harmonic_midpoint)
        assert r.terms[0].value == r.terms[1].value


class TestChainSubinterval:
    def test_full_range_reduces_to_t1(self):
        for src in ("exp(x)", "x^2", "1/x"):
            f = parse(src)
            t1 = chain_harmonic_hh(f, I12, quad_tol=1e-12)
            t3 = chain_subinterval(f, I12, 1.0, 2.0, quad_tol=1e-12)
            for u, v in zip(t1.term_values(), t3.term_values()):
                assert u == pytest.approx(v, abs=1e-10)

    def test_constant_corrected_vs_printed(self):
        f = parse("1")
        corrected = chain_subinterval(f, I12, 1.2, 1.7)
        assert_all_equal(corrected, 1.0)
        assert corrected.passed
        printed = chain_subinterval(f, I12, 1.2, 1.7, variant="as_printed")
        assert printed.terms[1].value == pytest.approx(0.75, abs=1e-10)
        assert not printed.passed

    def test_reciprocal_equality(self):
        r = chain_subinterval(parse("1/x"), I12, 1.2, 1.8, quad_tol=1e-12)
        assert_all_equal(r, 0.75, tol=1e-11)

    def test_swapped_parameters_agree(self):
        f = parse("exp(x)")
        fwd = chain_subinterval(f, I12, 1.2, 1.8, quad_tol=1e-12)
        rev = chain_subinterval(f, I12, 1.8, 1.2, quad_tol=1e-12)
        for u, v in zip(fwd.term_values(), rev.term_values()):
            assert u == pytest.approx(v, abs=1e-10)

    def test_equal_parameters_rejected(self):
        with pytest.raises(ValueError):
            chain_subinterval(parse("x"), I12, 1.5, 1.5)

    def test_concave_direction(self):
        # sym(-ln) is harmonic concave: the chain holds with reversed slacks
        r = chain_subinterval(parse("-ln(x)"), I12, 1.2, 1.8, quad_tol=1e-11, direction="concave")
        assert r.passed
        values = r.term_values()
        assert values[0] >= values[1] >= values[2]
        assert not chain_subinterval(parse("-ln(x)"), I12, 1.2, 1.8, quad_tol=1e-11).passed


class TestChainReflectedPair:
    def test_constant(self):
        r = chain_reflected_pair(parse("1"), I12, 1.1)
        assert_all_equal(r, 1.0)

    def test_reciprocal(self):
        r = chain_reflected_pair(parse("1/x"), I12, 1.1, quad_tol=1e-12)
        assert_all_equal(r, 0.75, tol=1e-11)

    def test_identity_function_slack_signs(self):
        r = chain_reflected_pair(parse("x"), I12, 1.1, quad_tol=1e-12)
        values = r.term_values()
        assert values[0] == pytest.approx(4.0 / 3.0, rel=1e-14)
        assert r.passed
        assert values[0] <= values[1] <= values[2]

    def test_printed_halves_middle(self):
        corrected = chain_reflected_pair(parse("1"), I12, 1.1)
        printed = chain_reflected_pair(parse("1"), I12, 1.1, variant="as_printed")
        assert printed.terms[1].value == pytest.approx(0.5 * corrected.terms[1].value, rel=1e-12)
        assert not printed.passed

    def test_beyond_midpoint_is_fine(self):
        # x > 2ab/(a+b): coefficient and inner integral both flip sign
        r = chain_reflected_pair(parse("exp(x)"), I12, 1.7, quad_tol=1e-11)
        assert r.passed

    def test_midpoint_excluded(self):
        with pytest.raises(ValueError, match="midpoint"):
            chain_reflected_pair(parse("x"), I12, I12.harmonic_midpoint)


class TestChainRefinement:
    def test_constant(self):
        assert_all_equal(chain_refinement(parse("1"), I12), 1.0)

    def test_reciprocal(self):
        r = chain_refinement(parse("1/x"), I12, quad_tol=1e-10)
        assert_all_equal(r, 0.75, tol=1e-9)

    def test_neg_log_reversed(self):
        r = chain_refinement(parse("-ln(x)"), I12, direction="concave", quad_tol=1e-10)
        values = r.term_values()
        assert values[0] == pytest.approx(-math.log(4.0 / 3.0), rel=1e-12)
        assert values[2] == pytest.approx(0.5 - 7.0 / 6.0 * LN2, abs=1e-9)
        assert values[0] >= values[1] >= values[2]
        assert r.passed

    def test_identity_weight_matches_plain(self):
        f = parse("exp(x)")
        plain = chain_refinement(f, I12, quad_tol=1e-10)
        weighted = chain_refinement(f, I12, h=IDENTITY_H, quad_tol=1e-10)
        for u, v in zip(plain.term_values(), weighted.term_values()):
            assert u == pytest.approx(v, rel=1e-10)

    def test_p_weight_scalings(self):
        h1 = HFunction.from_source("1")
        r = chain_refinement(parse("1"), I12, h=h1, quad_tol=1e-10)
        assert r.term_values() == pytest.approx((0.5, 1.0, 2.0), abs=1e-9)
        assert r.passed

    def test_printed_variant_fails_constants(self):
        r = chain_refinement(parse("1"), I12, variant="as_printed")
        assert r.terms[1].value == pytest.approx(0.5, abs=1e-9)
        assert not r.passed


class TestChainHarmonicFull:
    def test_reciprocal_equality(self):
        r = chain_harmonic_full(parse("1/x"), I12, 1.3, 1.9, quad_tol=1e-12)
        assert_all_equal(r, 0.75, tol=1e-11)
        assert len(r.terms) == 4

    def test_full_range_collapses_first_link(self):
        r = chain_harmonic_full(parse("exp(x)"), I12, 1.0, 2.0, quad_tol=1e-11)
        assert r.terms[0].value == pytest.approx(r.terms[1].value, rel=1e-12)

    def test_identity_function(self):
        r = chain_harmonic_full(parse("x"), I12, 1.25, 1.75, quad_tol=1e-11)
        assert r.terms[0].value == pytest.approx(4.0 / 3.0, rel=1e-14)
        assert r.passed


class TestProductInequalities:
    def test_reciprocal_pair_equality(self):
        lower, upper = product_inequalities(parse("1/x"), parse("1/x"), I12, quad_tol=1e-12)
        assert lower.term_values() == pytest.approx((9.0 / 16.0, 9.0 / 16.0), abs=1e-10)
        assert upper.term_values() == pytest.approx((9.0 / 16.0, 9.0 / 16.0), abs=1e-10)
        assert lower.passed and upper.passed

    def test_constants(self):
        lower, upper = product_inequalities(parse("2"), parse("2"), I12)
        assert_all_equal(lower, 4.0)
        assert_all_equal(upper, 4.0)

    def test_mixed_pair(self):
        lower, upper = product_inequalities(parse("1/x"), parse("x"), I12, quad_tol=1e-12)
        w = lower.terms[1].value
        assert w == pytest.approx(1.5 * LN2, abs=1e-10)
        assert lower.passed and upper.passed

    def test_printed_upper_coefficient_breaks(self):
        f = parse("x")
        _, corrected = product_inequalities(f, f, I12, quad_tol=1e-12)
        _, printed = product_inequalities(f, f, I12, quad_tol=1e-12, variant="as_printed")
        w = 1.0 + (4.0 / 3.0) * LN2
        assert corrected.terms[0].value == pytest.approx(w, abs=1e-10)
        assert corrected.terms[1].value == pytest.approx(17.0 / 3.0 * LN2 - 2.0, abs=1e-10)
        assert corrected.passed
        assert printed.terms[1].value == pytest.approx(16.0 / 3.0 * LN2 - 2.0, abs=1e-10)
        assert not printed.passed


class TestChainHSubinterval:
    def test_identity_weight_reduces_to_t3(self):
        for src in ("1/x", "exp(x)", "x^2"):
            f = parse(src)
            t3 = chain_subinterval(f, I12, 1.2, 1.8, quad_tol=1e-12)
            t5 = chain_h_subinterval(f, IDENTITY_H, I12, 1.2, 1.8, quad_tol=1e-12)
            for u, v in zip(t3.term_values(), t5.term_values()):
                assert u == pytest.approx(v, abs=1e-12)

    def test_constant_identity_weight_full_range(self):
        r = chain_h_subinterval(parse("3"), IDENTITY_H, I12, 1.0, 2.0, quad_tol=1e-12)
        assert_all_equal(r, 3.0)

    def test_particular_case_p_weight(self):
        # x = a, y = b with h == 1 on f = 1/t
        h1 = HFunction.from_source("1")
        r = chain_h_subinterval(parse("1/x"), h1, I12, 1.0, 2.0, quad_tol=1e-12)
        assert r.term_values() == pytest.approx((0.375, 0.75, 1.5), abs=1e-10)
        assert r.passed


class TestBoundsHPointwise:
    def test_barycentric_weights_sum_to_one(self):
        from hhverify.ineq import _barycentric_weights

        for x in (1.0, 1.2, 4.0 / 3.0, 1.9, 2.0):
            w1, w2 = _barycentric_weights(I12, x)
            assert w1 + w2 == pytest.approx(1.0, abs=1e-14)
            assert -1e-12 <= w1 <= 1.0 + 1e-12

    def test_identity_weight_recovers_t2(self):
        for src in ("1/x", "exp(x)"):
            f = parse(src)
            t2 = bounds_pointwise(f, I12, 1.4)
            t6 = bounds_h_pointwise(f, IDENTITY_H, I12, 1.4)
            for u, v in zip(t2.term_values(), t6.term_values()):
                assert u == pytest.approx(v, abs=1e-12)

    def test_reciprocal_equality(self):
        r = bounds_h_pointwise(parse("1/x"), IDENTITY_H, I12, 1.5)
        assert_all_equal(r, 0.75, tol=1e-12)

    def test_tight_at_endpoint(self):
        r = bounds_h_pointwise(parse("exp(x)"), IDENTITY_H, I12, 1.0)
        assert r.terms[1].value == pytest.approx(r.terms[2].value, rel=1e-14)

    def test_printed_skips_first_weight_application(self):
        h2 = HFunction.from_source("x^2")
        corrected = bounds_h_pointwise(parse("1/x"), h2, I12, 1.5)
        printed = bounds_h_pointwise(parse("1/x"), h2, I12, 1.5, variant="as_printed")
        assert printed.terms[2].value > corrected.terms[2].value  # w1 > w1^2 here


class TestWeightedBounds:
    def test_unit_weight_identity_h_reciprocal(self):
        r = weighted_bounds(parse("1/x"), IDENTITY_H, parse("1"), I12, quad_tol=1e-12)
        assert_all_equal(r, 0.75, tol=1e-10)
        assert r.passed

    def test_zero_weight(self):
        r = weighted_bounds(parse("1/x"), IDENTITY_H, parse("0"), I12)
        assert_all_equal(r, 0.0)

    def test_identity_function_slack_signs(self):
        r = weighted_bounds(parse("x"), IDENTITY_H, parse("1"), I12, quad_tol=1e-12)
        values = r.term_values()
        assert values[0] == pytest.approx(4.0 / 3.0, rel=1e-12)
        assert values[2] == pytest.approx(1.5, abs=1e-10)
        assert values[0] <= values[1] <= values[2]
        assert r.passed

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError, match="negative"):
            weighted_bounds(parse("1/x"), IDENTITY_H, parse("x - 1.5"), I12)

    def test_printed_jacobian_slip_recorded(self):
        # for w == 1, h = id the printed right-hand side integrates
        # 2*w1(t) instead of w1(t) + w2(t) == 1: off by 4(1 - ln 2) - 1
        corrected = weighted_bounds(parse("1/x"), IDENTITY_H, parse("1"), I12, quad_tol=1e-12)
        printed = weighted_bounds(
            parse("1/x"), IDENTITY_H, parse("1"), I12, quad_tol=1e-12, variant="as_printed"
        )
        expected_printed = 0.75 * 4.0 * (1.0 - LN2)
        assert printed.terms[2].value == pytest.approx(expected_printed, abs=1e-10)
        assert corrected.terms[2].value == pytest.approx(0.75, abs=1e-10)
        for report in (corrected, printed):
            dev = report.metadata["printed_right_deviation"]
            assert dev == pytest.approx(expected_printed - 0.75, abs=1e-9)

    def test_printed_jacobian_slip_can_violate(self):
        # the deviation is int w2(s) w(s) (r(s)^2/s^2 - 1) ds, so a weight
        # supported right of the harmonic midpoint (where r(s) < s) drives
        # the printed right-hand side below the tight middle term
        w = parse("max(x - 1.3333333333333333, 0)^2")
        corrected = weighted_bounds(parse("1/x"), IDENTITY_H, w, I12, quad_tol=1e-12)
        printed = weighted_bounds(parse("1/x"), IDENTITY_H, w, I12, quad_tol=1e-12, variant="as_printed")
        assert corrected.passed
        assert printed.metadata["printed_right_deviation"] < 0.0
        assert not printed.passed


class TestChainReportMechanics:
    def test_slack_layout(self):
        r = ChainReport.build(
            "demo", "derived_corrected", "convex",
            [ChainTerm("a", 1.0), ChainTerm("b", 2.0), ChainTerm("c", 1.5)],
            tol=1e-8,
        )
        assert r.slacks == (1.0, -0.5)
        assert len(r.slacks) == len(r.terms) - 1
        assert not r.passed

    def test_concave_reverses_slacks(self):
        r = ChainReport.build(
            "demo", "derived_corrected", "concave",
            [ChainTerm("a", 2.0), ChainTerm("b", 1.0)],
            tol=1e-8,
        )
        assert r.slacks == (1.0,)
        assert r.passed

    def test_error_bars_gate_pass(self):
        # a slack negative beyond tol + bars must fail; within bars must pass
        terms = [ChainTerm("a", 1.0, 0.0), ChainTerm("b", 1.0 - 5e-7, 1e-6)]
        assert ChainReport.build("demo", "derived_corrected", "convex", terms, tol=1e-8).passed
        terms = [ChainTerm("a", 1.0, 0.0), ChainTerm("b", 1.0 - 5e-6, 1e-6)]
        assert not ChainReport.build("demo", "derived_corrected", "convex", terms, tol=1e-8).passed

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            ChainReport.build("demo", "derived_corrected", "sideways", [ChainTerm("a", 1.0)], 1e-8)

    def test_bad_variant(self):
        with pytest.raises(ValueError):
            chain_subinterval(parse("x"), I12, 1.2, 1.8, variant="misprinted")

    def test_to_dict_shape(self):
        r = chain_harmonic_hh(parse("1/x"), I12)
        d = r.to_dict()
        assert d["chain"] == "t1"
        assert len(d["terms"]) == 3
        assert len(d["slacks"]) == 2
        assert d["metadata"]["f"] == "1/x"


class TestEqualityCharacterization:
    @pytest.mark.parametrize("alpha,beta", [(1.0, 0.0), (2.0, -1.0), (-0.5, 3.0)])
    def test_harmonic_affine_family(self, alpha, beta):
        # f(t) = alpha/t + beta gives all-equal terms in every plain chain
        f = parse(f"{alpha!r}/x + {beta!r}")
        expected = alpha * 0.75 + beta
        for report in (
            chain_harmonic_hh(f, I12, quad_tol=1e-12),
            bounds_pointwise(f, I12, 1.45),
            chain_subinterval(f, I12, 1.15, 1.85, quad_tol=1e-12),
            chain_reflected_pair(f, I12, 1.2, quad_tol=1e-12),
            chain_refinement(f, I12, quad_tol=1e-10),
            chain_h_subinterval(f, IDENTITY_H, I12, 1.15, 1.85, quad_tol=1e-12),
        ):
            assert_all_equal(report, expected, tol=1e-9)
