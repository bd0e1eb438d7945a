"""Unit tests for the graded-matrix exactness and splitting machinery."""

from __future__ import annotations

import random
from fractions import Fraction

import pytest

from multistruct.arith import MultiPoly, var
from multistruct.graded import (
    DEFAULT_POINTS,
    ComplexSpec,
    GradedCertificateError,
    GradedFree,
    GradedMatrix,
    SectionPair,
    alphabeta_builder,
    cokernel_h0_profile,
    common_zero_check,
    compose,
    default_pair,
    homogeneous_degree,
    injectivity_certificate,
    matrix_rank,
    parse_section_pair,
    pointwise_exactness,
    slice_dim,
    slice_exactness_window,
    slice_matrix,
    slice_rank,
    splitting_type,
    symbolic_complex_identities,
    transpose_dual,
)

s = var("s")
u = var("u")


class TestGradedBasics:
    def test_slice_dim(self):
        F = GradedFree((-2, 0))
        # S(-2)_d has dim max(d-1, 0); S(0)_d has dim max(d+1, 0)
        assert slice_dim(F, 0) == 1
        assert slice_dim(F, 3) == 6
        assert slice_dim(F, -2) == 0

    def test_homogeneous_degree(self):
        assert homogeneous_degree(s * s + u * u) == 2
        assert homogeneous_degree(s + u * u) is None
        assert homogeneous_degree(MultiPoly.zero()) is None

    def test_entry_degree_validation(self):
        source = GradedFree((-4,))
        target = GradedFree((-2,))
        GradedMatrix(source, target, ((s * u,),))  # degree 2 = -2 - (-4)
        with pytest.raises(ValueError):
            GradedMatrix(source, target, ((s,),))

    def test_matrix_rank_fractions(self):
        rows = [[Fraction(1, 2), Fraction(1)], [Fraction(1), Fraction(2)]]
        assert matrix_rank(rows) == 1
        assert matrix_rank([[Fraction(0)]]) == 0

    def test_slice_matrix_shape(self):
        pair = default_pair(0)
        alpha, beta, cx = alphabeta_builder(pair)
        m = slice_matrix(alpha, 12)
        assert len(m) == slice_dim(cx.middle, 12)
        assert len(m[0]) == slice_dim(cx.source, 12)

    def test_transpose_dual_twists(self):
        pair = default_pair(0)
        alpha, _, _ = alphabeta_builder(pair)
        dual = transpose_dual(alpha)
        assert dual.source.twists == (6, 4, 2)
        assert dual.target.twists == (10,)


class TestSectionPairs:
    def test_default_pair(self):
        pair = default_pair(3)
        assert pair.a == s**5
        assert pair.b == u**7

    def test_degree_validation(self):
        with pytest.raises(ValueError):
            SectionPair(0, s, u**4)  # a must have degree 2
        with pytest.raises(ValueError):
            SectionPair(0, s * s, u * u)  # b must have degree 4
        with pytest.raises(ValueError):
            SectionPair(0, MultiPoly.zero(), u**4)
        with pytest.raises(ValueError):
            SectionPair(0, s * s + s, u**4)  # not homogeneous

    def test_parse_round_trip(self):
        pair = parse_section_pair("r=1; a=s^3 + s*u^2; b=u^5")
        assert pair.r == 1
        assert pair.a == s**3 + s * u * u
        assert pair.b == u**5
        with pytest.raises(ValueError):
            parse_section_pair("a=s^2; b=u^4")

    def test_common_zero_check(self):
        assert common_zero_check(default_pair(0))
        assert common_zero_check(SectionPair(0, s * s + u * u, u**4))
        # both sections vanish at [1:0]
        assert not common_zero_check(SectionPair(1, s * u * u, u**5))
        # both vanish at [0:1]
        assert not common_zero_check(SectionPair(0, s * s, s * u**3))
        # shared root s = u
        assert not common_zero_check(
            SectionPair(0, (s - u) * s, (s - u) * u**3)
        )


class TestComplex:
    def test_builder_entries(self):
        pair = default_pair(0)
        alpha, beta, cx = alphabeta_builder(pair)
        assert alpha.entries == ((s**4,), (2 * s * s * u**4,), (u**8,))
        assert beta.entries[0] == (2 * u**4, -(s * s), MultiPoly.zero())
        assert beta.entries[1] == (MultiPoly.zero(), -(u**4), 2 * s * s)
        assert cx.source.twists == (-12,)
        assert cx.middle.twists == (-8, -6, -4)
        assert cx.target.twists == (-4, -2)

    def test_symbolic_identities(self):
        assert symbolic_complex_identities() is True

    def test_beta_alpha_zero_concrete(self):
        for rv in range(4):
            alpha, beta, _ = alphabeta_builder(default_pair(rv))
            assert all(
                entry.is_zero() for row in compose(beta, alpha) for entry in row
            )

    def test_pointwise_exactness(self):
        _, _, cx = alphabeta_builder(default_pair(0))
        ok, witness = pointwise_exactness(cx, list(DEFAULT_POINTS))
        assert ok and witness is None

    def test_pointwise_catches_common_zero(self):
        bad = SectionPair(1, s * u * u, u**5)  # both vanish at [1:0]
        _, _, cx = alphabeta_builder(bad)
        ok, witness = pointwise_exactness(cx, [(Fraction(1), Fraction(0))])
        assert not ok
        assert witness == (1, 0)

    def test_rejects_origin(self):
        _, _, cx = alphabeta_builder(default_pair(0))
        with pytest.raises(ValueError):
            pointwise_exactness(cx, [(Fraction(0), Fraction(0))])

    def test_scaling_invariance(self):
        _, _, cx = alphabeta_builder(default_pair(2))
        base = (Fraction(2), Fraction(3))
        scaled = (Fraction(4), Fraction(6))
        ok1, _ = pointwise_exactness(cx, [base])
        ok2, _ = pointwise_exactness(cx, [scaled])
        assert ok1 == ok2 == True


class TestSliceCertificates:
    def test_window_r0(self):
        _, _, cx = alphabeta_builder(default_pair(0))
        assert slice_exactness_window(cx) == (18, 24)

    def test_alternating_slice_sums_vanish(self):
        _, _, cx = alphabeta_builder(default_pair(1))
        d0, d1 = slice_exactness_window(cx)
        for d in range(d0, d1 + 1):
            total = (
                slice_dim(cx.source, d)
                - slice_dim(cx.middle, d)
                + slice_dim(cx.target, d)
            )
            # exactness of 0 -> source -> middle -> target -> 0 in high slices
            assert total == 0

    def test_window_fails_for_degenerate_pair(self):
        bad = SectionPair(1, s * u * u, u**5)
        _, _, cx = alphabeta_builder(bad)
        with pytest.raises(GradedCertificateError):
            slice_exactness_window(cx)

    def test_cokernel_profile_nonnegative(self):
        _, _, cx = alphabeta_builder(default_pair(0))
        profile = cokernel_h0_profile(cx, range(-6, 25))
        assert all(v >= 0 for v in profile.values())
        # h^0(F(d)) matches the split model O(-4) + O(-2)
        for d, got in profile.items():
            assert got == max(d - 3, 0) + max(d - 1, 0)


class TestSplitting:
    @pytest.mark.parametrize("rv", range(0, 7))
    def test_splitting_values(self, rv):
        _, _, cx = alphabeta_builder(default_pair(rv))
        assert splitting_type(cx, 2 * rv - 6) == (rv - 4, rv - 2)

    def test_sum_degree_checked(self):
        _, _, cx = alphabeta_builder(default_pair(0))
        with pytest.raises(ValueError):
            splitting_type(cx, 0)


class TestCertificate:
    @pytest.mark.parametrize("rv", range(0, 7))
    def test_default_pairs(self, rv):
        assert injectivity_certificate(rv) is True

    def test_dense_pair(self):
        pair = SectionPair(1, s**3 + s * u * u, u**5)
        assert injectivity_certificate(1, pair) is True

    def test_common_zero_rejected(self):
        bad = SectionPair(1, s * u * u, u**5)
        with pytest.raises(GradedCertificateError, match="common zero"):
            injectivity_certificate(1, bad)

    def test_mismatched_r_rejected(self):
        with pytest.raises(ValueError):
            injectivity_certificate(2, default_pair(1))

    def test_needs_five_points(self):
        with pytest.raises(ValueError):
            injectivity_certificate(0, points=[(Fraction(1), Fraction(0))])

    def test_random_pairs(self):
        rng = random.Random(20260815)
        produced = 0
        for _ in range(40):
            rv = rng.randint(0, 3)
            a = _random_section(rng, rv + 2)
            b = _random_section(rng, rv + 4)
            try:
                pair = SectionPair(rv, a, b)
            except ValueError:
                continue
            if not common_zero_check(pair):
                with pytest.raises(GradedCertificateError):
                    injectivity_certificate(rv, pair)
            else:
                assert injectivity_certificate(rv, pair) is True
                produced += 1
        assert produced >= 20


def _random_section(rng: random.Random, degree: int) -> MultiPoly:
    total = MultiPoly.zero()
    for k in range(degree + 1):
        c = rng.randint(-3, 3)
        if c:
            total = total + c * s**k * u ** (degree - k)
    return total
