"""Unit tests for the truncated Chow-ring layer."""

from __future__ import annotations

import random

import pytest

from multistruct.arith import var
from multistruct.chow import (
    BundleClass,
    ChowElem,
    adams_operation,
    chern_character,
    chern_from_character,
    euler_characteristic,
    koszul_complete_intersection,
    koszul_euler,
    line_bundle,
    split_bundle,
    splitting_oracle,
    todd_class,
    wedge_powers,
)

t = var("t")
c1, c2, c3 = var("c1"), var("c2"), var("c3")


class TestChowElem:
    def test_truncation(self):
        h = ChowElem(3, [0, 1])  # the hyperplane class on P^3
        assert (h**4).coeffs == ChowElem(3).coeffs
        assert (h**3).coeffs[3] == 1

    def test_ring_ops(self):
        a = ChowElem(2, [1, 2, 3])
        b = ChowElem(2, [4, 5, 6])
        assert (a + b) - b == a
        assert a * b == b * a
        assert a * ChowElem.unit(2) == a

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ChowElem(2, [1]) + ChowElem(3, [1])

    def test_too_many_coefficients_rejected(self):
        with pytest.raises(ValueError):
            ChowElem(1, [1, 2, 3])


class TestBundleClass:
    def test_validation(self):
        with pytest.raises(ValueError):
            BundleClass(0, [], 5)
        with pytest.raises(ValueError):
            BundleClass(2, [c1], 5)
        with pytest.raises(ValueError):
            BundleClass(3, [c1, c2, c3], 2)  # c3 beyond the truncation

    def test_split_bundle_elementary_symmetric(self):
        B = split_bundle([1, 2, 3], 5)
        assert [c.as_fraction() for c in B.chern] == [6, 11, 6]

    def test_character_round_trip_symbolic(self):
        B = BundleClass(3, [c1, c2, c3], 5)
        ch = chern_character(B)
        recovered = chern_from_character(ch, 3)
        assert recovered[0] == c1
        assert recovered[1] == c2
        assert recovered[2] == c3
        assert all(c.is_zero() for c in recovered[3:])

    def test_character_rank_checked(self):
        B = split_bundle([1, -1], 4)
        with pytest.raises(ValueError):
            chern_from_character(chern_character(B), 3)


class TestAdamsAndWedge:
    def test_adams_on_line_bundle(self):
        # psi^k on O(d) is O(kd)
        L = line_bundle(var("c1"), 5)
        scaled = adams_operation(3, chern_character(L))
        assert scaled == chern_character(line_bundle(3 * var("c1"), 5))

    def test_wedge_symbolic(self):
        B = BundleClass(3, [c1, c2, c3], 5)
        lam2, lam3 = wedge_powers(B)
        assert lam2.chern[0] == 2 * c1
        assert lam2.chern[1] == c1 * c1 + c2
        assert lam2.chern[2] == c1 * c2 - c3
        assert lam3.rank == 1
        assert lam3.chern[0] == c1

    def test_wedge_split_random(self):
        rng = random.Random(99)
        for _ in range(50):
            d = [rng.randint(-5, 5) for _ in range(3)]
            lam2, lam3 = wedge_powers(split_bundle(d, 5))
            pairwise = [d[0] + d[1], d[0] + d[2], d[1] + d[2]]
            assert lam2 == split_bundle(pairwise, 5)
            assert lam3 == split_bundle([sum(d)], 5)

    def test_wedge_needs_rank3(self):
        with pytest.raises(ValueError):
            wedge_powers(split_bundle([1, 2], 5))


class TestEulerCharacteristic:
    def test_structure_sheaf_is_one(self):
        for n in range(1, 6):
            chi = euler_characteristic(line_bundle(0, n))
            assert chi.poly.substitute({"t": 0}) == 1

    def test_line_bundle_binomial(self):
        # chi(O(t)) on P^n is C(t+n, n)
        from multistruct.arith import binomial_poly

        for n in range(1, 6):
            assert euler_characteristic(line_bundle(0, n)) == binomial_poly(n)

    def test_serre_duality_window(self):
        # chi(O(d)) = (-1)^n chi(O(-d-n-1)) on P^n
        for n in range(1, 6):
            chi = euler_characteristic(line_bundle(0, n)).poly
            for d in range(-12, 13):
                lhs = chi.substitute({"t": d}).as_fraction()
                rhs = chi.substitute({"t": -d - n - 1}).as_fraction()
                assert lhs == (-1) ** n * rhs

    def test_additivity(self):
        B = split_bundle([2, -1], 4)
        total = euler_characteristic(B)
        parts = euler_characteristic(line_bundle(2, 4)) + euler_characteristic(
            line_bundle(-1, 4)
        )
        assert total == parts

    def test_todd_degree_zero_is_one(self):
        for n in range(1, 6):
            assert todd_class(n).coeffs[0] == 1


class TestKoszul:
    def test_quadric_surface_section(self):
        chi = koszul_euler(split_bundle([-1, -1, -2], 5))
        assert chi == ((t + 1) * (t + 1))

    def test_all_ci_triples(self):
        triples = [
            (d1, d2, d3)
            for d1 in range(1, 4)
            for d2 in range(d1, 4)
            for d3 in range(d2, 4)
        ]
        assert len(triples) == 10
        for degrees in triples:
            direct = koszul_complete_intersection(degrees)
            via_chern = koszul_euler(split_bundle([-d for d in degrees], 5))
            assert direct == via_chern

    def test_symbolic_coefficients(self):
        chi = koszul_euler(BundleClass(3, [c1, c2, c3], 5))
        assert chi.coeff(2) == (-c3).scalar_div(2)
        assert chi.coeff(1) == (-(c1 + 6) * c3).scalar_div(2)
        assert chi.coeff(0) == ((c2 - 2 * c1 * c1 - 18 * c1 - 51) * c3).scalar_div(12)

    def test_degree_guard(self):
        with pytest.raises(ValueError):
            koszul_euler(split_bundle([1, 2], 5))


class TestSplittingOracle:
    def test_rank3_all_identities(self):
        report = splitting_oracle(3)
        assert report == {
            "chern_character": True,
            "adams_2": True,
            "adams_3": True,
            "wedge2": True,
            "wedge3": True,
            "koszul_euler": True,
        }

    def test_lower_ranks(self):
        for rank in (1, 2):
            assert all(splitting_oracle(rank).values())
