import pytest
from hypothesis import given, settings, strategies as st

from steenflow import (
    AlgebraError,
    ConsistencyError,
    FormalBundle,
    SplitBundle,
    ThomTwist,
    VirtualDifference,
    apply,
    milnor_q,
    poly_ring,
    qi_of_bundle,
    qi_universal,
    root_power_sum,
    rp_ring,
    thom_apply,
    w_ring,
)
from steenflow.char_classes import MissingTwistClass, MissingWClasses
from oracles import elementary_symmetric, symmetric_in_elementaries

# frozen output of the splitting oracle (8 formal roots, degree-7 power sum
# rewritten in elementary symmetric polynomials by multivariate division)
Q2_EXPECTED = (
    "w1^7 + w1^5*w2 + w1^4*w3 + w1^3*w4 + w1^2*w2*w3 + w1^2*w5 + w1*w2^3"
    " + w1*w3^2 + w1*w6 + w2^2*w3 + w2*w5 + w3*w4 + w7"
)


class TestUniversal:
    def test_q0(self):
        assert str(qi_universal(0, 1)) == "w1"
        assert str(qi_universal(0, 5)) == "w1"

    def test_q1(self):
        assert str(qi_universal(1, 3)) == "w1^3 + w1*w2 + w3"

    def test_q2_against_splitting_oracle(self):
        roots = poly_ring(8)
        oracle = symmetric_in_elementaries(root_power_sum(roots, 7))
        got = qi_universal(2, 8)
        assert got.monomials == oracle
        assert str(got) == Q2_EXPECTED

    @pytest.mark.parametrize("i,stable_from", [(0, 1), (1, 3), (2, 7)])
    def test_rank_stability(self, i, stable_from):
        for r in range(stable_from, stable_from + 3):
            a = str(qi_universal(i, r))
            b = str(qi_universal(i, r + 1))
            assert a == b

    def test_naturality_under_root_substitution(self):
        # substituting roots into the universal answer equals expanding directly
        roots = poly_ring(5)
        for i in (0, 1):
            k = 2 ** (i + 1) - 1
            universal = qi_universal(i, 5)
            substituted = roots.zero()
            for mono in universal.monomials:
                term = roots.one()
                for j, e in enumerate(mono, start=1):
                    for _ in range(e):
                        term = term * elementary_symmetric(roots, j)
                substituted = substituted + term
            assert substituted == root_power_sum(roots, k)


class TestBundles:
    def test_line_bundle(self):
        r = rp_ring(9)
        line = SplitBundle(((r.gen("x"), 1),))
        for i in (0, 1, 2):
            assert qi_of_bundle(i, line) == r.gen("x", 2 ** (i + 1) - 1)

    @pytest.mark.parametrize("n,i", [(4, 0), (4, 1), (6, 1), (8, 2)])
    def test_projective_tangent_even(self, n, i):
        r = rp_ring(n)
        tangent = SplitBundle(((r.gen("x"), n + 1),))
        assert qi_of_bundle(i, tangent) == r.gen("x", 2 ** (i + 1) - 1)

    @pytest.mark.parametrize("n,i", [(3, 0), (5, 1), (7, 1), (9, 2)])
    def test_projective_tangent_odd(self, n, i):
        r = rp_ring(n)
        tangent = SplitBundle(((r.gen("x"), n + 1),))
        assert qi_of_bundle(i, tangent).is_zero

    @settings(max_examples=30, deadline=None)
    @given(
        st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3),
        st.lists(st.integers(min_value=0, max_value=3), min_size=1, max_size=3),
        st.integers(min_value=0, max_value=2),
    )
    def test_whitney_additivity(self, mults_a, mults_b, i):
        r = poly_ring(6)
        names = r.names
        a = SplitBundle(tuple((r.gen(names[k]), m) for k, m in enumerate(mults_a)))
        b = SplitBundle(tuple((r.gen(names[3 + k]), m) for k, m in enumerate(mults_b)))
        whitney = SplitBundle(a.roots + b.roots)
        assert qi_of_bundle(i, whitney) == qi_of_bundle(i, a) + qi_of_bundle(i, b)

    def test_trivial_summands_invisible(self):
        r = rp_ring(8)
        e = SplitBundle(((r.gen("x"), 3),))
        padded = SplitBundle(((r.gen("x"), 3),), trivial_summands=5)
        for i in (0, 1, 2):
            assert qi_of_bundle(i, e) == qi_of_bundle(i, padded)

    def test_formal_bundle_matches_split(self):
        # tangent class of even projective space via its total class (1+x)^(n+1)
        n = 6
        r = rp_ring(n)
        total = (r.one() + r.gen("x")) ** (n + 1)
        formal = FormalBundle(total)
        split = SplitBundle(((r.gen("x"), n + 1),))
        for i in (0, 1):
            assert qi_of_bundle(i, formal) == qi_of_bundle(i, split)

    def test_formal_bundle_missing_classes(self):
        ring = w_ring(5)
        total = ring.one() + ring.gen("w1")
        with pytest.raises(MissingWClasses):
            qi_of_bundle(1, FormalBundle(total, known_through=2))
        # degree bound satisfied: fine
        qi_of_bundle(1, FormalBundle(total, known_through=3))

    def test_total_class_must_start_with_one(self):
        ring = w_ring(3)
        with pytest.raises(AlgebraError):
            FormalBundle(ring.gen("w1"))

    def test_virtual_difference(self):
        r = rp_ring(8)
        e = SplitBundle(((r.gen("x"), 3),))
        f = SplitBundle(((r.gen("x"), 2),))
        diff = VirtualDifference(e, f)
        for i in (0, 1):
            # mod 2, minus a bundle contributes like the bundle itself
            assert qi_of_bundle(i, diff) == qi_of_bundle(i, e) + qi_of_bundle(i, f)
        assert qi_of_bundle(1, VirtualDifference(e, e)).is_zero

    def test_split_roots_must_be_degree_one(self):
        r = rp_ring(8)
        with pytest.raises(AlgebraError):
            SplitBundle(((r.gen("x", 2), 1),))

    def test_descriptor_json_roundtrip(self):
        from steenflow import bundle_from_json_dict, bundle_to_json_dict

        r = rp_ring(7)
        descriptors = [
            SplitBundle(((r.gen("x"), 8),), trivial_summands=2),
            FormalBundle((r.one() + r.gen("x")) ** 3, known_through=5),
            VirtualDifference(
                SplitBundle(((r.gen("x"), 1),)),
                FormalBundle(r.one() + r.gen("x")),
            ),
        ]
        for b in descriptors:
            assert bundle_from_json_dict(bundle_to_json_dict(b)) == b


class TestFrobeniusIdentity:
    @pytest.mark.parametrize("m", range(1, 7))
    @pytest.mark.parametrize("i", range(3))
    def test_primitive_on_power_sum_is_its_square(self, m, i):
        ring = poly_ring(m)
        p = root_power_sum(ring, 2 ** (i + 1) - 1)
        assert apply(milnor_q(i), p) == p * p


class TestThomTwist:
    def test_trivial_twist_is_plain_action(self):
        ring = rp_ring(8)
        tw = ThomTwist.make(ring, 0, {1: ring.zero()})
        u = ring.gen("x", 3)
        assert thom_apply(tw, 1, u) == apply(milnor_q(1), u)

    def test_twisted_action_shifts_by_chi(self):
        ring = rp_ring(8)
        chi = ring.gen("x", 3)  # degree 3 = 2^2 - 1
        tw = ThomTwist.make(ring, 1, {1: chi})
        for d in range(5):
            u = ring.gen("x", d) if d else ring.one()
            expected = chi * u + apply(milnor_q(1), u)
            assert thom_apply(tw, 1, u) == expected

    def test_missing_twist_class(self):
        ring = rp_ring(8)
        tw = ThomTwist.make(ring, 0, {0: ring.gen("x")})
        with pytest.raises(MissingTwistClass):
            thom_apply(tw, 1, ring.gen("x"))

    def test_consistency_rule_enforced(self):
        ring = rp_ring(12)
        bad = ring.gen("x", 3) + ring.zero()  # fine
        ThomTwist.make(ring, 0, {1: bad})
        # x^3 + x^2*? -- a degree-3 class failing Q_1(chi) = chi^2 cannot exist in
        # one variable, so use two variables to break it
        two = poly_ring(2)
        chi = two.element([(3, 0), (2, 1)])
        assert apply(milnor_q(1), chi) != chi * chi
        with pytest.raises(ConsistencyError):
            ThomTwist.make(two, 0, {1: chi})

    def test_square_zero_with_power_sum_twist(self):
        # chi = power sum of the matching degree satisfies the consistency rule,
        # and the twisted action then squares to zero on every monomial
        for m in (2, 3):
            ring = poly_ring(m)
            for i in (0, 1):
                chi = root_power_sum(ring, 2 ** (i + 1) - 1)
                tw = ThomTwist.make(ring, 0, {i: chi})
                for d in range(4):
                    for mono in ring.monomials_of_degree(d):
                        u = ring.element([mono])
                        assert thom_apply(tw, i, thom_apply(tw, i, u)).is_zero
