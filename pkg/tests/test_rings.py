import pytest
from hypothesis import given, settings, strategies as st

from steenflow import (
    AlgebraError,
    Generator,
    InhomogeneousElement,
    PresentationMismatch,
    RingElement,
    RingPresentation,
    binomial_mod2,
    cp_ring,
    parse_ring_shorthand,
    poly_ring,
    rp_ring,
)
from oracles import count_monomials_brute


def trunc_poly(n: int):
    """F2[x]/(x^n)"""
    return RingPresentation((Generator("x", 1, truncation=n),))


class TestMultiply:
    def test_square_of_generator(self):
        r = trunc_poly(4)
        x = r.gen("x")
        assert x * x == r.gen("x", 2)

    def test_truncation_kills_top_power(self):
        r = trunc_poly(4)
        assert (r.gen("x", 3) * r.gen("x")).is_zero

    def test_frobenius_on_one_plus_x(self):
        r = rp_ring(7)
        e = r.one() + r.gen("x")
        assert e * e == r.one() + r.gen("x", 2)

    def test_presentation_mismatch(self):
        with pytest.raises(PresentationMismatch):
            rp_ring(3).gen("x") * rp_ring(4).gen("x")


class TestBinomialMod2:
    def test_examples(self):
        assert binomial_mod2(2, 1) == 0
        assert binomial_mod2(3, 1) == 1

    @given(st.integers(min_value=0, max_value=300))
    def test_choose_zero(self, k):
        assert binomial_mod2(k, 0) == 1

    @given(st.integers(min_value=0, max_value=60), st.integers(min_value=0, max_value=60))
    def test_against_factorial_formula(self, k, i):
        import math

        expected = math.comb(k, i) % 2 if i <= k else 0
        assert binomial_mod2(k, i) == expected


class TestGradedDimension:
    def test_rp5_degree3(self):
        assert rp_ring(5).graded_dimension(3) == 1

    def test_cp3_odd_degree(self):
        assert cp_ring(3).graded_dimension(3) == 0

    def test_two_variable_degree2(self):
        # enumeration oracle gives t1^2, t1*t2, t2^2
        r = poly_ring(2)
        assert count_monomials_brute(r, 2) == 3
        assert r.graded_dimension(2) == 3

    @pytest.mark.parametrize("ring", [rp_ring(6), cp_ring(4), poly_ring(3)])
    def test_matches_enumeration(self, ring):
        for d in range(0, 12):
            assert ring.graded_dimension(d) == count_monomials_brute(ring, d)


small_elements = st.builds(
    lambda monos: rp_ring(9).element([(e,) for e in monos]),
    st.sets(st.integers(min_value=0, max_value=9), max_size=5),
)

poly_elements = st.builds(
    lambda monos: poly_ring(3).element(monos),
    st.sets(
        st.tuples(
            st.integers(min_value=0, max_value=4),
            st.integers(min_value=0, max_value=4),
            st.integers(min_value=0, max_value=4),
        ),
        max_size=4,
    ),
)


class TestRingAxioms:
    @settings(max_examples=60)
    @given(poly_elements, poly_elements, poly_elements)
    def test_commutative_associative(self, a, b, c):
        assert a * b == b * a
        assert (a * b) * c == a * (b * c)

    @settings(max_examples=60)
    @given(poly_elements, poly_elements)
    def test_distributive(self, a, b):
        c = poly_ring(3).gen("t1") + poly_ring(3).gen("t2", 2)
        assert (a + b) * c == a * c + b * c

    @given(st.integers(min_value=1, max_value=3))
    def test_degree_one_square_is_frobenius(self, idx):
        r = poly_ring(3)
        a = r.gen(f"t{idx}")
        sq = a * a
        assert sq.degree() == 2
        assert sq == r.gen(f"t{idx}", 2)


class TestHomogeneity:
    def test_degree_of_zero_is_none(self):
        assert rp_ring(3).zero().degree() is None

    def test_inhomogeneous_flagged(self):
        r = rp_ring(5)
        e = r.one() + r.gen("x", 2)
        assert not e.is_homogeneous
        with pytest.raises(InhomogeneousElement):
            e.degree()
        assert e.homogeneous_part(2) == r.gen("x", 2)
        assert e.degrees() == {0, 2}

    def test_direct_construction_checks_truncation(self):
        r = rp_ring(3)
        with pytest.raises(AlgebraError):
            RingElement(r, frozenset({(4,)}))


class TestCanonicalForm:
    def test_duplicates_cancel(self):
        r = rp_ring(5)
        assert r.element([(2,), (2,)]).is_zero

    def test_render_order(self):
        from steenflow import qi_universal

        assert str(qi_universal(1, 3)) == "w1^3 + w1*w2 + w3"

    @settings(max_examples=40)
    @given(poly_elements)
    def test_parse_render_roundtrip(self, e):
        assert e.ring.parse(str(e)) == e

    def test_parse_mod2_collapse(self):
        r = rp_ring(5)
        assert r.parse("x + x").is_zero
        assert r.parse("x^2*x") == r.gen("x", 3)


class TestPresentationJson:
    def test_roundtrip(self):
        p = RingPresentation((Generator("x", 1, truncation=8),))
        data = p.to_json_dict()
        assert data == {"generators": [{"name": "x", "degree": 1, "truncation": 8}]}
        assert RingPresentation.from_json_dict(data) == p

    def test_shorthands(self):
        assert parse_ring_shorthand("rp:7") == rp_ring(7)
        assert parse_ring_shorthand("cp:3") == cp_ring(3)
        assert parse_ring_shorthand("poly:4") == poly_ring(4)
        with pytest.raises(AlgebraError):
            parse_ring_shorthand("sp:2")

    def test_validation(self):
        with pytest.raises(AlgebraError):
            Generator("x", 0)
        with pytest.raises(AlgebraError):
            Generator("x", 1, truncation=0)
        with pytest.raises(AlgebraError):
            RingPresentation((Generator("x", 1), Generator("x", 2)))
