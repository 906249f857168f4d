import pytest

from steenflow import (
    AlgebraError,
    BraneInfeasibleError,
    HFReport,
    PtConnParams,
    projective_action_table,
    apply,
    available_qs_for_lagrangian,
    brane_feasible,
    build_hf_report,
    milnor_q,
    power_rule_check,
    pss_range,
    ptconn_identities,
    ptconn_qtc,
    rp_ring,
    strong_qi,
    thom_apply,
    y_cohomology_ring,
)
from steenflow.projective import UnavailableOperation, primary_identity_max_d, dual_identity_max_d, rpn_thom_twist


class TestBraneFeasibility:
    @pytest.mark.parametrize("n", [3, 5, 7, 9])
    def test_odd_feasible(self, n):
        v = brane_feasible(n)
        assert v.feasible and "even" in v.reason

    @pytest.mark.parametrize("n", [2, 4, 6, 8])
    def test_even_infeasible(self, n):
        v = brane_feasible(n)
        assert not v.feasible and "odd" in v.reason

    def test_lower_bound(self):
        with pytest.raises(AlgebraError):
            brane_feasible(1)


class TestStrongAction:
    def test_odd_degree_maps_up(self):
        v = strong_qi(7, 1, 1)
        assert v.render() == "x_4"

    def test_even_degree_vanishes(self):
        assert strong_qi(7, 1, 2).render() == "0"

    def test_band_below_period_boundary_unknown(self):
        assert strong_qi(7, 1, 6).status == "transgression-unknown"

    def test_band_edges(self):
        # determined through n - 2^(i+1) + 1, unknown in the band above it
        n, i = 7, 1
        cut = n - 2 ** (i + 1) + 1
        for d in range(n + 1):
            status = strong_qi(n, i, d).status
            assert status == ("determined" if d <= cut else "transgression-unknown")

    def test_determined_range_never_wraps(self):
        # the top determined degree lands exactly on degree n, one step short
        # of wrapping around the period
        for n, i in [(9, 2), (7, 1), (5, 1)]:
            top = n - 2 ** (i + 1) + 1
            v = strong_qi(n, i, top)
            assert v.status == "determined"
            if v.coefficient:
                assert v.degree == n
            assert strong_qi(n, i, top + 1).status == "transgression-unknown"

    def test_unavailable_index_rejected(self):
        with pytest.raises(UnavailableOperation):
            strong_qi(7, 2, 1)

    def test_even_n_rejected(self):
        with pytest.raises(BraneInfeasibleError):
            strong_qi(6, 0, 1)


class TestActionTable:
    def test_power_rule_entry(self):
        t = projective_action_table(5)
        assert t[(1, 1)].value == rp_ring(5).gen("x", 4)

    def test_even_entry_vanishes(self):
        t = projective_action_table(5)
        assert t[(1, 2)].value.is_zero and t[(1, 2)].coefficient == 0

    def test_truncated_entry_keeps_exponent(self):
        # k + 2^(i+1) - 1 may exceed the ring truncation; the table keeps the
        # closed-form exponent while the ring value collapses to zero
        t = projective_action_table(9)
        entry = t[(2, 3)]
        assert entry.exponent == 10 and entry.coefficient == 1
        assert entry.value.is_zero

    @pytest.mark.parametrize("n", [5, 7, 9])
    def test_full_agreement_with_evaluator(self, n):
        # the constructor itself asserts evaluator == closed form; spot-check
        # entries again independently here
        ring = rp_ring(n)
        t = projective_action_table(n)
        for (i, k), entry in t.items():
            direct = apply(milnor_q(i), ring.gen("x", k) if k else ring.one())
            assert direct == entry.value

    def test_strong_matches_table_inside_agreement_range(self):
        n = 7
        window = pss_range(n, n + 1)
        t = projective_action_table(n)
        for i in sorted(available_qs_for_lagrangian(n)):
            step = 2 ** (i + 1) - 1
            for d in range(1, n):
                if d not in window or (d + step) not in window:
                    continue
                v = strong_qi(n, i, d)
                assert v.status == "determined"
                entry = t[(i, d)]
                assert v.coefficient == entry.coefficient
                if v.coefficient:
                    assert entry.value == rp_ring(n).gen("x", v.degree)


class TestPtConnIdentities:
    def test_strongest_residues_give_both(self):
        rep = ptconn_identities(PtConnParams(9, 0, 1, 1))
        assert rep.applicable == ("primary", "dual")
        ring = y_cohomology_ring(9)
        assert rep.primary_rhs == ring.gen("y4")
        assert rep.dual_rhs == ring.gen("y1") * ring.gen("y3")
        lhs, rhs = rep.product_relation
        assert (lhs, rhs) == (ring.gen("y4"), ring.gen("y1") * ring.gen("y3"))
        assert rep.qi_value == ring.gen("y4")

    def test_primary_expression_mod2(self):
        rep = ptconn_identities(PtConnParams(9, 1, 1, 2))
        assert "primary" in rep.applicable
        ring = y_cohomology_ring(9)
        assert rep.primary_rhs == ring.gen("y5") + ring.gen("y3") * ring.gen("y2")

    def test_large_residue_large_index_empty(self):
        rep = ptconn_identities(PtConnParams(9, 5, 2, 0))
        assert rep.applicable == ()
        assert primary_identity_max_d(9, 5, 2) < 0 and dual_identity_max_d(9, 5, 2) < 0

    def test_range_endpoints_closed_form(self):
        n = 9
        for r in range(n + 1):
            for i in sorted(available_qs_for_lagrangian(n)):
                lim_primary = n - max(1, r) - 2 ** (i + 1) + 1
                lim_dual = min(n - 1, (r - 2) % (n + 1)) - 2 ** (i + 1) + 1
                assert primary_identity_max_d(n, r, i) == lim_primary
                assert dual_identity_max_d(n, r, i) == lim_dual
                for d in range(n + 1):
                    rep = ptconn_identities(PtConnParams(n, r, i, d))
                    assert ("primary" in rep.applicable) == (d <= lim_primary)
                    assert ("dual" in rep.applicable) == (d <= lim_dual)

    def test_summing_identities_gives_product_relation(self):
        # where both apply, their mod-2 sum collapses to the product formula
        n = 9
        ring = y_cohomology_ring(n)
        for r in range(n + 1):
            for i in sorted(available_qs_for_lagrangian(n)):
                step = 2 ** (i + 1) - 1
                for d in range(0, n):
                    rep = ptconn_identities(PtConnParams(n, r, i, d))
                    if len(rep.applicable) < 2:
                        continue
                    total = rep.primary_rhs + rep.dual_rhs
                    y_up = ring.gen(f"y{d + step}") if d + step else ring.one()
                    y_d = ring.gen(f"y{d}") if d else ring.one()
                    assert total == y_up + y_d * ring.gen(f"y{step}")

    def test_degree_zero_is_consistent(self):
        # Q_i on the unit must come out zero; the two twist terms cancel
        for r in (0, 1, 2):
            rep = ptconn_identities(PtConnParams(9, r, 1, 0))
            if rep.primary_rhs is not None:
                assert rep.primary_rhs.is_zero

    def test_parameter_validation(self):
        with pytest.raises(AlgebraError):
            PtConnParams(9, 11, 1, 0)
        with pytest.raises(UnavailableOperation):
            PtConnParams(9, 0, 3, 0)
        with pytest.raises(BraneInfeasibleError):
            PtConnParams(8, 0, 1, 0)


class TestTwistCorrespondence:
    def test_twisted_action_reproduces_floer_coefficients(self):
        # under x_{r+d} <-> theta * y^d, the twisted module action must produce the
        # coefficient pattern (r + d) of the Floer computation
        n = 9
        for r in (0, 1):
            indices = sorted(available_qs_for_lagrangian(n))
            tw = rpn_thom_twist(n, r, indices)
            ring = tw.base
            for i in indices:
                step = 2 ** (i + 1) - 1
                for d in range(0, n - max(1, r) - step + 2):
                    u = ring.gen("x", d) if d else ring.one()
                    got = thom_apply(tw, i, u)
                    want = (
                        ring.element([(d + step,)])
                        if (r + d) % 2
                        else ring.zero()
                    )
                    assert got == want

    def test_twisted_action_squares_to_zero(self):
        n = 9
        for r in (0, 1):
            tw = rpn_thom_twist(n, r, [0, 1, 2])
            ring = tw.base
            for i in (0, 1, 2):
                for d in range(n):
                    u = ring.gen("x", d) if d else ring.one()
                    assert thom_apply(tw, i, thom_apply(tw, i, u)).is_zero


class TestTangentClass:
    def test_guaranteed_case(self):
        v = ptconn_qtc(9, 1, 1)
        assert v.render() == "y3"
        assert v.r_prime == 0

    def test_index_too_large(self):
        assert ptconn_qtc(9, 1, 3).render() == "not-guaranteed"

    def test_minimal_dimension(self):
        # n = 3: the only available index is 0, degree 1
        v = ptconn_qtc(3, 1, 0)
        assert v.status == "guaranteed" and str(v.value) == "y1"

    def test_bound_formula(self):
        n = 9
        for r in range(n + 1):
            bound = min(n - 1, n - r, (r - 2) % (n + 1)) + 1
            for i in range(4):
                v = ptconn_qtc(n, r, i)
                expected = i in available_qs_for_lagrangian(n) and 2 ** (i + 1) <= bound
                assert (v.status == "guaranteed") == expected


class TestPowerRule:
    def test_residue_zero(self):
        rec = power_rule_check(9, 0, 1)
        assert rec.applicable
        ring = y_cohomology_ring(9)
        assert ("combined", ring.gen("y4")) in rec.relations
        assert ("primary", ring.gen("y4")) in rec.relations

    def test_residue_one(self):
        rec = power_rule_check(9, 1, 1)
        ring = y_cohomology_ring(9)
        by_tag = dict(rec.relations)
        assert by_tag["primary"] == ring.gen("y1") * ring.gen("y3")
        assert by_tag["dual"] == ring.gen("y4")
        assert by_tag["combined"] == ring.gen("y4")

    def test_index_condition(self):
        rec = power_rule_check(9, 0, 2)  # 2^(i+2) = 16 >= 9
        assert not rec.applicable and rec.relations == ()


class TestReport:
    def test_build_and_roundtrip(self):
        rep = build_hf_report(7)
        assert rep.period == 8 and rep.available == (0, 1)
        assert rep.actions[(1, 1)].render() == "x_4"
        data = rep.to_json_dict()
        assert HFReport.from_json_dict(data) == rep

    def test_determined_counts(self):
        rep = build_hf_report(9)
        for i in rep.available:
            cut = 9 - 2 ** (i + 1) + 1
            determined = [d for d in range(10) if rep.actions[(i, d)].status == "determined"]
            assert determined == list(range(cut + 1))
