import pytest

from cmgate import ffield as ff
from cmgate import gates as g
from cmgate import polyring as pr

F5 = ff.make_field(5, 1)


def curve(terms, verify=True):
    return g.PlaneCurve(pr.BiPoly(F5, terms), verify=verify)


def upoly(*ints):
    return pr.UniPoly.from_ints(F5, ints)


class TestEnumerateCurvePoints:
    def test_diagonal(self):
        pts = list(g.enumerate_curve_points(curve({(1, 0): 1, (0, 1): -1}), 1))
        assert len(pts) == 5
        assert all(x == y for x, y in pts)

    def test_line(self):
        pts = list(g.enumerate_curve_points(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1}), 1))
        assert len(pts) == 5
        for x, y in pts:
            assert (x + y) == F5.one()

    def test_hyperbola(self):
        pts = list(g.enumerate_curve_points(curve({(1, 1): 1, (0, 0): -1}), 1))
        assert len(pts) == 4
        for x, y in pts:
            assert (x * y) == F5.one()

    def test_counts_grow_with_field(self):
        C = curve({(1, 0): 1, (0, 2): -1})  # X = Y^2
        assert len(list(g.enumerate_curve_points(C, 1))) == 5
        assert len(list(g.enumerate_curve_points(C, 2))) == 25


class TestCmHypothesis:
    def test_frobenius_curve_passes(self):
        report = g.check_cm_hypothesis(curve({(1, 0): 1, (0, 5): -1}), 3)
        assert report.verdict == "pass"
        assert not report.witnesses

    def test_diagonal_passes_trivially(self):
        report = g.check_cm_hypothesis(curve({(1, 0): 1, (0, 1): -1}), 2)
        assert report.verdict == "pass"

    def test_generic_line_fails_with_witness(self):
        report = g.check_cm_hypothesis(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1}), 4, witness_limit=1)
        assert report.verdict == "fail"
        w = report.witnesses[0]
        assert w["disc_x"] != w["disc_y"]

    def test_witnesses_lie_on_curve(self):
        C = curve({(1, 0): 2, (0, 2): 1, (0, 0): 1})  # 2X + Y^2 + 1
        report = g.check_cm_hypothesis(C, 3, witness_limit=3)
        for w in report.witnesses:
            x = ff.make_field(5, w["x"]["deg"]).from_encoding(w["x"]["enc"])
            y = ff.make_field(5, w["y"]["deg"]).from_encoding(w["y"]["enc"])
            assert pr.eval_bi(C.f, x, y).is_zero()


class TestFrobeniusConclusion:
    def test_power_25(self):
        got = g.check_frobenius_conclusion(curve({(1, 0): 1, (0, 25): -1}))
        assert got == ("X=Y^p^n", 2)

    def test_unit_multiple_diagonal(self):
        got = g.check_frobenius_conclusion(curve({(1, 0): 3, (0, 1): -3}))
        assert got == ("X=Y^p^n", 0)

    def test_other_direction(self):
        got = g.check_frobenius_conclusion(curve({(5, 0): -1, (0, 1): 1}))
        assert got == ("Y=X^p^n", 1)

    def test_hyperbola_is_not_frobenius(self):
        assert g.check_frobenius_conclusion(curve({(1, 1): 1, (0, 0): -1})) is None

    def test_non_p_power_exponent(self):
        assert g.check_frobenius_conclusion(curve({(1, 0): 1, (0, 2): -1})) is None

    def test_wrong_sign(self):
        assert g.check_frobenius_conclusion(curve({(1, 0): 1, (0, 1): 1})) is None


class TestAndreOortGate:
    def test_positive(self):
        report = g.andre_oort_gate(curve({(1, 0): 1, (0, 5): -1}), 2)
        assert report.verdict == "pass"
        assert report.conclusion == {"form": "X=Y^p^n", "n": 1}
        assert not report.sentinel

    def test_contrapositive(self):
        report = g.andre_oort_gate(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1}), 4, witness_limit=1)
        assert report.verdict == "fail"
        assert report.conclusion is None
        assert not report.sentinel


class TestMultHypothesis:
    def test_frobenius_curve_equal_orders(self):
        report = g.check_mult_hypothesis(curve({(1, 0): 1, (0, 5): -1}), 2, "equal")
        assert report.verdict == "pass"

    def test_inverse_relation_equal_orders(self):
        report = g.check_mult_hypothesis(curve({(1, 1): 1, (0, 0): -1}), 2, "equal")
        assert report.verdict == "pass"

    def test_generic_line_fails_divides(self):
        report = g.check_mult_hypothesis(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1}), 3, "divides",
            witness_limit=1)
        assert report.verdict == "fail"
        w = report.witnesses[0]
        assert w["order_x"] % w["order_y"] != 0

    def test_zero_coordinates_skipped(self):
        report = g.check_mult_hypothesis(curve({(1, 0): 1, (0, 1): -1}), 1, "equal")
        assert report.counters.get("zero_coordinate") == 1


class TestSubgroupForm:
    def test_hyperbola(self):
        a, b, zeta = g.detect_subgroup_form(curve({(1, 1): 1, (0, 0): -1}))
        assert (a, b) == (1, 1) and zeta == F5.one()

    def test_mixed_signs(self):
        a, b, zeta = g.detect_subgroup_form(curve({(2, 0): 1, (0, 1): -2}))
        assert (a, b) == (2, -1) and zeta == F5.from_int(2)

    def test_three_terms_absent(self):
        assert g.detect_subgroup_form(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1})) is None


class TestModularSupport:
    D_SET = [D for D in range(-3, -41, -1) if D % 4 in (0, 1)]

    def test_frobenius_pair_passes(self):
        pair = g.RingElementPair(upoly(0, 1), upoly(0, 0, 0, 0, 0, 1))
        report = g.modular_support_check(pair, self.D_SET)
        assert not report.witnesses
        assert report.conclusion == {"form": "B=A^p^n", "n": 1}

    def test_shift_pair_fails(self):
        pair = g.RingElementPair(upoly(0, 1), upoly(1, 1))
        report = g.modular_support_check(pair, self.D_SET)
        assert report.verdict == "fail"
        assert any("Q" in w for w in report.witnesses)

    def test_equal_pair(self):
        pair = g.RingElementPair(upoly(0, 1), upoly(0, 1))
        report = g.modular_support_check(pair, self.D_SET)
        assert report.conclusion == {"form": "A=B^p^n", "n": 0}
        assert not report.witnesses

    def test_frobenius_stability_property(self):
        # A arbitrary small poly, B = A^p: radical of H(A) always divides H(B)
        for coeffs in ((0, 1), (1, 1), (2, 3, 1)):
            A = upoly(*coeffs)
            B = g._poly_pow(A, 5)
            report = g.modular_support_check(g.RingElementPair(A, B), self.D_SET)
            assert not report.witnesses


class TestMultSupport:
    def test_square_pair(self):
        report = g.mult_support_check(g.RingElementPair(upoly(0, 1), upoly(0, 0, 1)), 8)
        assert report.verdict == "pass"
        assert report.conclusion == {"k": 2, "m": 0}

    def test_reversed_square_fails(self):
        report = g.mult_support_check(g.RingElementPair(upoly(0, 0, 1), upoly(0, 1)), 8)
        assert report.verdict == "fail"
        assert 4 in [w["n"] for w in report.witnesses]

    def test_frobenius_pair(self):
        report = g.mult_support_check(
            g.RingElementPair(upoly(0, 1), upoly(0, 0, 0, 0, 0, 1)), 6)
        assert report.verdict == "pass"
        assert report.conclusion == {"k": 1, "m": 1}


class TestCycloSupport:
    def test_frobenius_pair(self):
        report = g.cyclo_support_check(
            g.RingElementPair(upoly(0, 1), upoly(0, 0, 0, 0, 0, 1)), 8)
        assert report.verdict == "pass"
        assert report.conclusion == {"form": "B=A^p^n", "n": 1, "sign": "+"}

    def test_square_pair_fails_at_eight(self):
        report = g.cyclo_support_check(g.RingElementPair(upoly(0, 1), upoly(0, 0, 1)), 8)
        assert report.verdict == "fail"
        assert 8 in [w["n"] for w in report.witnesses]

    def test_equal_pair(self):
        report = g.cyclo_support_check(g.RingElementPair(upoly(0, 1), upoly(0, 1)), 6)
        assert report.verdict == "pass"
        assert report.conclusion == {"form": "A=B^p^n", "n": 0, "sign": "+"}


class TestGateMonotonicity:
    def test_pass_verdicts_shrink_monotonically(self):
        # a pass at n_max = 8 implies a pass at any smaller range
        pair = g.RingElementPair(upoly(0, 1), upoly(0, 0, 1))
        assert g.mult_support_check(pair, 8).verdict == "pass"
        assert g.mult_support_check(pair, 4).verdict == "pass"

    def test_fail_witnesses_persist_under_growth(self):
        pair = g.RingElementPair(upoly(0, 0, 1), upoly(0, 1))
        small = {w["n"] for w in g.mult_support_check(pair, 4).witnesses}
        large = {w["n"] for w in g.mult_support_check(pair, 8).witnesses}
        assert small and small <= large

    def test_cyclo_witnesses_persist(self):
        pair = g.RingElementPair(upoly(0, 1), upoly(0, 0, 1))
        small = {w["n"] for w in g.cyclo_support_check(pair, 4).witnesses}
        large = {w["n"] for w in g.cyclo_support_check(pair, 8).witnesses}
        assert small <= large


class TestConstructFrobeniusPoints:
    def test_line(self):
        ws = g.construct_frobenius_points(
            curve({(1, 0): 1, (0, 1): 1, (0, 0): -1}), 1, 2)
        assert ws
        for w in ws:
            assert w.n == 1
            assert w.x == w.y ** (5**1)
            assert w.x + w.y == ff.embed(F5.one(), w.y.ctx)

    def test_hyperbola_sixth_roots(self):
        ws = g.construct_frobenius_points(curve({(1, 1): 1, (0, 0): -1}), 1, 6)
        assert ws
        for w in ws:
            assert (w.x * w.y) == ff.embed(F5.one(), w.y.ctx)
            assert w.shared_order in (1, 2, 3, 6)

    def test_diagonal_degenerate(self):
        # X - Y: substituting X = Y^(p^n) leaves Y^(p^n) - Y, roots = F_(p^n)
        ws = g.construct_frobenius_points(curve({(1, 0): 1, (0, 1): -1}), 1, 3)
        assert len(ws) == 3
        for w in ws:
            assert w.x == w.y

    def test_lines_rejected(self):
        with pytest.raises(ValueError):
            g.construct_frobenius_points(curve({(1, 0): 1, (0, 0): -2}), 2, 1)

    def test_order_preservation_is_rechecked(self):
        ws = g.construct_frobenius_points(
            curve({(2, 0): 1, (0, 1): 1, (0, 0): -2}), 3, 3)
        assert ws
        for w in ws:
            assert ff.multiplicative_order(w.x) == w.shared_order
            assert ff.multiplicative_order(w.y) == w.shared_order
