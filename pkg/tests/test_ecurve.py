import pytest

from cmgate import ecurve as ec
from cmgate import ffield as ff
from cmgate._numutil import crc_rng

F5 = ff.make_field(5, 1)
F7 = ff.make_field(7, 1)


class TestCurveFromJ:
    def test_j_zero_convention(self):
        E = ec.curve_from_j(F5.zero())
        assert E.a.is_zero() and E.b == F5.one()

    def test_j_1728_convention(self):
        E = ec.curve_from_j(F5.from_int(1728))  # 1728 = 3 mod 5
        assert E.a == F5.one() and E.b.is_zero()

    def test_j_two_formula(self):
        E = ec.curve_from_j(F5.from_int(2))
        assert E.a == F5.from_int(1)  # 3*2*(1728-2) = 3*2*1 mod 5
        assert E.b == F5.from_int(4)  # 2*2*1^2
        assert E.j == F5.from_int(2)

    @pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31])
    def test_roundtrip_over_quadratic_extension(self, p):
        ctx = ff.make_field(p, 2)
        for x in ff.enumerate_elements(ctx):
            assert ec.curve_from_j(x).j == x


class TestCountPoints:
    def test_j1728_curve_over_f5(self):
        E = ec.EllipticCurve(F5.one(), F5.zero())  # y^2 = x^3 + x
        assert ec.count_points(E) == 4

    def test_j0_curve_over_f5(self):
        E = ec.EllipticCurve(F5.zero(), F5.one())  # y^2 = x^3 + 1
        assert ec.count_points(E) == 6

    def test_count_matches_bruteforce_over_f25(self):
        ctx = ff.make_field(5, 2)
        E = ec.curve_from_j(ctx.gen())
        brute = 1
        for x in ff.enumerate_elements(ctx):
            rhs = E.rhs(x)
            for y in ff.enumerate_elements(ctx):
                if y * y == rhs:
                    brute += 1
        assert ec.count_points(E) == brute

    def test_hasse_bound(self):
        for p in (5, 7, 11, 13):
            ctx = ff.make_field(p, 1)
            for n in range(p):
                j = ctx.from_int(n)
                E = ec.curve_from_j(j)
                t = p + 1 - ec.count_points(E)
                assert t * t <= 4 * p

    def test_twist_counts_sum(self):
        rng = crc_rng("twist-sum")
        for p in (13, 101):
            ctx = ff.make_field(p, 1)
            for _ in range(5):
                j = ctx.from_int(rng.randrange(p))
                E = ec.curve_from_j(j)
                n1 = ec.count_points(E)
                n2 = ec.count_points(E.quadratic_twist())
                assert n1 + n2 == 2 * p + 2


class TestBsgsOracle:
    @pytest.mark.parametrize("q", [101, 1009])
    def test_bsgs_equals_naive(self, q):
        ctx = ff.make_field(q, 1)
        rng = crc_rng("bsgs-oracle", q)
        for _ in range(12):
            j = ctx.from_int(rng.randrange(q))
            E = ec.curve_from_j(j)
            naive = ec._naive_count(E)
            bsgs = ec._bsgs_count(E)
            assert naive == bsgs

    def test_bsgs_on_extension_field(self):
        ctx = ff.make_field(5, 6)  # q = 15625 > naive threshold
        E = ec.curve_from_j(ctx.gen())
        n = ec.count_points(E)
        t = ctx.q + 1 - n
        assert t * t <= 4 * ctx.q
        # cross-check against the naive scan
        assert n == ec._naive_count(E)


class TestFrobeniusData:
    def test_j1728_data(self):
        E = ec.EllipticCurve(F5.one(), F5.zero())
        d = ec.frobenius_data(E)
        assert (d.t, d.d_pi) == (2, -16)

    def test_j0_data(self):
        E = ec.EllipticCurve(F5.zero(), F5.one())
        d = ec.frobenius_data(E)
        assert (d.t, d.d_pi) == (0, -20)

    def test_supersingular_trace_zero_over_prime_field(self):
        # over F_p (p >= 5) supersingular curves have t = 0, so d_pi = -4p
        E = ec.EllipticCurve(F5.zero(), F5.one())
        d = ec.frobenius_data(E)
        assert d.d_pi == -4 * 5


class TestSupersingular:
    def test_known_cases_over_f5(self):
        assert ec.is_supersingular(ec.EllipticCurve(F5.zero(), F5.one()))
        assert not ec.is_supersingular(ec.EllipticCurve(F5.one(), F5.zero()))

    def test_j0_ordinary_iff_p_1_mod_3(self):
        assert ec.is_supersingular_j(F5.zero())  # 5 = 2 mod 3
        assert not ec.is_supersingular_j(F7.zero())  # 7 = 1 mod 3

    def test_base_change_invariance(self):
        F25 = ff.make_field(5, 2)
        for n in range(5):
            j = F5.from_int(n)
            verdict = ec.is_supersingular(ec.curve_from_j(j))
            lifted = ec.curve_from_j(ff.embed(j, F25))
            assert ec.is_supersingular(lifted) == verdict

    def test_model_independence(self):
        # supersingularity depends on j only, not on the chosen twist
        ctx = ff.make_field(7, 1)
        for n in range(7):
            E = ec.curve_from_j(ctx.from_int(n))
            assert ec.is_supersingular(E) == ec.is_supersingular(E.quadratic_twist())
