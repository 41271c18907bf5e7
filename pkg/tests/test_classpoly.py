import pytest

from cmgate import classpoly as cp
from cmgate import endoring as er
from cmgate import ffield as ff
from cmgate.errors import (
    BothZero,
    NotADiscriminant,
    PDividesD,
    PInert,
)
from cmgate._numutil import is_prime

F5 = ff.make_field(5, 1)
F7 = ff.make_field(7, 1)

# classical class numbers (Cox, "Primes of the form x^2 + ny^2", tables)
KNOWN_CLASS_NUMBERS = {
    -3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -12: 1, -15: 2, -16: 1, -19: 1,
    -20: 2, -23: 3, -24: 2, -27: 1, -28: 1, -31: 3, -32: 2, -35: 2,
    -36: 2, -39: 4, -40: 2, -43: 1, -47: 5, -48: 2, -51: 2, -52: 2,
    -56: 4, -67: 1, -71: 7, -84: 4, -163: 1,
}


class TestKronecker:
    def test_minus7_splits_at_2(self):
        assert cp.kronecker(-7, 2) == 1

    def test_minus7_inert_at_5(self):
        assert cp.kronecker(-7, 5) == -1

    def test_unit_modulus(self):
        for a in (-9, -1, 0, 3, 14):
            assert cp.kronecker(a, 1) == 1

    def test_both_zero(self):
        with pytest.raises(BothZero):
            cp.kronecker(0, 0)

    def test_agrees_with_euler_criterion(self):
        for q in (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 41, 59, 97):
            for a in range(-50, 51):
                e = pow(a % q, (q - 1) // 2, q)
                expected = 0 if a % q == 0 else (1 if e == 1 else -1)
                assert cp.kronecker(a, q) == expected, (a, q)

    def test_multiplicative(self):
        for n in (15, 21, 35):
            for a in range(-10, 11):
                parts = 1
                m = n
                for prime in (3, 5, 7):
                    while m % prime == 0:
                        parts *= cp.kronecker(a, prime)
                        m //= prime
                assert cp.kronecker(a, n) == parts


class TestReducedForms:
    def test_d_minus3(self):
        assert [f.as_tuple() for f in cp.reduced_forms(-3)] == [(1, 1, 1)]

    def test_d_minus23(self):
        got = {f.as_tuple() for f in cp.reduced_forms(-23)}
        assert got == {(1, 1, 6), (2, 1, 3), (2, -1, 3)}

    def test_not_a_discriminant(self):
        with pytest.raises(NotADiscriminant):
            cp.reduced_forms(-5)
        with pytest.raises(NotADiscriminant):
            cp.reduced_forms(4)

    def test_forms_have_right_discriminant(self):
        for D in (-15, -20, -23, -56, -71):
            for form in cp.reduced_forms(D):
                assert form.discriminant() == D

    def test_class_numbers_match_classical_tables(self):
        for D, h in KNOWN_CLASS_NUMBERS.items():
            assert cp.class_number(D) == h, D


class TestClassOrderOfP:
    def test_split_roots_in_prime_field(self):
        assert cp.class_order_of_p(-15, 61) == 1
        assert cp.class_order_of_p(-23, 59) == 1

    def test_order_three_case(self):
        assert cp.class_order_of_p(-23, 13) == 3

    def test_divides_class_number(self):
        for D in (-15, -20, -23, -31, -40):
            h = cp.class_number(D)
            for p in (5, 7, 11, 13, 17, 19, 23, 29):
                if D % p == 0 or cp.kronecker(D, p) != 1:
                    continue
                m = cp.class_order_of_p(D, p)
                if m is not None:
                    assert h % m == 0


class TestHilbertModP:
    def test_d3_p7(self):
        H = cp.hilbert_mod_p(-3, 7)
        assert [c.coeffs[0] for c in H.poly.coeffs] == [0, 1]  # T

    def test_d4_p5(self):
        H = cp.hilbert_mod_p(-4, 5)
        assert [c.coeffs[0] for c in H.poly.coeffs] == [2, 1]  # T - 3

    def test_d15_p61_degree_and_membership(self):
        H = cp.hilbert_mod_p(-15, 61)
        assert H.poly.degree() == cp.class_number(-15) == 2
        for r in H.roots:
            assert er.endo_discriminant(r).D == -15

    def test_inert_prime_rejected(self):
        assert cp.kronecker(-4, 7) == -1
        with pytest.raises(PInert):
            cp.hilbert_mod_p(-4, 7)

    def test_p_divides_d_rejected(self):
        with pytest.raises(PDividesD):
            cp.hilbert_mod_p(-20, 5)

    def test_against_reference_table(self):
        table = cp.reference_table()
        assert len(table) >= 20
        for D, coeffs in sorted(table.items(), reverse=True)[:10]:
            checked = 0
            p = 5
            while checked < 2 and p < 600:
                if is_prime(p) and D % p and cp.kronecker(D, p) == 1:
                    m = cp.class_order_of_p(D, p, max_q=cp.SWEEP_MAX_Q)
                    if m is not None:
                        H = cp.hilbert_mod_p(D, p)
                        assert [c.coeffs[0] for c in H.poly.coeffs] == [
                            c % p for c in coeffs
                        ], (D, p)
                        checked += 1
                p += 2
            assert checked == 2, D

    def test_galois_stable_roots(self):
        H = cp.hilbert_mod_p(-23, 13)
        encs = {r.encoding() for r in H.roots}
        for r in H.roots:
            assert ff.frobenius(r).encoding() in encs

    def test_sampled_collection_path(self):
        # 19^3 = 6859 sits above the sweep bound, so this exercises the
        # trace-targeted sampling collector; the result must still match
        # the classical polynomial reduced mod p
        assert cp.class_order_of_p(-31, 19) == 3
        assert cp.SWEEP_MAX_Q < 19**3 <= cp.SAMPLING_MAX_Q
        H = cp.hilbert_mod_p(-31, 19)
        ref = cp.reference_table()[-31]
        assert [c.coeffs[0] for c in H.poly.coeffs] == [c % 19 for c in ref]


class TestHilbertEval:
    def test_zero_at_cm_point(self):
        assert cp.hilbert_eval(-3, F7.zero()).is_zero()
        assert cp.hilbert_eval(-4, F5.from_int(3)).is_zero()

    def test_nonzero_off_cm_point(self):
        v = cp.hilbert_eval(-4, F5.zero())
        assert v == F5.from_int(2)  # T - 3 at 0


class TestFindTestDiscriminant:
    def test_inert5_split2(self):
        assert cp.find_test_discriminant(5, 2, 1) == -7

    def test_inert2_split5(self):
        assert cp.find_test_discriminant(2, 5, 1) == -11

    def test_postconditions(self):
        for ell, p, d_min in ((2, 7, 10), (3, 11, 30), (7, 13, 5)):
            D = cp.find_test_discriminant(ell, p, d_min)
            assert D < 0 and -D > d_min
            assert is_prime(-D) and (-D) % 4 == 3
            assert cp.kronecker(D, ell) == -1
            assert cp.kronecker(D, p) == 1


class TestInertObstruction:
    def test_d7_ell5_p11(self):
        assert cp.inert_obstruction_check(-7, 5, 11) is True

    def test_d23_ell5_p59(self):
        assert cp.kronecker(-23, 5) == -1
        assert cp.inert_obstruction_check(-23, 5, 59) is True

    def test_sharpness_split_ell_fails(self):
        # 2 splits for -23, so horizontal 2-isogenies exist among the roots
        assert cp.kronecker(-23, 2) == 1
        assert cp.inert_obstruction_check(-23, 2, 59) is False
