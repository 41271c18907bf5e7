import pytest

from cmgate import ffield as ff
from cmgate.errors import (
    CharTooSmall,
    CompositeP,
    ContextMismatch,
    DivisionByZero,
    NotASubfield,
    ZeroElement,
)


def brute_smallest_irreducible_quadratic(p):
    """Oracle: scan the p^2 monic quadratics in base-p order, root test."""
    for n in range(p * p):
        c0, c1 = n % p, (n // p) % p
        if all((a * a + c1 * a + c0) % p for a in range(p)):
            return (c0, c1, 1)
    raise AssertionError


class TestMakeField:
    def test_prime_field_convention(self):
        F5 = ff.make_field(5, 1)
        assert F5.k == 1 and F5.q == 5
        assert F5.modulus == (0, 1)

    def test_smallest_quadratic_modulus(self):
        F25 = ff.make_field(5, 2)
        assert F25.modulus == brute_smallest_irreducible_quadratic(5)
        assert F25.modulus == (2, 0, 1)  # T^2 + 2

    @pytest.mark.parametrize("p", [7, 11, 13])
    def test_quadratic_modulus_matches_oracle(self, p):
        assert ff.make_field(p, 2).modulus == brute_smallest_irreducible_quadratic(p)

    def test_composite_p_rejected(self):
        with pytest.raises(CompositeP):
            ff.make_field(4, 1)

    def test_small_characteristic_rejected(self):
        with pytest.raises(CharTooSmall):
            ff.make_field(3, 1)

    def test_idempotent(self):
        assert ff.make_field(5, 2) is ff.make_field(5, 2)


class TestArith:
    def test_mul(self):
        F5 = ff.make_field(5, 1)
        assert ff.arith(F5.from_int(3), F5.from_int(4), "mul") == F5.from_int(2)

    def test_div_verified_by_multiplying_back(self):
        F5 = ff.make_field(5, 1)
        q = ff.arith(F5.from_int(2), F5.from_int(3), "div")
        assert q == F5.from_int(4)
        assert q * F5.from_int(3) == F5.from_int(2)

    def test_division_by_zero(self):
        F5 = ff.make_field(5, 1)
        with pytest.raises(DivisionByZero):
            ff.arith(F5.one(), F5.zero(), "div")

    def test_context_mismatch(self):
        with pytest.raises(ContextMismatch):
            ff.arith(ff.make_field(5, 1).one(), ff.make_field(7, 1).one(), "add")

    def test_field_axioms_sampled(self):
        F49 = ff.make_field(7, 2)
        elems = [F49.from_encoding(n) for n in (1, 5, 11, 23, 40)]
        for a in elems:
            for b in elems:
                assert a * b == b * a
                assert (a + b) - b == a
                if not b.is_zero():
                    assert (a / b) * b == a


class TestEmbed:
    def test_prime_subfield(self):
        F5, F25 = ff.make_field(5, 1), ff.make_field(5, 2)
        assert ff.embed(F5.from_int(2), F25).coeffs == (2, 0)

    def test_tower_composition(self):
        F25 = ff.make_field(5, 2)
        F54, F58 = ff.make_field(5, 4), ff.make_field(5, 8)
        g = F25.gen()
        assert ff.embed(ff.embed(g, F54), F58) == ff.embed(g, F58)

    def test_tower_composition_7(self):
        F49 = ff.make_field(7, 2)
        F74, F78 = ff.make_field(7, 4), ff.make_field(7, 8)
        g = F49.gen()
        assert ff.embed(ff.embed(g, F74), F78) == ff.embed(g, F78)

    def test_not_a_subfield(self):
        with pytest.raises(NotASubfield):
            ff.embed(ff.make_field(5, 2).gen(), ff.make_field(5, 3))
        with pytest.raises(NotASubfield):
            ff.embed(ff.make_field(5, 1).one(), ff.make_field(7, 2))

    def test_ring_homomorphism(self):
        F25, F54 = ff.make_field(5, 2), ff.make_field(5, 4)
        xs = [F25.from_encoding(n) for n in range(1, 25, 3)]
        for a in xs:
            for b in xs:
                assert ff.embed(a * b, F54) == ff.embed(a, F54) * ff.embed(b, F54)
                assert ff.embed(a + b, F54) == ff.embed(a, F54) + ff.embed(b, F54)

    def test_descend_roundtrip(self):
        F25, F54 = ff.make_field(5, 2), ff.make_field(5, 4)
        for n in range(25):
            x = F25.from_encoding(n)
            assert ff.descend(ff.embed(x, F54), F25) == x

    def test_minimal_field(self):
        F5, F54 = ff.make_field(5, 1), ff.make_field(5, 4)
        y = ff.embed(F5.from_int(3), F54)
        m = ff.minimal_field(y)
        assert m.ctx is F5 and m == F5.from_int(3)


class TestFrobenius:
    def test_prime_field_fixed(self):
        F5 = ff.make_field(5, 1)
        for n in range(5):
            assert ff.frobenius(F5.from_int(n)) == F5.from_int(n)

    def test_order_two_on_quadratic(self):
        g = ff.make_field(5, 2).gen()
        assert ff.frobenius(ff.frobenius(g)) == g

    def test_generator_image(self):
        # g^2 = -2 in F_25, so g^5 = g * (g^2)^2 = 4g
        F25 = ff.make_field(5, 2)
        g = F25.gen()
        assert g * g == F25.from_int(-2)
        assert ff.frobenius(g) == g.scale(4)

    @pytest.mark.parametrize("p,k", [(5, 2), (7, 2), (5, 3)])
    def test_orbit_closes(self, p, k):
        ctx = ff.make_field(p, k)
        for x in ff.enumerate_elements(ctx):
            y = x
            for _ in range(k):
                y = ff.frobenius(y)
            assert y == x

    def test_frobenius_is_pth_power(self):
        ctx = ff.make_field(7, 3)
        for n in range(0, 343, 17):
            x = ctx.from_encoding(n)
            assert ff.frobenius(x) == x**7


class TestMultiplicativeOrder:
    def test_one(self):
        assert ff.multiplicative_order(ff.make_field(5, 1).one()) == 1

    def test_three_mod_seven(self):
        # powers of 3 mod 7: 3, 2, 6, 4, 5, 1
        assert ff.multiplicative_order(ff.make_field(7, 1).from_int(3)) == 6

    def test_divides_group_order(self):
        F25 = ff.make_field(5, 2)
        for x in ff.enumerate_elements(F25):
            if not x.is_zero():
                assert 24 % ff.multiplicative_order(x) == 0

    def test_zero_rejected(self):
        with pytest.raises(ZeroElement):
            ff.multiplicative_order(ff.make_field(5, 1).zero())

    def test_preserved_by_frobenius(self):
        for p, k in [(5, 2), (7, 2)]:
            ctx = ff.make_field(p, k)
            for x in ff.enumerate_elements(ctx):
                if x.is_zero():
                    continue
                assert ff.multiplicative_order(ff.frobenius(x)) == ff.multiplicative_order(x)

    def test_matches_naive_powering(self):
        ctx = ff.make_field(11, 1)
        for n in range(1, 11):
            x = ctx.from_int(n)
            acc, order = x, 1
            while acc != ctx.one():
                acc = acc * x
                order += 1
            assert order == ff.multiplicative_order(x)


class TestEnumerate:
    def test_prime_field_order(self):
        F5 = ff.make_field(5, 1)
        assert [e.coeffs[0] for e in ff.enumerate_elements(F5)] == [0, 1, 2, 3, 4]

    def test_cardinality_no_repeats(self):
        F25 = ff.make_field(5, 2)
        seen = set(e.coeffs for e in ff.enumerate_elements(F25))
        assert len(seen) == 25

    def test_order_24_count(self):
        F25 = ff.make_field(5, 2)
        cnt = sum(
            1
            for e in ff.enumerate_elements(F25)
            if not e.is_zero() and ff.multiplicative_order(e) == 24
        )
        assert cnt == 8  # phi(24)
