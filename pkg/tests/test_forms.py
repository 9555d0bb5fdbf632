import math
from math import gcd

import pytest

from quadrex.analytic import L1_truncated, RealPrimitiveCharacter
from quadrex.errors import NotCoprime
from quadrex.forms import (
    QForm,
    automorph_count,
    class_number,
    field_class_number,
    is_fundamental,
    pell_min,
    reduced_forms,
    representation_count,
    representation_count_formula,
    representation_count_lattice,
)

FUNDAMENTAL_NEG_200 = [d for d in range(-200, 0) if is_fundamental(d)]


class TestIsFundamental:
    def test_examples(self):
        assert is_fundamental(-20)
        assert is_fundamental(12)
        assert not is_fundamental(9)
        assert is_fundamental(-3)
        assert not is_fundamental(1)
        assert not is_fundamental(-12)  # -12/4 = -3 == 1 mod 4
        assert is_fundamental(8) and is_fundamental(-8)
        assert not is_fundamental(45)  # 45 = 9*5 not square-free


class TestReducedForms:
    def test_class_counts(self):
        assert len(reduced_forms(-20)) == 2
        assert len(reduced_forms(-23)) == 3
        assert reduced_forms(-4) == (QForm(1, 0, 1),)
        assert reduced_forms(-3) == (QForm(1, 1, 1),)

    def test_form_invariants(self):
        for d in FUNDAMENTAL_NEG_200:
            forms = reduced_forms(d)
            assert len(set(forms)) == len(forms)
            for f in forms:
                assert f.disc == d
                assert f.is_primitive()
                assert 0 < f.a <= f.c and abs(f.b) <= f.a
                if abs(f.b) == f.a or f.a == f.c:
                    assert f.b >= 0

    def test_against_direct_equivalence_count(self):
        # h(d) for small |d| from the classical table
        known = {-3: 1, -4: 1, -7: 1, -8: 1, -11: 1, -15: 2, -19: 1,
                 -20: 2, -23: 3, -24: 2, -31: 3, -35: 2, -39: 4, -40: 2,
                 -43: 1, -47: 5, -51: 2, -52: 2, -56: 4, -67: 1, -163: 1}
        for d, h in known.items():
            assert len(reduced_forms(d)) == h, d


class TestAutomorphs:
    def test_three_values(self):
        assert automorph_count(-3) == 6
        assert automorph_count(-4) == 4
        assert automorph_count(-20) == 2


class TestPell:
    def test_small_cases(self):
        assert (pell_min(5).t0, pell_min(5).u0) == (3, 1)
        assert (pell_min(8).t0, pell_min(8).u0) == (6, 2)
        assert (pell_min(12).t0, pell_min(12).u0) == (4, 1)

    def test_solution_and_minimality(self):
        for d in (5, 8, 12, 13, 17, 21, 24, 28, 33):
            sol = pell_min(d)
            assert sol.t0**2 - d * sol.u0**2 == 4
            for u in range(1, sol.u0):
                t2 = 4 + d * u * u
                assert math.isqrt(t2) ** 2 != t2

    def test_epsilon_exceeds_one(self):
        assert pell_min(8).epsilon == pytest.approx(3 + 2 * math.sqrt(2))


class TestRepresentationCount:
    def test_disc_minus_4(self):
        assert representation_count(1, -4) == 4
        assert representation_count(3, -4) == 0
        assert representation_count(5, -4) == 8  # (+-1,+-2),(+-2,+-1)

    def test_not_coprime(self):
        with pytest.raises(NotCoprime):
            representation_count(10, -20)

    def test_formula_vs_lattice(self):
        for d in (-4, -8, -20, -23, -7):
            for n in range(1, 51):
                if gcd(n, d) != 1:
                    continue
                assert representation_count_formula(
                    n, d
                ) == representation_count_lattice(n, d), (n, d)

    def test_positive_disc_formula_only(self):
        # x^2 - 2y^2 = 1 has primary representations counted by the divisor sum
        assert representation_count(1, 8) == 1
        assert representation_count(7, 8) == 2


class TestClassNumber:
    def test_negative(self):
        assert class_number(-23) == 3
        assert class_number(-20) == 2
        assert class_number(-4) == 1

    def test_positive(self):
        assert class_number(8, terms=200_000) == 1
        assert class_number(5, terms=200_000) == 1
        # Q(sqrt 11) has h1 = 1 but no unit of norm -1, so h(44) = 2*h1
        assert class_number(44, terms=200_000) == 2

    def test_field_class_number_convention(self):
        assert field_class_number(-23) == 3
        assert field_class_number(-5) == class_number(-20) == 2
        assert field_class_number(-13) == class_number(-52) == 2

    def test_L1_identity_check_minus4(self):
        chi = RealPrimitiveCharacter.from_discriminant(-4)
        value, tail = L1_truncated(chi, 10**6)
        target = 2 * math.pi / (4 * math.sqrt(4)) * 1  # w=4, h=1
        assert target == pytest.approx(math.pi / 4)
        assert abs(value - target) <= tail


class TestClassNumberFormulaSweep:
    def test_identity_within_tail_all_fundamental_to_minus_200(self):
        for d in FUNDAMENTAL_NEG_200:
            h = class_number(d)
            w = automorph_count(d)
            chi = RealPrimitiveCharacter.from_discriminant(d)
            value, tail = L1_truncated(chi, 10**6)
            target = 2 * math.pi * h / (w * math.sqrt(abs(d)))
            assert abs(value - target) <= tail, d

    def test_h1_even_for_p_1_mod_4(self):
        from quadrex.arith import primes_up_to

        for p in primes_up_to(1000):
            if p % 4 == 1:
                assert field_class_number(-p) % 2 == 0, p
