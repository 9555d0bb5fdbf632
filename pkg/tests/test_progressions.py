import random
from fractions import Fraction

import pytest

from quadrex.arith import primes_up_to
from quadrex.errors import NotAdmissible
from quadrex.progressions import (
    APFamilySpec,
    PrimeClass,
    StandardTuple,
    classify,
    compute_parameters,
    count_patterns_ap_b,
    count_q_epsilon,
    generate_tuple,
    pi_plus_density,
    pi_plus_empirical,
    quotient_diagram,
    signature,
)
from quadrex.symbols import legendre_euler


def figure_tuple(s=5):
    """Admissible 8-tuple whose quotient gaps are (2, 2, 3)."""
    return generate_tuple((2, 2, 3), (4, 4, 4), (1, 1))


def brute_q_epsilon(p, spec, epsilon):
    r = min((p - 1 - max(s)) // b for b, s in zip(spec.B, spec.S))
    count = 0
    for n in range(1, r + 1):
        members = [b * n + z for b, s in zip(spec.B, spec.S) for z in s]
        if all(legendre_euler(m, p) == epsilon for m in members):
            count += 1
    return count


class TestComputeParameters:
    def test_figure_example(self):
        params = compute_parameters(figure_tuple().family(5))
        assert params.alpha == 20
        assert params.e == 8
        assert params.alpha - params.e == 12
        assert {tuple(sorted(i)) for i in params.Lambda} == {
            (1, 2), (1, 3), (2, 3), (3, 4),
        }

    def test_disjoint_case(self):
        spec = APFamilySpec((1, 10), (frozenset({0, 1}), frozenset({3, 7})))
        params = compute_parameters(spec)
        assert params.e == 0
        assert params.Lambda == frozenset()

    def test_k2_quotient_gap(self):
        # integer quotient gap q with 0 < q <= s-1 gives e = s - q
        for s in (3, 5, 8):
            for q in range(1, s):
                t = generate_tuple((q,), (2,), (1, 1))
                params = compute_parameters(t.family(s))
                assert params.e == s - q, (s, q)

    def test_alpha_minus_e_counts_rational_union(self):
        rng = random.Random(0)
        for _ in range(50):
            k = rng.randrange(1, 4)
            B = rng.sample(range(1, 12), k)
            S = [
                frozenset(rng.sample(range(0, 25), rng.randrange(1, 4)))
                for _ in range(k)
            ]
            spec = APFamilySpec(tuple(B), tuple(S))
            params = compute_parameters(spec)
            union = {Fraction(z, b) for b, s in zip(B, S) for z in s}
            assert params.alpha - params.e == len(union)


class TestSignature:
    def test_figure_signature_values(self):
        t = figure_tuple()
        spec = t.family(5)
        params = compute_parameters(spec)
        b = spec.B
        for p in (7, 11, 13, 101):
            if any(x % p == 0 for x in b):
                continue
            sig = signature(p, spec, params)
            expected = sorted(
                legendre_euler(b[i - 1] * b[j - 1], p)
                for i, j in ((1, 2), (1, 3), (2, 3), (3, 4))
            )
            assert sorted(sig) == expected

    def test_square_multipliers_always_plus(self):
        t = generate_tuple((2, 2, 3), (4, 9, 16), (1, 1))
        spec = t.family(5)
        params = compute_parameters(spec)
        for p in primes_up_to(300):
            if p == 2 or any(b % p == 0 for b in spec.B):
                continue
            assert classify(p, spec, params) is PrimeClass.PLUS

    def test_prime_multipliers_split_classes(self):
        t = generate_tuple((2, 2), (3, 5), (1, 1))
        spec = t.family(4)
        params = compute_parameters(spec)
        seen = {
            classify(p, spec, params)
            for p in primes_up_to(200)
            if p > 2 and all(b % p for b in spec.B)
        }
        assert PrimeClass.PLUS in seen and PrimeClass.MINUS in seen

    def test_not_allowable(self):
        spec = APFamilySpec((3, 7), (frozenset({0}), frozenset({1})))
        assert classify(3, spec) is PrimeClass.NOT_ALLOWABLE


class TestCountQEpsilon:
    def test_zero_on_pi_minus(self):
        t = generate_tuple((1,), (3,), (1, 1))  # b = (1, 3), overlap at gap 1
        spec = t.family(2)
        params = compute_parameters(spec)
        for p in primes_up_to(300):
            if p <= 3:
                continue
            if classify(p, spec, params) is PrimeClass.MINUS:
                assert count_q_epsilon(p, spec, 1) == 0
                assert count_q_epsilon(p, spec, -1) == 0

    def test_matches_direct_scan(self):
        t = figure_tuple()
        spec = t.family(3)
        for p in (101, 211):
            for eps in (1, -1):
                assert count_q_epsilon(p, spec, eps) == brute_q_epsilon(
                    p, spec, eps
                )

    def test_counts_are_nonneg_and_bounded(self):
        spec = APFamilySpec((2,), (frozenset({0, 1}),))
        for p in (11, 101):
            q = count_q_epsilon(p, spec, 1)
            assert 0 <= q <= p


class TestCountPatterns:
    def test_pairs_mod_17(self):
        c_eps, c_sigma = count_patterns_ap_b((1,), 2, 17, 1)
        assert c_eps == 3  # (1,2), (8,9), (15,16)

    def test_gamma_example(self):
        W = sorted({i * b for b in (1, 2, 3, 5, 7) for i in range(6)})
        assert len(W) == 19
        assert 1 + max((1, 2, 3, 5, 7)) * 5 == 36

    def test_davenport_ratio_large_p(self):
        p = 1_000_003
        c_eps, _ = count_patterns_ap_b((1,), 3, p, 1)
        assert c_eps / p == pytest.approx(2**-3, rel=0.05)

    def test_support_count_ratio(self):
        p = 1_000_003
        _, c_sigma = count_patterns_ap_b((2,), 2, p, 1)
        # support exponent 1 + b(s-1) = 3
        assert c_sigma / p == pytest.approx(2**-3, rel=0.10)


class TestQuotientDiagram:
    def test_figure_blocks(self):
        qd = quotient_diagram(figure_tuple(), 5)
        assert qd.e == 8
        assert qd.blocks == ((1, 2, 3, 4),)
        assert qd.gap_sequences == ((2, 2, 3),)

    def test_no_overlap(self):
        t = generate_tuple((5, 5), (2, 2), (1, 1))
        qd = quotient_diagram(t, 5)
        assert qd.e == 0
        assert qd.blocks == ()

    def test_minimal_overlap_chain(self):
        # all gaps s-1 chains every row: e = k - 1
        for k, s in ((3, 4), (5, 3)):
            t = generate_tuple(tuple([s - 1] * (k - 1)), tuple([2] * (k - 1)), (1, 1))
            qd = quotient_diagram(t, s)
            assert qd.e == k - 1

    def test_rejects_inadmissible(self):
        with pytest.raises(NotAdmissible):
            quotient_diagram(StandardTuple((1, 2), (3, 6)), 4)

    def test_agrees_with_parameters_on_random_tuples(self):
        rng = random.Random(42)
        done = 0
        while done < 500:
            k = rng.randrange(2, 5)
            gaps = tuple(rng.randrange(1, 7) for _ in range(k - 1))
            mults = tuple(rng.randrange(2, 6) for _ in range(k - 1))
            seed = (rng.randrange(1, 5), rng.randrange(1, 4))
            t = generate_tuple(gaps, mults, seed)
            if not t.is_admissible():
                continue
            s = rng.randrange(2, 7)
            qd = quotient_diagram(t, s)
            params = compute_parameters(t.family(s))
            assert qd.e == params.e, (gaps, mults, seed, s)
            assert qd.Lambda == params.Lambda
            done += 1


class TestGenerateTuple:
    def test_paper_16_tuple_square_multipliers(self):
        n = 2
        t = generate_tuple((2, 2, 3, 5, 2, 2, 3), tuple([n * n] * 7), (1, 1))
        assert t.a == (1, 3 * n**2, 5 * n**4, 8 * n**6, 13 * n**8,
                       15 * n**10, 17 * n**12, 20 * n**14)
        assert t.b == (1, n**2, n**4, n**6, n**8, n**10, n**12, n**14)

    def test_paper_disjoint_16_tuple(self):
        n = 3
        t = generate_tuple(tuple([5] * 7), tuple([n] * 7), (1, 1))
        assert t.a[:3] == (1, 6 * n, 11 * n**2)
        params = compute_parameters(t.family(5))
        assert params.e == 0

    def test_lemma_identity_random(self):
        rng = random.Random(9)
        for _ in range(100):
            k = rng.randrange(2, 6)
            gaps = tuple(rng.randrange(1, 9) for _ in range(k - 1))
            mults = tuple(rng.randrange(2, 7) for _ in range(k - 1))
            t = generate_tuple(gaps, mults, (rng.randrange(1, 6), rng.randrange(1, 6)))
            for i in range(k):
                for j in range(i):
                    got = Fraction(t.a[i], t.b[i]) - Fraction(t.a[j], t.b[j])
                    assert got == sum(gaps[j:i])


class TestPiPlusDensity:
    def test_single_block_of_two(self):
        t = generate_tuple((1,), (3,), (1, 2))  # b = (2, 6): sigmas 2, 6
        assert pi_plus_density(t, 2) == Fraction(1, 2)

    def test_prime_multiplier_chain(self):
        # m blocks of size 2 from gaps alternating below/above s-1
        t = generate_tuple((1, 5, 1), (3, 5, 7), (1, 1))
        density = pi_plus_density(t, 2)
        qd = quotient_diagram(t, 2)
        m = len(qd.blocks)
        sigma = sum(len(b) for b in qd.blocks)
        assert density == Fraction(2**m, 2**sigma)

    def test_colliding_unit_parts_rejected(self):
        t = generate_tuple((1,), (4,), (1, 1))  # b = (1, 4): both sigmas are 1
        with pytest.raises(NotAdmissible):
            pi_plus_density(t, 2)

    def test_unit_squarefree_part_block_of_two(self):
        # b = (1, 2): the unit row sits in the only Lambda element, so the
        # plain 2^(m - sigma) branch applies and chi_p(2) decides membership
        t = StandardTuple((1, 4), (1, 2))
        assert pi_plus_density(t, 2) == Fraction(1, 2)
        emp = float(pi_plus_empirical(t, 2, 50_000))
        n = len(primes_up_to(50_000))
        assert abs(emp - 0.5) <= 3 * (0.25 / n) ** 0.5

    def test_rejects_square_subset(self):
        t = StandardTuple((1, 5), (2, 8))  # sigma 2 and 2 collide
        with pytest.raises(NotAdmissible):
            pi_plus_density(t, 3)

    def test_empirical_matches_half(self):
        t = generate_tuple((1,), (3,), (1, 2))
        emp = pi_plus_empirical(t, 2, 50_000)
        v = 0.5
        n = len(primes_up_to(50_000))
        assert abs(float(emp) - v) <= 3 * (v * (1 - v) / n) ** 0.5

    def test_empirical_matches_two_blocks(self):
        t = generate_tuple((1, 5, 1), (3, 5, 7), (1, 1))
        theo = float(pi_plus_density(t, 2))
        emp = float(pi_plus_empirical(t, 2, 50_000))
        n = len(primes_up_to(50_000))
        assert abs(emp - theo) <= 3 * (theo * (1 - theo) / n) ** 0.5


class TestFamilyConstruction:
    def test_merges_equal_differences(self):
        t = StandardTuple((0, 1, 4), (2, 2, 3))
        spec = t.family(2)
        assert spec.B == (2, 3)
        assert spec.S == (frozenset({0, 2, 1, 3}), frozenset({4, 7}))

    def test_member_sets(self):
        spec = APFamilySpec((2, 5), (frozenset({0}), frozenset({1})))
        assert spec.member(3) == {6, 16}
