import json
import random
from math import gcd

import pytest

from quadrex.symbols import legendre_fast
from quadrex.zkp import (
    ZkpKeys,
    honest_session,
    impostor_round,
    impostor_session,
    keygen,
    prover_commit,
    prover_respond,
    random_prime_3_mod_4,
    verifier_challenge,
    verifier_check,
)


def small_keys(seed=7):
    return keygen(24, 9137, random.Random(seed))


class TestKeygen:
    def test_primes_are_3_mod_4(self):
        rng = random.Random(0)
        for bits in (16, 24, 32):
            p = random_prime_3_mod_4(bits, rng)
            assert p % 4 == 3 and p.bit_length() == bits

    def test_residue_postcondition(self):
        keys = small_keys()
        assert legendre_fast(keys.w % keys.p, keys.p) == 1
        assert legendre_fast(keys.w % keys.q, keys.q) == 1
        assert (keys.u * keys.u - keys.w) % keys.n == 0

    def test_concatenation_layout(self):
        keys = small_keys()
        assert str(keys.w) == str(keys.identity) + str(keys.c)
        assert keys.c % 2 == 1

    def test_brute_force_root_small_modulus(self):
        # root table oracle on a tiny p*q
        keys = ZkpKeys(p=7, q=11, n=77, identity=1, c=5, w=15, u=virtual_root(15, 77))
        assert (keys.u**2 - keys.w) % 77 == 0

    def test_rejects_small_prime_bits(self):
        with pytest.raises(ValueError):
            keygen(8, 1, random.Random(0))

    def test_non_3_mod_4_prime_rejected_by_invariant(self):
        with pytest.raises(AssertionError):
            ZkpKeys(p=13, q=11, n=143, identity=1, c=1, w=11, u=1)


def virtual_root(w, n):
    for u in range(1, n):
        if gcd(u, n) == 1 and (u * u - w) % n == 0:
            return u
    raise AssertionError("no root")


class TestRounds:
    def test_commitment_product(self):
        keys = small_keys()
        rng = random.Random(1)
        for _ in range(50):
            x, y, r = prover_commit(keys, rng)
            assert (x * y - keys.w) % keys.n == 0
            assert 0 <= x < keys.n and 0 <= y < keys.n

    def test_r_one_edge(self):
        keys = small_keys()
        x = 1
        y = keys.w % keys.n
        assert verifier_check(x, y, 0, 1, keys.n)

    def test_branch_identities(self):
        keys = small_keys()
        rng = random.Random(2)
        x, y, r = prover_commit(keys, rng)
        assert verifier_check(x, y, 0, prover_respond(keys, r, 0), keys.n)
        assert verifier_check(x, y, 1, prover_respond(keys, r, 1), keys.n)

    def test_malformed_response_rejected(self):
        keys = small_keys()
        assert not verifier_check(4, keys.w, 0, -1, keys.n)
        assert not verifier_check(4, keys.w, 0, keys.n + 2, keys.n)
        assert not verifier_check(4, keys.w, 0, "junk", keys.n)


class TestSessions:
    def test_honest_always_accepts(self):
        for seed in range(40):
            rng = random.Random(seed)
            keys = keygen(20, 55_001, rng)
            session = honest_session(keys, 30, rng)
            assert session.status == "accepted"
            assert len(session.rounds) == 30

    def test_transcript_serialization(self):
        keys = small_keys()
        session = honest_session(keys, 3, random.Random(5))
        lines = session.transcript_lines()
        assert len(lines) == 3
        for i, line in enumerate(lines, start=1):
            record = json.loads(line)
            assert record["round"] == i
            assert record["ok"] is True
            assert (record["x"] * record["y"] - keys.w) % keys.n == 0

    def test_deterministic_given_seed(self):
        a = honest_session(small_keys(3), 10, random.Random(11))
        b = honest_session(small_keys(3), 10, random.Random(11))
        assert a.transcript_lines() == b.transcript_lines()


class TestImpostor:
    def test_single_round_rate_near_half(self):
        keys = small_keys()
        rng = random.Random(99)
        trials = 100_000
        passes = sum(impostor_round(keys.n, keys.w, rng) for _ in range(trials))
        assert abs(passes / trials - 0.5) <= 0.01

    def test_multi_round_rate_matches_binomial(self):
        keys = small_keys()
        rng = random.Random(17)
        trials = 30_000
        passes = sum(
            impostor_session(keys.n, keys.w, 5, rng) for _ in range(trials)
        )
        expected = trials * 2**-5
        assert abs(passes - expected) <= 4 * (trials * 2**-5) ** 0.5 + 5

    def test_honest_keys_through_harness_always_pass(self):
        # sanity inversion: with u in hand every round passes
        keys = small_keys()
        rng = random.Random(3)
        for _ in range(200):
            x, y, r = prover_commit(keys, rng)
            bit = verifier_challenge(rng)
            assert verifier_check(x, y, bit, prover_respond(keys, r, bit), keys.n)
