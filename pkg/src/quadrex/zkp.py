"""Shamir's zero-knowledge identification protocol on quadratic residues.

The prover holds a modular square root u of a public w mod n = p*q and
convinces the verifier over repeated commit/challenge/response cycles
without revealing u.  All randomness flows through an injected generator,
so sessions are reproducible; these are desk-scale parameters, not a
hardened implementation.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from math import gcd

from .arith import Congruence, crt, is_prime
from .symbols import legendre_fast

C_SEARCH_WINDOW = 10_000


@dataclass(frozen=True)
class ZkpKeys:
    p: int
    q: int
    n: int
    identity: int
    c: int
    w: int
    u: int

    def __post_init__(self):
        assert self.p % 4 == 3 and self.q % 4 == 3
        assert self.n == self.p * self.q
        assert (self.u * self.u - self.w) % self.n == 0
        assert gcd(self.u, self.n) == 1
        assert str(self.w) == str(self.identity) + str(self.c)


@dataclass
class RoundRecord:
    x: int
    y: int
    bit: int
    response: int
    ok: bool


@dataclass
class ZkpSession:
    n: int
    w: int
    rounds: list[RoundRecord] = field(default_factory=list)
    status: str = "running"

    def transcript_lines(self) -> list[str]:
        return [
            json.dumps(
                {
                    "round": i + 1,
                    "x": r.x,
                    "y": r.y,
                    "b": r.bit,
                    "response": r.response,
                    "ok": r.ok,
                },
                sort_keys=True,
            )
            for i, r in enumerate(self.rounds)
        ]


def random_prime_3_mod_4(bits: int, rng: random.Random) -> int:
    """Random prime of the given bit length congruent to 3 mod 4."""
    assert bits >= 4
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 3
        cand -= cand % 4 - 3
        if cand.bit_length() == bits and is_prime(cand):
            return cand


def keygen(prime_bits: int, identity: int, rng: random.Random) -> ZkpKeys:
    """Generate keys: primes p, q == 3 mod 4, the concatenated residue w,
    and its root u = CRT of w^((p+1)/4), w^((q+1)/4).

    The suffix c runs over odd integers until the decimal concatenation of
    identity and c is a residue of both primes.
    """
    if prime_bits < 16:
        raise ValueError("prime_bits below the desk-scale floor of 16")
    p = random_prime_3_mod_4(prime_bits, rng)
    q = random_prime_3_mod_4(prime_bits, rng)
    while q == p:
        q = random_prime_3_mod_4(prime_bits, rng)
    n = p * q
    for c in range(1, C_SEARCH_WINDOW, 2):
        w = int(str(identity) + str(c))
        if gcd(w, n) != 1:
            continue
        if legendre_fast(w % p, p) == 1 and legendre_fast(w % q, q) == 1:
            up = pow(w, (p + 1) // 4, p)
            uq = pow(w, (q + 1) // 4, q)
            u = crt([Congruence(up, p), Congruence(uq, q)]).residue
            assert (u * u - w) % n == 0
            return ZkpKeys(p, q, n, identity, c, w, u)
    raise ValueError("no residue suffix found in the search window")


def prover_commit(keys: ZkpKeys, rng: random.Random) -> tuple[int, int, int]:
    """Step (i): commit x = r^2 mod n and y = w * xbar mod n for random r."""
    while True:
        r = rng.randrange(2, keys.n)
        if gcd(r, keys.n) == 1:
            break
    x = (r * r) % keys.n
    y = (keys.w * pow(x, -1, keys.n)) % keys.n
    return x, y, r


def verifier_challenge(rng: random.Random) -> int:
    return rng.randrange(2)


def prover_respond(keys: ZkpKeys, r: int, bit: int) -> int:
    """Step (iii): reveal r on 0, or u * rbar mod n on 1."""
    if bit == 0:
        return r
    return (keys.u * pow(r, -1, keys.n)) % keys.n


def verifier_check(x: int, y: int, bit: int, response: int, n: int) -> bool:
    """Step (iv): the squared response must reproduce x (bit 0) or y (bit 1).

    Malformed responses are rejected, never raised on.
    """
    if not isinstance(response, int) or not 0 <= response < n:
        return False
    target = x if bit == 0 else y
    return (response * response) % n == target


def honest_session(keys: ZkpKeys, rounds: int, rng: random.Random) -> ZkpSession:
    """Run a full prover/verifier interaction with honest parties."""
    session = ZkpSession(keys.n, keys.w)
    for _ in range(rounds):
        x, y, r = prover_commit(keys, rng)
        if (x * y - keys.w) % keys.n != 0:
            session.status = "rejected"
            return session
        bit = verifier_challenge(rng)
        response = prover_respond(keys, r, bit)
        ok = verifier_check(x, y, bit, response, keys.n)
        session.rounds.append(RoundRecord(x, y, bit, response, ok))
        if not ok:
            session.status = "rejected"
            return session
    session.status = "accepted"
    return session


def impostor_round(n: int, w: int, rng: random.Random) -> bool:
    """One cycle for an impostor without u, precommitted to one branch.

    Guessing 0 prepares a true square x (response r works only for bit 0);
    guessing 1 prepares y as a square (response s works only for bit 1).
    Either way x * y == w mod n, so the commitment itself looks honest.
    """
    while True:
        r = rng.randrange(2, n)
        if gcd(r, n) == 1:
            break
    guess = rng.randrange(2)
    square = (r * r) % n
    other = (w * pow(square, -1, n)) % n
    if guess == 0:
        x, y = square, other
    else:
        x, y = other, square
    bit = verifier_challenge(rng)
    # the only reply the impostor holds is the prepared root r; on the
    # unprepared side it fails except for freak r^4 == w coincidences
    return verifier_check(x, y, bit, r, n)


def impostor_session(n: int, w: int, rounds: int, rng: random.Random) -> bool:
    """Whether an impostor passes all rounds; expected rate 2^-rounds."""
    for _ in range(rounds):
        if not impostor_round(n, w, rng):
            return False
    return True
