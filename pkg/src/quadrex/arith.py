"""Exact integer foundations: gcd machinery, CRT, successive substitution,
modular exponentiation, factorization, square-free splits, prime generation.

Everything works on arbitrary-precision Python integers and is a pure
function of its inputs.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from functools import reduce

from .errors import (
    BudgetExceeded,
    FactorBudgetExceeded,
    IncompatibleCongruences,
    ModuliNotCoprime,
    NoSolution,
    NotCoprime,
)

TRIAL_DIVISION_BOUND = 10**6
DEFAULT_FACTOR_BUDGET = 200_000
SIEVE_LIMIT = 50_000_000

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


def factor_budget() -> int:
    """Pollard-rho iteration budget, overridable via QUADREX_FACTOR_BUDGET."""
    raw = os.environ.get("QUADREX_FACTOR_BUDGET")
    return int(raw) if raw else DEFAULT_FACTOR_BUDGET


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]  # (prime, multiplicity), primes increasing
    sign: int

    def __post_init__(self):
        prod = self.sign
        last = 1
        for p, e in self.factors:
            assert p > last and e >= 1
            last = p
            prod *= p**e
        assert prod == self.value

    def multiplicity(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


@dataclass(frozen=True)
class SquarefreeSplit:
    sigma: int  # square-free part
    square: int  # |value| == sigma * square**2
    pi_odd: frozenset[int]
    pi_even: frozenset[int]


@dataclass(frozen=True)
class Congruence:
    """x == residue (mod modulus), with 0 <= residue < modulus."""

    residue: int
    modulus: int

    def __post_init__(self):
        assert self.modulus >= 1 and 0 <= self.residue < self.modulus


def extended_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a, b) > 0 and a*x + b*y = g."""
    if a == 0 and b == 0:
        raise NotCoprime("gcd(0, 0) is undefined")
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def mod_inverse(a: int, m: int) -> int:
    """Inverse of a modulo m, in [1, m-1]; requires gcd(a, m) = 1."""
    g, x, _ = extended_gcd(a, m)
    if g != 1:
        raise NotCoprime(f"{a} has no inverse mod {m}: gcd is {g}")
    return x % m


@dataclass(frozen=True)
class DiophantineSolution:
    """All solutions of a*x + b*y = c: (x0 + dx*n, y0 + dy*n) for n in Z."""

    x0: int
    y0: int
    dx: int
    dy: int

    def point(self, n: int) -> tuple[int, int]:
        return self.x0 + self.dx * n, self.y0 + self.dy * n


def solve_linear_diophantine(a: int, b: int, c: int) -> DiophantineSolution:
    """Parametric solution of a*x + b*y = c, or NoSolution if gcd(a,b) | c fails."""
    g, x, y = extended_gcd(a, b)
    if c % g != 0:
        raise NoSolution(f"gcd({a}, {b}) = {g} does not divide {c}")
    k = c // g
    return DiophantineSolution(x0=k * x, y0=k * y, dx=b // g, dy=-(a // g))


def crt(congruences: list[Congruence]) -> Congruence:
    """Simultaneous solution for pairwise coprime moduli, unique mod the product."""
    if not congruences:
        raise ModuliNotCoprime("empty congruence system")
    modulus = 1
    for i, ci in enumerate(congruences):
        for cj in congruences[i + 1 :]:
            if math.gcd(ci.modulus, cj.modulus) != 1:
                raise ModuliNotCoprime(
                    f"moduli {ci.modulus} and {cj.modulus} share a factor"
                )
        modulus *= ci.modulus
    x = 0
    for c in congruences:
        others = modulus // c.modulus
        x += c.residue * others * mod_inverse(others, c.modulus)
    return Congruence(x % modulus, modulus)


def successive_substitution(congruences: list[Congruence]) -> Congruence:
    """Solve a congruence system with arbitrary moduli.

    Solvable exactly when gcd(m_i, m_j) divides a_i - a_j for every pair;
    the solution is unique modulo lcm of the moduli.  Pairs are folded one
    at a time: x = a1 + x0*m1 mod lcm(m1, m2) with m1*x0 = a2 - a1 mod m2.
    """
    if not congruences:
        raise IncompatibleCongruences(0, 0, "empty congruence system")
    for i, ci in enumerate(congruences):
        for j in range(i + 1, len(congruences)):
            cj = congruences[j]
            if (ci.residue - cj.residue) % math.gcd(ci.modulus, cj.modulus) != 0:
                raise IncompatibleCongruences(i, j)
    acc = congruences[0]
    for c in congruences[1:]:
        g = math.gcd(acc.modulus, c.modulus)
        lcm = acc.modulus // g * c.modulus
        m2 = c.modulus // g
        x0 = ((c.residue - acc.residue) // g) * mod_inverse(acc.modulus // g, m2)
        acc = Congruence((acc.residue + acc.modulus * (x0 % m2)) % lcm, lcm)
    return acc


def mod_pow(b: int, exponent: int, n: int) -> int:
    """b**exponent mod n by base-2 exponent expansion (square and reduce)."""
    assert exponent >= 0 and n >= 1
    result = 1 % n
    base = b % n
    e = exponent
    while e > 0:
        if e & 1:
            result = (result * base) % n
        base = (base * base) % n
        e >>= 1
    return result


_sieve_cache: tuple[int, bytearray] = (1, bytearray([0, 0]))


def _sieve(limit: int) -> bytearray:
    global _sieve_cache
    cached_limit, cached = _sieve_cache
    if limit <= cached_limit:
        return cached
    if limit > SIEVE_LIMIT:
        raise BudgetExceeded(f"sieve limit {limit} exceeds {SIEVE_LIMIT}")
    flags = bytearray([1]) * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    _sieve_cache = (limit, flags)
    return flags


def primes_up_to(x: int) -> list[int]:
    """Ascending list of all primes <= x."""
    if x < 2:
        return []
    flags = _sieve(x)
    return [p for p in range(2, x + 1) if flags[p]]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for n below ~3.3e24, strong-probable above."""
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_BOUND:
        witnesses = _MR_WITNESSES
    else:
        rng = random.Random(n)
        witnesses = tuple(rng.randrange(2, n - 1) for _ in range(40))
    for a in witnesses:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int, budget: int) -> int:
    """One nontrivial factor of composite odd n, or raise FactorBudgetExceeded."""
    rng = random.Random(n)
    for _ in range(24):
        c = rng.randrange(1, n)
        x = y = rng.randrange(2, n)
        d = 1
        steps = 0
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
            steps += 1
            if steps > budget:
                raise FactorBudgetExceeded(f"pollard rho gave up on {n}")
        if d != n:
            return d
    raise FactorBudgetExceeded(f"pollard rho gave up on {n}")


def factorize(n: int, budget: int | None = None) -> Factorization:
    """Prime factorization of a nonzero integer.

    Trial division up to 10^6, then Pollard rho with an explicit iteration
    budget; an unfinished factorization raises rather than returning junk.
    """
    if n == 0:
        raise ValueError("0 has no prime factorization")
    if budget is None:
        budget = factor_budget()
    sign = 1 if n > 0 else -1
    m = abs(n)
    counts: dict[int, int] = {}

    def add(p, e=1):
        counts[p] = counts.get(p, 0) + e

    for p in (2, 3, 5):
        while m % p == 0:
            add(p)
            m //= p
    # wheel over 6k+-1 up to the trial bound
    p = 7
    while p * p <= m and p <= TRIAL_DIVISION_BOUND:
        for q in (p, p + 4):
            while m % q == 0:
                add(q)
                m //= q
        p += 6
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            add(m)
            continue
        root = math.isqrt(m)
        if root * root == m:
            stack += [root, root]
            continue
        d = _pollard_rho(m, budget)
        stack += [d, m // d]
    factors = tuple(sorted(counts.items()))
    return Factorization(value=n, factors=factors, sign=sign)


def squarefree_split(n: int, budget: int | None = None) -> SquarefreeSplit:
    """Split |n| = sigma * square**2 with sigma square-free."""
    fac = factorize(n, budget)
    sigma = 1
    square = 1
    pi_odd = set()
    pi_even = set()
    for p, e in fac.factors:
        if e % 2:
            sigma *= p
            pi_odd.add(p)
        else:
            pi_even.add(p)
        square *= p ** (e // 2)
    return SquarefreeSplit(sigma, square, frozenset(pi_odd), frozenset(pi_even))


def prime_factors(n: int, budget: int | None = None) -> frozenset[int]:
    """pi(n): the set of prime factors of n."""
    return frozenset(p for p, _ in factorize(n, budget).factors)


def lcm_all(values) -> int:
    return reduce(math.lcm, values, 1)
