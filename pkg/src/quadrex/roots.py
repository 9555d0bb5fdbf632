"""Solve x^2 == z and a*x^2 + b*x + c == 0 over prime, prime-power, and
composite moduli.

Insolvability is an ordinary outcome here: solvers return the (possibly
empty) full solution set, and every returned value is re-checked by squaring
or substitution before it leaves the module.
"""

from __future__ import annotations

import math
from itertools import product

from .arith import Congruence, crt, factorize, mod_inverse
from .errors import LeadingCoeffZero
from .symbols import legendre_euler


def _tonelli_shanks(z: int, p: int) -> int:
    """One square root of the residue z mod odd prime p."""
    if p % 4 == 3:
        return pow(z, (p + 1) // 4, p)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    nonresidue = 2
    while legendre_euler(nonresidue, p) != -1:
        nonresidue += 1
    c = pow(nonresidue, q, p)
    x = pow(z, (q + 1) // 2, p)
    t = pow(z, q, p)
    m = s
    while t != 1:
        i = 1
        tt = (t * t) % p
        while tt != 1:
            tt = (tt * tt) % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        x = (x * b) % p
        c = (b * b) % p
        t = (t * c) % p
        m = i
    return x


def sqrt_mod_p(z: int, p: int) -> frozenset[int]:
    """All solutions of x^2 == z mod an odd prime p."""
    z %= p
    if z == 0:
        return frozenset({0})
    if legendre_euler(z, p) == -1:
        return frozenset()
    x = _tonelli_shanks(z, p)
    assert (x * x) % p == z
    return frozenset({x, p - x})


def _sqrt_mod_2_power(z: int, alpha: int) -> frozenset[int]:
    """Case I at p = 2: odd z, modulus 2^alpha."""
    mod = 1 << alpha
    z %= mod
    if alpha == 1:
        return frozenset({1})
    if alpha == 2:
        return frozenset({1, 3}) if z % 4 == 1 else frozenset()
    if z % 8 != 1:
        return frozenset()
    # lift a root from mod 8 up one power of 2 at a time
    x = 1
    for k in range(3, alpha):
        if (x * x - z) % (1 << (k + 1)) != 0:
            x += 1 << (k - 1)
    half = 1 << (alpha - 1)
    return frozenset({x % mod, (-x) % mod, (x + half) % mod, (-x + half) % mod})


def _lift_odd_prime(z: int, p: int, alpha: int) -> frozenset[int]:
    """Case I at odd p: p does not divide z; Hensel-lift the two mod-p roots."""
    base = sqrt_mod_p(z, p)
    if not base:
        return frozenset()
    mod = p
    roots = set(base)
    for _ in range(alpha - 1):
        mod *= p
        roots = {(x - (x * x - z) * mod_inverse(2 * x, mod)) % mod for x in roots}
    return frozenset(roots)


def sqrt_mod_prime_power(z: int, p: int, alpha: int) -> frozenset[int]:
    """All solutions of x^2 == z mod p^alpha, for any prime p and alpha >= 1.

    Three cases: (I) p does not divide z; (II) p divides z but p^alpha does
    not, which demands even multiplicity 2*mu and lifts the solutions for
    z / p^(2*mu); (III) p^alpha divides z, giving the multiples of
    p^ceil(alpha/2).
    """
    assert alpha >= 1
    mod = p**alpha
    z %= mod
    if z == 0:  # case III
        k = (alpha + 1) // 2
        step = p**k
        return frozenset(range(0, mod, step))
    mu = 0
    zz = z
    while zz % p == 0:
        zz //= p
        mu += 1
    if mu == 0:  # case I
        if p == 2:
            return _sqrt_mod_2_power(z, alpha)
        return _lift_odd_prime(z, p, alpha)
    # case II: odd multiplicity is insolvable
    if mu % 2:
        return frozenset()
    mu //= 2
    inner = sqrt_mod_prime_power(zz, p, alpha - 2 * mu)
    pmu = p**mu
    spread = p ** (alpha - mu)
    out = set()
    for sp in inner:
        for i in range(pmu):
            out.add((sp * pmu + i * spread) % mod)
    result = frozenset(x for x in out if (x * x - z) % mod == 0)
    return result


def sqrt_mod_composite(z: int, n: int) -> frozenset[int]:
    """All solutions of x^2 == z mod n, assembled by CRT over n's factorization."""
    assert n >= 2
    fac = factorize(n)
    per_factor = []
    for p, e in fac.factors:
        sols = sqrt_mod_prime_power(z, p, e)
        if not sols:
            return frozenset()
        per_factor.append([Congruence(s, p**e) for s in sorted(sols)])
    out = set()
    for combo in product(*per_factor):
        x = crt(list(combo)).residue
        assert (x * x - z) % n == 0
        out.add(x)
    return frozenset(out)


def solve_quadratic_mod_p(a: int, b: int, c: int, p: int) -> frozenset[int]:
    """Solutions of a*x^2 + b*x + c == 0 mod an odd prime p (a nonzero mod p)."""
    if a % p == 0:
        raise LeadingCoeffZero(f"a = {a} vanishes mod {p}")
    disc = b * b - 4 * a * c
    inv2a = mod_inverse(2 * a, p)
    out = frozenset(((s - b) * inv2a) % p for s in sqrt_mod_p(disc, p))
    assert all((a * x * x + b * x + c) % p == 0 for x in out)
    return out


def solve_quadratic_mod_m(a: int, b: int, c: int, m: int) -> frozenset[int]:
    """Solutions of a*x^2 + b*x + c == 0 mod m, for any modulus m >= 2.

    Uses the completion (2ax + b)^2 == b^2 - 4ac mod 4am: every solution s of
    the square congruence with 2a | (s - b) yields the solutions of
    2ax == s - b mod 4am, which are then reduced mod m.
    """
    a %= m
    b %= m
    c %= m
    if a == 0:
        raise LeadingCoeffZero(f"a vanishes mod {m}")
    big = 4 * a * m
    disc = (b * b - 4 * a * c) % big
    out = set()
    for s in sqrt_mod_composite(disc, big):
        if (s - b) % (2 * a) != 0:
            continue
        # solutions of 2a*x == s - b mod 4am form x0 + k*2m, all congruent mod m
        out.add((((s - b) // (2 * a)) % (2 * m)) % m)
    result = frozenset(x for x in out if (a * x * x + b * x + c) % m == 0)
    return result
