"""Legendre and Jacobi symbols via four routes: the residue table, Euler's
criterion, Gauss's lemma, and the factoring-free division-sequence algorithm.

The first three exist as cross-checking oracles; legendre_fast is the
production evaluator and never factors its argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import factorize
from .errors import BudgetExceeded, NotCoprime

RESIDUE_TABLE_BUDGET = 2_000_000


def residue_table(p: int) -> tuple[tuple[int, ...], dict[int, int]]:
    """Quadratic residues of an odd prime p and their square roots.

    Returns (residues, roots): the sorted (p-1)/2 residues in [1, p-1] and a
    map sending each residue r to the root x in [1, (p-1)/2] with
    x^2 == r mod p (the other root is p - x).
    """
    if p > RESIDUE_TABLE_BUDGET:
        raise BudgetExceeded(f"residue table for p = {p} is over budget")
    roots: dict[int, int] = {}
    for x in range(1, (p - 1) // 2 + 1):
        r = (x * x) % p
        if r not in roots:
            roots[r] = x
    return tuple(sorted(roots)), roots


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol by Euler's criterion: a^((p-1)/2) mod p."""
    a %= p
    if a == 0:
        return 0
    t = pow(a, (p - 1) // 2, p)
    return 1 if t == 1 else -1


def legendre_gauss_lemma(a: int, p: int) -> tuple[int, int]:
    """Legendre symbol by Gauss's lemma, with the witness count.

    Returns (s, value) where s counts k in [1, (p-1)/2] whose minimal
    positive ordinary residue of k*a mod p exceeds p/2, and value = (-1)^s.
    """
    a %= p
    if gcd(a, p) != 1:
        raise NotCoprime(f"{a} and {p} share a factor")
    half = p >> 1
    s = 0
    r = 0
    for _ in range((p - 1) // 2):
        r = (r + a) % p
        if r > half:
            s += 1
    return s, (-1) ** s


def chi_minus1(p: int) -> int:
    """Quadratic character of -1: +1 iff p == 1 mod 4."""
    return 1 if p % 4 == 1 else -1


def chi_2(p: int) -> int:
    """Quadratic character of 2: (-1)^((p^2-1)/8), +1 iff p == +-1 mod 8."""
    return 1 if p % 8 in (1, 7) else -1


def jacobi(m: int, n: int) -> int:
    """Jacobi symbol of m over odd n >= 1, by definition.

    Computed as the product of Legendre symbols over the prime factorization
    of n; chi_1 is identically 1.  This is the oracle route; legendre_fast
    avoids factorization entirely.
    """
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs odd positive n, got {n}")
    if n == 1:
        return 1
    if m <= 0:
        raise ValueError(f"Jacobi symbol here takes positive m, got {m}")
    if gcd(m, n) > 1:
        return 0
    value = 1
    for p, t in factorize(n).factors:
        value *= legendre_euler(m, p) ** t
    return value


@dataclass(frozen=True)
class JacobiTrace:
    """Division sequence R_0 > R_1 > ... > R_n = 1 with the 2-power exponents.

    R_{i-1} = R_i * q_i + 2^{s_i} * R_{i+1}, R_{i+1} odd, gcd chain 1; the
    exponents list holds s_1 .. s_{n-1} (one per division performed) and
    sigma is the Jacobi-reciprocity double sum with value = (-1)^sigma.
    """

    R: tuple[int, ...]
    s: tuple[int, ...]
    sigma: int
    value: int


def jacobi_fast(a: int, b: int) -> JacobiTrace:
    """Jacobi symbol of a over b without factoring either argument.

    Requires a > b >= 1 with b odd and gcd(a, b) = 1.  Runs the modified
    Euclidean algorithm, pulling the full 2-power out of every remainder,
    then folds reciprocity and the 2-character into one exponent sigma.
    """
    if b < 1 or b % 2 == 0:
        raise ValueError(f"second argument must be odd and positive, got {b}")
    if a <= b:
        raise ValueError(f"need a > b, got a = {a}, b = {b}")
    if gcd(a, b) != 1:
        raise NotCoprime(f"{a} and {b} share a factor")
    R = [a, b]
    s: list[int] = []
    while R[-1] != 1:
        rem = R[-2] % R[-1]
        two = 0
        while rem % 2 == 0:
            rem //= 2
            two += 1
        R.append(rem)
        s.append(two)
    sigma = 0
    for i in range(1, len(R) - 1):
        sigma += s[i - 1] * (R[i] * R[i] - 1) // 8
        sigma += (R[i] - 1) * (R[i + 1] - 1) // 4
    return JacobiTrace(tuple(R), tuple(s), sigma, (-1) ** (sigma % 2))


def legendre_fast(a: int, p: int) -> int:
    """Legendre symbol of a mod p by the three-step factoring-free algorithm.

    Splits a = 2^s * b, converts chi_p(2)^s and the reciprocity flip into a
    single sign, and finishes with the division-sequence Jacobi evaluation
    of chi_b(p).  Arguments at or above p are first reduced mod p.
    """
    a %= p
    if a == 0:
        return 0
    if a == 1:
        return 1
    s = 0
    b = a
    while b % 2 == 0:
        b //= 2
        s += 1
    eps = s * (p * p - 1) // 8 + (p - 1) * (b - 1) // 4
    sign = -1 if eps % 2 else 1
    if b == 1:
        return sign
    return sign * jacobi_fast(p, b).value
