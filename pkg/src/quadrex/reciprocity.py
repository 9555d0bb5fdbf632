"""The Fundamental and Basic Problems: describe the primes for which a fixed
integer d is a quadratic residue (or non-residue) as explicit unions of
congruence classes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from math import gcd

from .arith import (
    Congruence,
    is_prime,
    primes_up_to,
    squarefree_split,
    successive_substitution,
)
from .errors import BudgetExceeded, IncompatibleCongruences
from .symbols import legendre_fast, residue_table

MAX_ODD_SUPPORT = 20


@dataclass(frozen=True)
class ResidueClassSet:
    """Primes described as {p odd prime : p mod modulus in classes} minus
    finitely many exclusions.

    A sentinel modulus of 1 with classes {0} stands for "all odd primes".
    """

    modulus: int
    classes: frozenset[int]
    excluded_primes: frozenset[int] = frozenset()

    def __post_init__(self):
        for n in self.classes:
            assert 0 <= n < self.modulus or self.modulus == 1
            assert self.modulus == 1 or gcd(n, self.modulus) == 1

    def contains(self, p: int) -> bool:
        """Membership for an odd prime p."""
        if p in self.excluded_primes:
            return False
        return p % self.modulus in self.classes

    def to_json(self) -> dict:
        return {
            "modulus": self.modulus,
            "classes": sorted(self.classes),
            "excluded_primes": sorted(self.excluded_primes),
        }


def _minus1_classes() -> tuple[ResidueClassSet, ResidueClassSet]:
    return (
        ResidueClassSet(4, frozenset({1})),
        ResidueClassSet(4, frozenset({3})),
    )


def _two_classes() -> tuple[ResidueClassSet, ResidueClassSet]:
    return (
        ResidueClassSet(8, frozenset({1, 7})),
        ResidueClassSet(8, frozenset({3, 5})),
    )


def fundamental_problem(q: int) -> tuple[ResidueClassSet, ResidueClassSet]:
    """X+(q) and X-(q) for q = -1, 2, or an odd prime.

    q == 1 mod 4 gives the residue classes of q itself; q == 3 mod 4 needs
    the modulus 4q, pairing each residue class with p == 1 mod 4 and each
    non-residue class with p == 3 mod 4.
    """
    if q == -1:
        return _minus1_classes()
    if q == 2:
        return _two_classes()
    if q < 3 or q % 2 == 0 or not is_prime(q):
        raise ValueError(f"q must be -1, 2, or an odd prime, got {q}")
    residues, _ = residue_table(q)
    residues = set(residues)
    nonresidues = set(range(1, q)) - residues
    if q % 4 == 1:
        return (
            ResidueClassSet(q, frozenset(residues)),
            ResidueClassSet(q, frozenset(nonresidues)),
        )
    plus = set()
    for sign, values in ((1, residues), (3, nonresidues)):
        for r in values:
            plus.add(
                successive_substitution(
                    [Congruence(sign, 4), Congruence(r, q)]
                ).residue
            )
    u4q = {n for n in range(1, 4 * q) if gcd(n, 4 * q) == 1}
    return (
        ResidueClassSet(4 * q, frozenset(plus)),
        ResidueClassSet(4 * q, frozenset(u4q - plus)),
    )


def _member_classes(member: int) -> tuple[ResidueClassSet, ResidueClassSet]:
    if member == -1:
        return _minus1_classes()
    if member == 2:
        return _two_classes()
    return fundamental_problem(member)


def basic_problem(d: int) -> tuple[ResidueClassSet, ResidueClassSet]:
    """X+(d) and X-(d) for any nonzero integer d.

    Splits off the odd-multiplicity prime support of d, enumerates the even
    subsets E of it (adjoining -1 when d < 0), and glues the per-prime class
    sets with successive substitution.  The modulus m(d) is the product of
    the odd-multiplicity primes, times 4 unless d > 0 and that support
    contains neither 2 nor a prime congruent to 3 mod 4.
    """
    if d == 0:
        raise ValueError("d must be nonzero")
    split = squarefree_split(d)
    pi_odd = sorted(split.pi_odd)
    excluded = frozenset(p for p in split.pi_even if p != 2)
    if d > 0 and not pi_odd:
        # d is a perfect square: a residue of every odd prime not dividing d
        return (
            ResidueClassSet(1, frozenset({0}), excluded),
            ResidueClassSet(1, frozenset(), excluded),
        )
    if len(pi_odd) > MAX_ODD_SUPPORT:
        raise BudgetExceeded(f"{len(pi_odd)} odd-multiplicity primes")
    members: list[int] = ([-1] if d < 0 else []) + pi_odd
    prod = 1
    for p in pi_odd:
        prod *= p
    if d > 0 and 2 not in pi_odd and all(p % 4 == 1 for p in pi_odd):
        modulus = prod
    else:
        modulus = 4 * prod

    member_sets = {m: _member_classes(m) for m in members}
    plus: set[int] = set()
    for size in range(0, len(members) + 1, 2):
        for flipped in combinations(members, size):
            choice_sets = [
                member_sets[m][1 if m in flipped else 0] for m in members
            ]
            for combo in product(*(sorted(cs.classes) for cs in choice_sets)):
                try:
                    sol = successive_substitution(
                        [
                            Congruence(r, cs.modulus)
                            for r, cs in zip(combo, choice_sets)
                        ]
                    )
                except IncompatibleCongruences:
                    continue
                assert modulus % sol.modulus == 0
                plus.update(range(sol.residue, modulus, sol.modulus))
    u = {n for n in range(1, modulus) if gcd(n, modulus) == 1}
    return (
        ResidueClassSet(modulus, frozenset(plus), excluded),
        ResidueClassSet(modulus, frozenset(u - plus), excluded),
    )


@dataclass(frozen=True)
class ClassSetReport:
    checked: int
    counterexamples: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.counterexamples


def verify_class_set(
    class_set: ResidueClassSet, d: int, bound: int, sign: int = 1
) -> ClassSetReport:
    """Check membership against legendre_fast for every odd prime <= bound.

    A prime p (not dividing 2d) must lie in class_set exactly when
    chi_p(d) == sign.  Returns the counterexample list; empty means verified.
    """
    bad = []
    checked = 0
    for p in primes_up_to(bound):
        if p == 2 or d % p == 0:
            continue
        checked += 1
        expected = legendre_fast(d % p, p) == sign
        if class_set.contains(p) != expected:
            bad.append(p)
    return ClassSetReport(checked, tuple(bad))
