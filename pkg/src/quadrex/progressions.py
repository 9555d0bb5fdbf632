"""Residue patterns in unions of shifted arithmetic progressions: the
AP(B, S) counting machinery, its overlap parameters alpha and e, prime
signatures, quotient diagrams, and the asymptotic-density formulas for the
positive-signature primes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from math import gcd

import numpy as np

from .analytic import legendre_table
from .arith import primes_up_to, squarefree_split
from .density import GF2Matrix, gf2_rank
from .errors import BudgetExceeded, NotAdmissible

MAX_FAMILY_SIZE = 20
MAX_LAMBDA_SIZE = 1 << 14


@dataclass(frozen=True)
class APFamilySpec:
    """The pair (B, S): common differences b_i with their shift sets S_i.

    The family AP(B, S) consists of the unions of b_i*n + S_i over i, one
    set per n >= 1.
    """

    B: tuple[int, ...]
    S: tuple[frozenset[int], ...]

    def __post_init__(self):
        assert len(self.B) == len(self.S) >= 1
        assert len(set(self.B)) == len(self.B)
        assert all(b >= 1 for b in self.B)
        assert all(s and all(z >= 0 for z in s) for s in self.S)

    @property
    def k(self) -> int:
        return len(self.B)

    def member(self, n: int) -> frozenset[int]:
        out = set()
        for b, s in zip(self.B, self.S):
            out.update(b * n + z for z in s)
        return frozenset(out)


@dataclass(frozen=True)
class StandardTuple:
    """A 2m-tuple (a, b) of progression offsets and differences with the
    (a_i, b_i) pairwise distinct."""

    a: tuple[int, ...]
    b: tuple[int, ...]

    def __post_init__(self):
        assert len(self.a) == len(self.b) >= 1
        assert all(x >= 0 for x in self.a) and all(x >= 1 for x in self.b)
        assert len(set(zip(self.a, self.b))) == len(self.a)

    def is_admissible(self) -> bool:
        """Distinct differences and a_i*b_j != a_j*b_i for i != j."""
        if len(set(self.b)) != len(self.b):
            return False
        m = len(self.a)
        for i in range(m):
            for j in range(i + 1, m):
                if self.a[i] * self.b[j] == self.a[j] * self.b[i]:
                    return False
        return True

    def family(self, s: int) -> APFamilySpec:
        """Merge equal differences into one shift set per distinct b."""
        groups: dict[int, set[int]] = {}
        for ai, bi in zip(self.a, self.b):
            groups.setdefault(bi, set()).update(
                ai + bi * j for j in range(s)
            )
        items = sorted(groups.items())
        return APFamilySpec(
            tuple(b for b, _ in items),
            tuple(frozenset(s_) for _, s_ in items),
        )


@dataclass(frozen=True)
class APParameters:
    alpha: int
    e: int
    b_max: int
    K_max: tuple[tuple[frozenset[int], tuple[Fraction, ...]], ...]
    Lambda: frozenset[frozenset[int]]


def compute_parameters(spec: APFamilySpec) -> APParameters:
    """The Theorem-9.9 data for AP(B, S).

    Groups the rationals z/b_i by which index sets realize them: K_max holds
    the index sets K with T(K) nonempty, e = sum |T(K)|(|K|-1), and Lambda
    is the union of the even-cardinality subsets of the K's.  The identity
    alpha - e = |union of b_i^{-1} S_i| is asserted on the way out.
    """
    if spec.k > MAX_FAMILY_SIZE:
        raise BudgetExceeded(f"family size {spec.k} exceeds {MAX_FAMILY_SIZE}")
    owner: dict[Fraction, set[int]] = {}
    for i, (b, s) in enumerate(zip(spec.B, spec.S), start=1):
        for z in s:
            owner.setdefault(Fraction(z, b), set()).add(i)
    grouped: dict[frozenset[int], list[Fraction]] = {}
    for t, key in owner.items():
        grouped.setdefault(frozenset(key), []).append(t)
    K_max = tuple(
        (K, tuple(sorted(ts))) for K, ts in sorted(
            grouped.items(), key=lambda kv: sorted(kv[0])
        )
    )
    alpha = sum(len(s) for s in spec.S)
    e = sum(len(ts) * (len(K) - 1) for K, ts in K_max)
    assert alpha - e == len(owner)
    lam: set[frozenset[int]] = set()
    budget = 0
    for K, _ in K_max:
        if len(K) < 2:
            continue
        budget += 1 << len(K)
        if budget > MAX_LAMBDA_SIZE:
            raise BudgetExceeded("Lambda enumeration over budget")
        members = sorted(K)
        for size in range(2, len(K) + 1, 2):
            lam.update(frozenset(c) for c in combinations(members, size))
    return APParameters(
        alpha=alpha,
        e=e,
        b_max=max(spec.B),
        K_max=K_max,
        Lambda=frozenset(lam),
    )


class PrimeClass(Enum):
    PLUS = "plus"
    MINUS = "minus"
    NOT_ALLOWABLE = "not-allowable"


def signature(p: int, spec: APFamilySpec, params: APParameters | None = None):
    """The multiset of chi_p over the Lambda products of b's, in a canonical
    order, or None when p divides some b_i."""
    if any(b % p == 0 for b in spec.B):
        return None
    if params is None:
        params = compute_parameters(spec)
    table = legendre_table(p)
    out = []
    for members in sorted(sorted(i) for i in params.Lambda):
        prod = 1
        for i in members:
            prod = (prod * spec.B[i - 1]) % p
        out.append(int(table[prod]))
    return tuple(out)


def classify(p: int, spec: APFamilySpec, params: APParameters | None = None) -> PrimeClass:
    sig = signature(p, spec, params)
    if sig is None:
        return PrimeClass.NOT_ALLOWABLE
    return PrimeClass.PLUS if all(v == 1 for v in sig) else PrimeClass.MINUS


def count_q_epsilon(p: int, spec: APFamilySpec, epsilon: int) -> int:
    """Number of n in [1, r(p)] whose union set lies in [1, p-1] with every
    element of sign epsilon under chi_p."""
    assert epsilon in (-1, 1)
    r = min((p - 1 - max(s)) // b for b, s in zip(spec.B, spec.S))
    if r < 1:
        return 0
    table = legendre_table(p)
    n = np.arange(1, r + 1, dtype=np.int64)
    good = np.ones(r, dtype=bool)
    for b, s in zip(spec.B, spec.S):
        for z in s:
            good &= table[(b * n + z) % p] == epsilon
            if not good.any():
                return 0
    return int(good.sum())


def count_patterns_ap_b(
    b: tuple[int, ...], s: int, p: int, epsilon
) -> tuple[int, int]:
    """Pattern and support counts for the merged shift set of AP(b; s).

    Returns (c_epsilon, c_sigma): the number of n making chi_p match epsilon
    on n + W for W the union of {i*b_j}, and the number of n for which n + W
    is exactly the set of residues (epsilon may also be a map z -> sign; the
    support count uses +1 on W and -1 on the complement of W in its span).
    """
    W = sorted({i * bj for bj in b for i in range(s)})
    if callable(epsilon):
        want = {z: epsilon(z) for z in W}
    elif isinstance(epsilon, dict):
        want = dict(epsilon)
    else:
        want = {z: epsilon for z in W}
    table = legendre_table(p)
    top = W[-1]
    r = p - 1 - top
    if r < 1:
        return 0, 0
    n = np.arange(1, r + 1, dtype=np.int64)
    match = np.ones(r, dtype=bool)
    for z in W:
        match &= table[(n + z) % p] == want[z]
    c_eps = int(match.sum())
    support = np.ones(r, dtype=bool)
    inside = set(W)
    for z in range(top + 1):
        goal = 1 if z in inside else -1
        support &= table[(n + z) % p] == goal
    return c_eps, int(support.sum())


@dataclass(frozen=True)
class QuotientDiagram:
    """Blocks of overlapping rows ordered by the quotients q_i = a_i / b_i.

    Each block is the tuple of original 1-based indices whose consecutive
    q-gaps stay below the progression length; e is the overlap correction
    of formula-(29) type, and Lambda the even column projections.
    """

    blocks: tuple[tuple[int, ...], ...]
    gap_sequences: tuple[tuple[int, ...], ...]
    e: int
    Lambda: frozenset[frozenset[int]]


def quotient_diagram(t: StandardTuple, s: int) -> QuotientDiagram:
    """Build the quotient diagram of an admissible tuple for length s.

    The quotients split into integer-difference classes; within a class,
    every gap of size at most s-1 contributes s minus the gap to e, and
    maximal runs of such gaps form blocks whose overlap-diagram columns
    yield Lambda.
    """
    if not t.is_admissible():
        raise NotAdmissible("tuple fails the admissibility conditions")
    k = len(t.a)
    qs = sorted(
        (Fraction(t.a[i], t.b[i]), i + 1) for i in range(k)
    )
    classes: list[list[tuple[Fraction, int]]] = []
    for q, idx in qs:
        for cls in classes:
            if (q - cls[0][0]).denominator == 1:
                cls.append((q, idx))
                break
        else:
            classes.append([(q, idx)])
    e = 0
    blocks: list[tuple[int, ...]] = []
    gap_seqs: list[tuple[int, ...]] = []
    lam: set[frozenset[int]] = set()
    for cls in classes:
        if len(cls) < 2:
            continue
        gaps = [
            int(cls[i + 1][0] - cls[i][0]) for i in range(len(cls) - 1)
        ]
        e += sum(s - g for g in gaps if g <= s - 1)
        run: list[int] = [0]
        for i, g in enumerate(gaps):
            if g <= s - 1:
                run.append(i + 1)
            else:
                if len(run) >= 2:
                    blocks.append(tuple(cls[j][1] for j in run))
                    gap_seqs.append(tuple(gaps[run[0] : run[-1]]))
                run = [i + 1]
        if len(run) >= 2:
            blocks.append(tuple(cls[j][1] for j in run))
            gap_seqs.append(tuple(gaps[run[0] : run[-1]]))
    for rows, gaps in zip(blocks, gap_seqs):
        offsets = [0]
        for g in gaps:
            offsets.append(offsets[-1] + g)
        width = offsets[-1] + s
        for col in range(width):
            covering = frozenset(
                rows[i] for i, o in enumerate(offsets) if o <= col <= o + s - 1
            )
            for size in range(2, len(covering) + 1, 2):
                lam.update(
                    frozenset(c) for c in combinations(sorted(covering), size)
                )
    return QuotientDiagram(
        tuple(blocks), tuple(gap_seqs), e, frozenset(lam)
    )


def generate_tuple(
    gaps: tuple[int, ...],
    multipliers: tuple[int, ...],
    seed: tuple[int, int] = (1, 1),
) -> StandardTuple:
    """Recursive construction a_{i+1} = t_i (a_i + d_i b_i), b_{i+1} = t_i b_i.

    The resulting quotients satisfy q_i - q_j = sum of the gaps d_j .. d_{i-1},
    which is asserted, so the quotient diagram is prescribed by the gaps.
    """
    assert len(gaps) == len(multipliers)
    assert all(d >= 1 for d in gaps) and all(m >= 2 for m in multipliers)
    a = [seed[0]]
    b = [seed[1]]
    for d, m in zip(gaps, multipliers):
        a.append(m * (a[-1] + d * b[-1]))
        b.append(m * b[-1])
    for i in range(len(a)):
        for j in range(i):
            lhs = Fraction(a[i], b[i]) - Fraction(a[j], b[j])
            assert lhs == sum(gaps[j:i])
    return StandardTuple(tuple(a), tuple(b))


def pi_plus_density(t: StandardTuple, s: int) -> Fraction:
    """Asymptotic density of the positive-signature primes for AP(a, b; s).

    Requires the square-free parts of the b's to be distinct with no
    non-unit subset having a square product.  With sigma the total number of
    rows in blocks and m the number of blocks, the density is 2^(m - sigma),
    except when exactly one b is a square and some block-Lambda element
    avoids it, where it is 2^(1 - sigma) * (2^m - 1).
    """
    if not t.is_admissible():
        raise NotAdmissible("tuple fails the admissibility conditions")
    sigmas = [squarefree_split(b).sigma for b in t.b]
    if len(set(sigmas)) != len(sigmas):
        raise NotAdmissible("square-free parts of b's are not distinct")
    nonunit = [x for x in sigmas if x != 1]
    if nonunit:
        labels = sorted(set().union(*(squarefree_split(x).pi_odd for x in nonunit)))
        index = {p: i for i, p in enumerate(labels)}
        rows = tuple(
            sum(1 << index[p] for p in squarefree_split(x).pi_odd)
            for x in nonunit
        )
        if gf2_rank(GF2Matrix(rows, len(labels))) < len(nonunit):
            raise NotAdmissible("some subset of square-free parts is a square")
    diagram = quotient_diagram(t, s)
    m = len(diagram.blocks)
    sigma_count = sum(len(rows) for rows in diagram.blocks)
    if m == 0:
        return Fraction(1)
    units = [i + 1 for i, x in enumerate(sigmas) if x == 1]
    if units:
        n0 = units[0]
        host = [rows for rows in diagram.blocks if n0 in rows]
        if host:
            host_rows = host[0]
            block_lam = {
                i for i in diagram.Lambda if i <= frozenset(host_rows)
            }
            m1 = {i for i in block_lam if n0 in i}
            if m1 and m1 != block_lam:
                return Fraction(2**m - 1, 2 ** (sigma_count - 1))
    return Fraction(2**m, 2**sigma_count)


def pi_plus_empirical(t: StandardTuple, s: int, bound: int) -> Fraction:
    """Fraction of allowable primes up to bound with positive signature."""
    spec = t.family(s)
    params = compute_parameters(spec)
    plus = 0
    allowable = 0
    for p in primes_up_to(bound):
        if p == 2:
            continue
        cls = classify(p, spec, params)
        if cls is PrimeClass.NOT_ALLOWABLE:
            continue
        allowable += 1
        if cls is PrimeClass.PLUS:
            plus += 1
    return Fraction(plus, allowable)
