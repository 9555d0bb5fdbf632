"""Densities of prime sets defined by quadratic-residue patterns on a finite
set S of positive integers, computed by GF(2) linear algebra on the
odd-multiplicity prime supports, plus empirical prime scans.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import primes_up_to, squarefree_split
from .symbols import legendre_euler


@dataclass(frozen=True)
class GF2Matrix:
    """Row-major bit matrix over the 2-element field; row i bit j is
    (rows[i] >> j) & 1."""

    rows: tuple[int, ...]
    n_cols: int


class Obstructed:
    """Sentinel: the requested pattern is impossible for all large primes."""

    def __repr__(self):
        return "Obstructed"

    def __eq__(self, other):
        return isinstance(other, Obstructed)

    def __hash__(self):
        return hash("Obstructed")


OBSTRUCTED = Obstructed()


def incidence_matrix(S) -> tuple[GF2Matrix, tuple[int, ...]]:
    """Incidence matrix of S: one row per element, columns indexed by the
    ascending union of the odd-multiplicity prime supports."""
    elements = sorted(S)
    assert elements and all(z >= 1 for z in elements)
    supports = [squarefree_split(z).pi_odd for z in elements]
    labels = tuple(sorted(set().union(*supports)))
    index = {p: i for i, p in enumerate(labels)}
    rows = tuple(
        sum(1 << index[p] for p in support) for support in supports
    )
    return GF2Matrix(rows, len(labels)), labels


def gf2_rank(matrix: GF2Matrix) -> int:
    """Rank over GF(2) by Gaussian elimination on integer bitsets."""
    work = list(matrix.rows)
    rank = 0
    for col in range(matrix.n_cols):
        pivot = None
        for r in range(rank, len(work)):
            if (work[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        work[rank], work[pivot] = work[pivot], work[rank]
        for r in range(len(work)):
            if r != rank and (work[r] >> col) & 1:
                work[r] ^= work[rank]
        rank += 1
        if rank == len(work):
            break
    return rank


def density_residue_set(S) -> Fraction:
    """Density of {p : every element of S is a residue of p}: 2^-rank."""
    matrix, _ = incidence_matrix(S)
    return Fraction(1, 2 ** gf2_rank(matrix))


def obstruction_any_square(S) -> bool:
    """True iff some nonempty subset of S has a square product.

    Subset products are squares exactly when the support rows are linearly
    dependent over GF(2), so this is a rank test, not a subset scan.
    """
    matrix, _ = incidence_matrix(S)
    return gf2_rank(matrix) < len(matrix.rows)


def obstruction_odd_square(S) -> bool:
    """True iff some odd-cardinality subset of S has a square product.

    Equivalent to the all-ones augmented system Bx = 1 being unsolvable,
    i.e. appending a 1-column raises the rank.
    """
    matrix, _ = incidence_matrix(S)
    one = 1 << matrix.n_cols
    augmented = GF2Matrix(
        tuple(row | one for row in matrix.rows), matrix.n_cols + 1
    )
    return gf2_rank(augmented) != gf2_rank(matrix)


def density_nonresidue_set(S):
    """Density of {p : every element of S is a non-residue of p}.

    Obstructed when an odd-cardinality subset multiplies to a square;
    otherwise the same 2^-rank as the residue case.
    """
    if obstruction_odd_square(S):
        return OBSTRUCTED
    return density_residue_set(S)


def density_pattern(S, epsilon=None):
    """Density of {p : chi_p matches the sign pattern epsilon on S}: 2^-|S|,
    Obstructed when any nonempty subset of S has a square product."""
    elements = sorted(S)
    if not elements:
        return Fraction(1)
    if obstruction_any_square(elements):
        return OBSTRUCTED
    return Fraction(1, 2 ** len(elements))


def _range_counts(want: dict[int, int], lo: int, hi: int) -> tuple[int, int]:
    """(matching primes, all primes) over lo < p <= hi."""
    hits = 0
    total = 0
    for p in primes_up_to(hi):
        if p <= lo:
            continue
        total += 1
        ok = True
        for z, sign in want.items():
            if legendre_euler(z, p) != sign:
                ok = False
                break
        if ok:
            hits += 1
    return hits, total


def empirical_density(S, mode, bound: int, jobs: int = 1) -> Fraction:
    """Fraction of primes p <= bound with the requested chi_p behavior on S.

    mode is +1 (all residues), -1 (all non-residues), or a dict mapping each
    element of S to its required sign.  Primes dividing an element of S
    never match; the denominator counts all primes <= bound.  jobs > 1
    splits the range over worker processes; counts merge commutatively, so
    the result does not depend on scheduling.
    """
    elements = sorted(S)
    if isinstance(mode, dict):
        want = {z: mode[z] for z in elements}
    else:
        want = {z: mode for z in elements}
    if jobs <= 1:
        hits, total = _range_counts(want, 1, bound)
        return Fraction(hits, total)
    from concurrent.futures import ProcessPoolExecutor

    edges = [1 + (bound - 1) * i // jobs for i in range(jobs + 1)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(
            pool.map(_range_counts, [want] * jobs, edges[:-1], edges[1:])
        )
    hits = sum(h for h, _ in parts)
    total = sum(t for _, t in parts)
    return Fraction(hits, total)


def even_intersection_count(A, family) -> int:
    """|{N subset of A : |N ∩ S| even for all S in family}| by the kernel
    dimension 2^(n-d); the brute-force check lives in the tests."""
    labels = tuple(sorted(A))
    index = {a: i for i, a in enumerate(labels)}
    rows = tuple(sum(1 << index[a] for a in S) for S in family)
    d = gf2_rank(GF2Matrix(rows, len(labels)))
    return 2 ** (len(labels) - d)
