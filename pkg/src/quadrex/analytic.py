"""Real primitive Dirichlet characters, truncated L(1, chi), Gauss sums,
quadratic excess, and the sign/identity checks tying excess sums to
L-functions and class numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .arith import factorize
from .errors import BudgetExceeded
from .forms import field_class_number
from .symbols import legendre_euler

GAUSS_SUM_FLOAT_BUDGET = 10_000


def _chi4(n: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if n % 4 == 1 else -1


def _chi8(n: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if n % 8 in (1, 7) else -1


def _chi_minus8(n: int) -> int:
    if n % 2 == 0:
        return 0
    return 1 if n % 8 in (1, 3) else -1


@dataclass(frozen=True)
class RealPrimitiveCharacter:
    """The real primitive character determined by a fundamental discriminant,
    as the product of basic characters over its primary factorization.

    Primary factors come from {-4, 8, -8} and (-1)^((p-1)/2) * p for odd
    primes p; they are pairwise coprime with product d, and the character
    has modulus |d| with chi(-1) * |d| = d.
    """

    d: int
    primary_factors: tuple[int, ...]

    @property
    def modulus(self) -> int:
        return abs(self.d)

    @classmethod
    def from_discriminant(cls, d: int) -> "RealPrimitiveCharacter":
        from .forms import is_fundamental

        if not is_fundamental(d):
            raise ValueError(f"{d} is not a fundamental discriminant")
        parts = []
        rest = d
        for p, _ in factorize(abs(d)).factors:
            if p == 2:
                continue
            star = p if p % 4 == 1 else -p
            parts.append(star)
            rest //= star
        if rest != 1:
            assert rest in (-4, 8, -8)
            parts.append(rest)
        return cls(d, tuple(sorted(parts, key=abs)))

    def eval(self, n: int) -> int:
        value = 1
        for f in self.primary_factors:
            if f == -4:
                value *= _chi4(n)
            elif f == 8:
                value *= _chi8(n)
            elif f == -8:
                value *= _chi_minus8(n)
            else:
                value *= legendre_euler(n, abs(f))
            if value == 0:
                return 0
        return value

    def table(self) -> np.ndarray:
        """chi(n) for n in [0, |d|-1], exploiting period |d|."""
        m = self.modulus
        return np.array([self.eval(n) for n in range(m)], dtype=np.int8)


def character_eval(chi: RealPrimitiveCharacter, n: int) -> int:
    return chi.eval(n)


class LegendreCharacter:
    """The Legendre symbol of p viewed as a Dirichlet character mod p."""

    def __init__(self, p: int):
        self.p = p
        self.modulus = p

    def eval(self, n: int) -> int:
        return legendre_euler(n, self.p)

    def table(self) -> np.ndarray:
        return legendre_table(self.p)


class PointwiseCharacter:
    """Pointwise product of a Legendre symbol with chi_4 or chi_3, used for
    the modulus-4p and modulus-3p excess formulas."""

    def __init__(self, p: int, small: int):
        assert small in (3, 4)
        self.p = p
        self.small = small
        self.modulus = small * p

    def eval(self, n: int) -> int:
        base = _chi4(n) if self.small == 4 else legendre_euler(n, 3)
        return base * legendre_euler(n, self.p)

    def table(self) -> np.ndarray:
        return np.array(
            [self.eval(n) for n in range(self.modulus)], dtype=np.int8
        )


def L1_truncated(chi, terms: int) -> tuple[float, float]:
    """Partial sum of L(1, chi) with a rigorous tail bound.

    Returns (sum of chi(n)/n for n <= terms, (modulus - 1) / terms); the
    bound comes from summation by parts with character partial sums capped
    at modulus - 1.
    """
    if terms < chi.modulus:
        raise BudgetExceeded("need at least one full period of terms")
    table = chi.table().astype(np.float64)
    n = np.arange(1, terms + 1, dtype=np.float64)
    values = table[np.arange(1, terms + 1) % chi.modulus]
    total = float(np.sum(values / n))
    return total, (chi.modulus - 1) / terms


def legendre_table(p: int) -> np.ndarray:
    """chi_p(n) for n in [0, p-1] as an int8 array built from the squares."""
    table = np.full(p, -1, dtype=np.int8)
    table[0] = 0
    squares = (np.arange(1, (p - 1) // 2 + 1, dtype=np.int64) ** 2) % p
    table[squares] = 1
    return table


def gauss_sum(n: int, p: int) -> complex:
    """G(n, p) = sum over j of chi_p(j) exp(2 pi i n j / p)."""
    if p > GAUSS_SUM_FLOAT_BUDGET:
        raise BudgetExceeded(f"p = {p} exceeds the float Gauss-sum budget")
    table = legendre_table(p).astype(np.float64)
    j = np.arange(p, dtype=np.float64)
    phase = np.exp(2j * np.pi * n * j / p)
    return complex(np.sum(table * phase))


def quadratic_excess(p: int, lo, hi, table: np.ndarray | None = None) -> int:
    """q(I) = sum of chi_p(n) over integers n with lo < n < hi.

    Endpoints may be ints, Fractions, or floats; the sum is exact.
    """
    lo = Fraction(lo)
    hi = Fraction(hi)
    start = math.floor(lo) + 1
    stop = math.ceil(hi) - 1
    if start > stop:
        return 0
    if table is None:
        table = legendre_table(p)
    idx = np.arange(start, stop + 1, dtype=np.int64) % p
    return int(table[idx].sum(dtype=np.int64))


@dataclass(frozen=True)
class SignReport:
    p: int
    checks: tuple[tuple[str, bool], ...]

    @property
    def ok(self) -> bool:
        return all(passed for _, passed in self.checks)


def verify_theorem71(p: int) -> SignReport:
    """Positivity of the half/quarter/third excess sums, plus the sign and
    zero patterns on the thirds and quarters of [0, p]."""
    assert p > 3
    table = legendre_table(p)

    def q(lo, hi):
        return quadratic_excess(p, lo, hi, table)

    checks = [("whole interval zero", q(0, p) == 0)]
    third = Fraction(p, 3)
    if p % 4 == 3:
        checks += [
            ("q(0, p/2) > 0", q(0, Fraction(p, 2)) > 0),
            ("q(0, p/3) > 0", q(0, third) > 0),
            ("q(p/3, 2p/3) = 0", q(third, 2 * third) == 0),
            ("q(2p/3, p) < 0", q(2 * third, p) < 0),
            ("thirds antisymmetric", q(0, third) == -q(2 * third, p)),
        ]
    else:
        quarter = Fraction(p, 4)
        checks += [
            ("q(0, p/4) > 0", q(0, quarter) > 0),
            ("q(0, p/3) > 0", q(0, third) > 0),
            ("thirds symmetric", q(0, third) == q(2 * third, p)),
            ("q(p/3, 2p/3) < 0", q(third, 2 * third) < 0),
            ("q(2p/3, p) > 0", q(2 * third, p) > 0),
            ("q(0, p/4) = q(3p/4, p)", q(0, quarter) == q(3 * quarter, p)),
            (
                "q(p/4, p/2) = q(p/2, 3p/4)",
                q(quarter, 2 * quarter) == q(2 * quarter, 3 * quarter),
            ),
            ("q(0, p/4) = -q(p/2, 3p/4)", q(0, quarter) == -q(2 * quarter, 3 * quarter)),
            ("q(p/4, p/2) < 0", q(quarter, 2 * quarter) < 0),
            ("q(3p/4, p) > 0", q(3 * quarter, p) > 0),
        ]
    return SignReport(p, tuple(checks))


@dataclass(frozen=True)
class ExcessResidual:
    p: int
    label: str
    exact: int
    formula: float
    bound: float

    @property
    def ok(self) -> bool:
        return abs(self.exact - self.formula) <= self.bound + 1e-9


def excess_via_L(p: int, terms: int = 200_000) -> tuple[ExcessResidual, ...]:
    """Compare exact excess sums to their L-function formulas.

    p == 3 mod 4: q(0, p/2) = (sqrt(p)/pi)(2 - chi_p(2)) L(1, chi_p) and
    q(0, p/3) = (sqrt(p)/2 pi)(3 - chi_p(3)) L(1, chi_p);
    p == 1 mod 4: q(0, p/4) = (sqrt(p)/pi) L(1, chi_4p) and
    q(0, p/3) = (sqrt(3p)/2 pi) L(1, chi_3p).
    """
    assert p > 3
    table = legendre_table(p)
    out = []
    if p % 4 == 3:
        value, tail = L1_truncated(LegendreCharacter(p), terms)
        coeff = math.sqrt(p) / math.pi * (2 - legendre_euler(2, p))
        out.append(
            ExcessResidual(
                p, "half", quadratic_excess(p, 0, Fraction(p, 2), table),
                coeff * value, coeff * tail,
            )
        )
        coeff = math.sqrt(p) / (2 * math.pi) * (3 - legendre_euler(3, p))
        out.append(
            ExcessResidual(
                p, "third", quadratic_excess(p, 0, Fraction(p, 3), table),
                coeff * value, coeff * tail,
            )
        )
    else:
        value, tail = L1_truncated(PointwiseCharacter(p, 4), terms)
        coeff = math.sqrt(p) / math.pi
        out.append(
            ExcessResidual(
                p, "quarter", quadratic_excess(p, 0, Fraction(p, 4), table),
                coeff * value, coeff * tail,
            )
        )
        value, tail = L1_truncated(PointwiseCharacter(p, 3), terms)
        coeff = math.sqrt(3 * p) / (2 * math.pi)
        out.append(
            ExcessResidual(
                p, "third", quadratic_excess(p, 0, Fraction(p, 3), table),
                coeff * value, coeff * tail,
            )
        )
    return tuple(out)


@dataclass(frozen=True)
class ExcessIdentity:
    p: int
    label: str
    excess: int
    class_term: Fraction

    @property
    def ok(self) -> bool:
        return self.excess == self.class_term


def class_number_excess(p: int) -> tuple[ExcessIdentity, ...]:
    """Exact integer identities between excess sums and field class numbers.

    Half interval: 3*h1(-p) when p == 3 mod 8, h1(-p) when p == 7 mod 8.
    Quarter: h1(-p)/2 when p == 1 mod 4 (field discriminant -4p).  Third:
    h1(-3p)/2 when p == 1 mod 4, 2*h1(-p) when p == 7 mod 12, h1(-p) when
    p == 11 mod 12.
    """
    assert p > 3
    table = legendre_table(p)
    out = []
    if p % 4 == 3:
        h = field_class_number(-p)
        half = quadratic_excess(p, 0, Fraction(p, 2), table)
        if p % 8 == 3:
            out.append(ExcessIdentity(p, "half=3*h1(-p)", half, Fraction(3 * h)))
        else:
            out.append(ExcessIdentity(p, "half=h1(-p)", half, Fraction(h)))
        third = quadratic_excess(p, 0, Fraction(p, 3), table)
        if p % 12 == 7:
            out.append(ExcessIdentity(p, "third=2*h1(-p)", third, Fraction(2 * h)))
        elif p % 12 == 11:
            out.append(ExcessIdentity(p, "third=h1(-p)", third, Fraction(h)))
    else:
        h = field_class_number(-p)
        quarter = quadratic_excess(p, 0, Fraction(p, 4), table)
        out.append(
            ExcessIdentity(p, "quarter=h1(-p)/2", quarter, Fraction(h, 2))
        )
        h3 = field_class_number(-3 * p)
        third = quadratic_excess(p, 0, Fraction(p, 3), table)
        out.append(
            ExcessIdentity(p, "third=h1(-3p)/2", third, Fraction(h3, 2))
        )
    return tuple(out)
