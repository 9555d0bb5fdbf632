"""Binary quadratic forms: fundamental discriminants, Lagrange-reduced
representatives, automorphs, Pell equations, representation counts, and
class numbers (exact for d < 0, by class-number-formula inversion for d > 0).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import gcd, isqrt

from .arith import squarefree_split
from .errors import BudgetExceeded, NotCoprime

PELL_SEARCH_BUDGET = 10_000_000


@dataclass(frozen=True)
class QForm:
    """The form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def value(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def is_primitive(self) -> bool:
        return gcd(gcd(self.a, self.b), self.c) == 1


@dataclass(frozen=True)
class PellSolution:
    """Minimal positive solution of t^2 - d*u^2 = 4."""

    t0: int
    u0: int
    d: int

    @property
    def epsilon(self) -> float:
        return (self.t0 + self.u0 * math.sqrt(self.d)) / 2


def is_fundamental(d: int) -> bool:
    """Fundamental discriminants: square-free and 1 mod 4, or 4n with n
    square-free and 2 or 3 mod 4."""
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return squarefree_split(d).square == 1
    if d % 4 == 0:
        n = d // 4
        return n % 4 in (2, 3) and squarefree_split(n).square == 1
    return False


def reduced_forms(d: int) -> tuple[QForm, ...]:
    """All primitive positive-definite reduced forms of discriminant d < 0.

    Lagrange reduction: |b| <= a <= c, with b >= 0 whenever |b| = a or
    a = c.  One form per equivalence class, so the count is h(d).
    """
    assert d < 0 and d % 4 in (0, 1)
    out = []
    for b in range(d % 2, isqrt(-d // 3) + 1, 2):
        rhs = (b * b - d) // 4
        for a in range(max(b, 1), isqrt(rhs) + 1):
            if rhs % a:
                continue
            c = rhs // a
            form = QForm(a, b, c)
            if not form.is_primitive():
                continue
            out.append(form)
            if 0 < b < a < c:
                out.append(QForm(a, -b, c))
    return tuple(sorted(out, key=lambda f: (f.a, f.b, f.c)))


def automorph_count(d: int) -> int:
    """Number of automorphs w of a form of discriminant d < 0: 6, 4, or 2."""
    assert d < 0
    if d == -3:
        return 6
    if d == -4:
        return 4
    return 2


def pell_min(d: int) -> PellSolution:
    """Minimal positive solution of t^2 - d*u^2 = 4, d > 0 non-square."""
    assert d > 0 and isqrt(d) ** 2 != d
    for u in range(1, PELL_SEARCH_BUDGET):
        t2 = 4 + d * u * u
        t = isqrt(t2)
        if t * t == t2:
            return PellSolution(t, u, d)
    raise BudgetExceeded(f"no Pell solution for d = {d} within budget")


def representation_count_formula(n: int, d: int) -> int:
    """R(n) = w * sum over divisors m of n of chi(d)(m), for gcd(n, d) = 1."""
    from .analytic import RealPrimitiveCharacter

    if gcd(n, d) != 1:
        raise NotCoprime(f"n = {n} and d = {d} share a factor")
    chi = RealPrimitiveCharacter.from_discriminant(d)
    total = 0
    for m in range(1, isqrt(n) + 1):
        if n % m:
            continue
        total += chi.eval(m)
        if m != n // m:
            total += chi.eval(n // m)
    w = automorph_count(d) if d < 0 else 1
    return w * total


def representation_count_lattice(n: int, d: int) -> int:
    """R(n) for d < 0 by direct lattice enumeration over a representative
    system; the independent check for the divisor-sum formula."""
    assert d < 0 and n > 0
    if gcd(n, d) != 1:
        raise NotCoprime(f"n = {n} and d = {d} share a factor")
    total = 0
    for form in reduced_forms(d):
        xb = isqrt(4 * form.c * n // -d) + 1
        yb = isqrt(4 * form.a * n // -d) + 1
        for x in range(-xb, xb + 1):
            for y in range(-yb, yb + 1):
                if form.value(x, y) == n:
                    total += 1
    return total


def representation_count(n: int, d: int) -> int:
    """R(n) of Dirichlet's representation theorem; for d < 0 the formula is
    cross-checked against lattice enumeration before being returned."""
    count = representation_count_formula(n, d)
    if d < 0:
        assert count == representation_count_lattice(n, d)
    return count


def class_number(d: int, terms: int = 1_000_000) -> int:
    """Class number h(d) of a fundamental discriminant.

    d < 0 counts reduced forms exactly.  d > 0 inverts the class-number
    formula L(1, chi) = h * log(eps) / sqrt(d) with a truncated series; the
    rounding is refused unless the propagated truncation error is < 0.4.
    """
    from .analytic import L1_truncated, RealPrimitiveCharacter

    assert is_fundamental(d)
    if d < 0:
        return len(reduced_forms(d))
    chi = RealPrimitiveCharacter.from_discriminant(d)
    value, tail = L1_truncated(chi, max(terms, abs(d)))
    eps = pell_min(d).epsilon
    scale = math.sqrt(d) / math.log(eps)
    h = value * scale
    if tail * scale >= 0.4:
        raise BudgetExceeded(
            f"truncation error {tail * scale:.3f} too large to round h({d})"
        )
    rounded = round(h)
    assert abs(h - rounded) <= tail * scale + 0.1
    return rounded


def field_class_number(m: int) -> int:
    """Class number h1 of the quadratic field generated by sqrt(m), m < 0
    square-free: the form class number of the field discriminant (m or 4m)."""
    assert m < 0 and squarefree_split(m).square == 1
    disc = m if m % 4 == 1 else 4 * m
    return class_number(disc)
