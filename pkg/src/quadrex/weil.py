"""Complete and incomplete Weil sums for y^2 = f(x) over F_p, with the
square-root cancellation bounds and the exact rational-point identity."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .analytic import legendre_table


@dataclass(frozen=True)
class WeilPoly:
    """Monic polynomial over F_p given by its distinct roots."""

    p: int
    roots: tuple[int, ...]

    def __post_init__(self):
        assert len(self.roots) >= 1
        assert len(set(self.roots)) == len(self.roots)
        assert all(0 <= r < self.p for r in self.roots)

    @property
    def degree(self) -> int:
        return len(self.roots)

    @classmethod
    def from_coefficients(cls, p: int, coeffs: list[int]) -> "WeilPoly":
        """Build from monic coefficients [1, c_{d-1}, ..., c_0], rejecting
        any polynomial that does not split into distinct linear factors."""
        coeffs = [c % p for c in coeffs]
        if not coeffs or coeffs[0] != 1:
            raise ValueError("polynomial must be monic")
        roots = []
        rest = coeffs
        for r in range(p):
            # synthetic division by (x - r), at most once per root
            acc = 0
            for c in rest:
                acc = (acc * r + c) % p
            if acc == 0:
                quotient = []
                acc = 0
                for c in rest[:-1]:
                    acc = (acc * r + c) % p
                    quotient.append(acc)
                rest = quotient
                roots.append(r)
                if len(rest) == 1:
                    break
        if rest != [1]:
            # repeated roots survive in the quotient behind the scan position
            raise ValueError("polynomial does not split into distinct roots")
        return cls(p, tuple(sorted(roots)))

    def values(self) -> np.ndarray:
        """f(x) mod p for all x in [0, p-1]."""
        x = np.arange(self.p, dtype=np.int64)
        out = np.ones(self.p, dtype=np.int64)
        for r in self.roots:
            out = (out * ((x - r) % self.p)) % self.p
        return out


def complete_weil_sum(f: WeilPoly) -> int:
    """Sum of chi_p(f(x)) over all of F_p; always below degree * sqrt(p)."""
    table = legendre_table(f.p)
    total = int(table[f.values()].sum(dtype=np.int64))
    assert abs(total) < f.degree * math.sqrt(f.p)
    return total


def incomplete_weil_sum(f: WeilPoly, n: int) -> int:
    """Sum of chi_p(f(x)) for x in [0, n]; the d(1 + log p) sqrt(p) bound is
    asymptotic, so it is reported by bound_ok rather than asserted."""
    assert 0 <= n < f.p
    table = legendre_table(f.p)
    return int(table[f.values()[: n + 1]].sum(dtype=np.int64))


def incomplete_bound_ok(f: WeilPoly, n: int) -> bool:
    value = incomplete_weil_sum(f, n)
    return abs(value) <= f.degree * (1 + math.log(f.p)) * math.sqrt(f.p)


def point_count(f: WeilPoly) -> int:
    """|{(x, y) in F_p^2 : y^2 = f(x)}| by direct enumeration of y-fibers."""
    p = f.p
    fiber = np.zeros(p, dtype=np.int64)
    y = np.arange(p, dtype=np.int64)
    np.add.at(fiber, (y * y) % p, 1)
    return int(fiber[f.values()].sum(dtype=np.int64))
