"""Central-limit experiments for windowed Legendre-symbol sums: the
ensemble S_h(x), its exact moments against the standard-normal moments, the
Davenport-Erdos moment envelope, and empirical-CDF distances."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .analytic import legendre_table

_INT64_SAFE = 1 << 62


def double_factorial_odd(r: int) -> int:
    """prod of (2i - 1) for i = 1..r."""
    out = 1
    for i in range(1, r + 1):
        out *= 2 * i - 1
    return out


def normal_moment(r: int) -> int:
    """Moments of the standard normal: 0 for odd r, (r-1)!! for even r."""
    return 0 if r % 2 else double_factorial_odd(r // 2)


def excess_ensemble(p: int, h: int) -> np.ndarray:
    """S_h(x) = chi_p(x+1) + ... + chi_p(x+h) for x in [0, p-1], with the
    character argument wrapping mod p, so every value appears h times."""
    assert 0 < h < p
    table = legendre_table(p).astype(np.int64)
    extended = np.concatenate([table, table[: h + 1]])
    cs = np.concatenate([[0], np.cumsum(extended)])
    return cs[h + 1 : p + h + 1] - cs[1 : p + 1]


def exact_power_sum(values: np.ndarray, r: int) -> int:
    """Sum of values**r as an exact Python integer.

    Splits the power so intermediate int64 products stay in range and sums
    in chunks of 4 before switching to arbitrary precision.
    """
    peak = int(np.abs(values).max(initial=0))
    if peak and peak ** r >= _INT64_SAFE // 4:
        return int(sum(int(v) ** r for v in values))
    half = r // 2
    powered = values ** half
    powered = powered * powered
    if r % 2:
        powered = powered * values
    n = len(powered)
    pad = (-n) % 4
    if pad:
        powered = np.concatenate([powered, np.zeros(pad, dtype=np.int64)])
    chunks = powered.reshape(-1, 4).sum(axis=1)
    return int(sum(int(c) for c in chunks))


def empirical_moments(p: int, h: int, r_max: int):
    """Moments m_r = (1/p) sum (S_h/sqrt(h))^r for r = 1..r_max, exact in the
    power sums; even moments are Fractions, odd moments floats."""
    assert r_max <= 8
    ens = excess_ensemble(p, h)
    out = {}
    for r in range(1, r_max + 1):
        total = exact_power_sum(ens, r)
        if r % 2 == 0:
            out[r] = Fraction(total, p * h ** (r // 2))
        else:
            out[r] = total / (p * h ** (r / 2))
    return out


@dataclass(frozen=True)
class MomentBoundReport:
    p: int
    h: int
    r: int
    even_ok: bool
    odd_ok: bool

    @property
    def ok(self) -> bool:
        return self.even_ok and self.odd_ok


def moment_bound_check(p: int, h: int, r: int) -> MomentBoundReport:
    """Davenport-Erdos envelope for the 2r-th and (2r-1)-th power sums.

    sum S^{2r} must lie within 2r h^{2r} sqrt(p) of the band spanned by
    (p - theta*r)(h - theta'*r)^r (2r-1)!! for theta, theta' in [0, 1], and
    |sum S^{2r-1}| is bounded by the same slack.  All comparisons against
    sqrt(p) are done on squares, keeping the check exact.
    """
    assert 0 < r < h < p
    ens = excess_ensemble(p, h)
    dfact = double_factorial_odd(r)
    slack_sq = (2 * r * h ** (2 * r)) ** 2 * p  # (2r h^{2r} sqrt p)^2

    even_total = exact_power_sum(ens, 2 * r)
    low_center = (p - r) * (h - r) ** r * dfact
    high_center = p * h**r * dfact
    if even_total < low_center:
        gap = low_center - even_total
        even_ok = gap * gap <= slack_sq
    elif even_total > high_center:
        gap = even_total - high_center
        even_ok = gap * gap <= slack_sq
    else:
        even_ok = True

    odd_total = exact_power_sum(ens, 2 * r - 1)
    odd_ok = odd_total * odd_total <= slack_sq
    return MomentBoundReport(p, h, r, even_ok, odd_ok)


def normal_cdf(x: float) -> float:
    """Standard normal distribution function via the error function."""
    return 0.5 * (1.0 + math.erf(x / math.sqrt(2.0)))


@dataclass(frozen=True)
class CdfReport:
    p: int
    h: int
    distances: tuple[tuple[float, float], ...]

    @property
    def sup_distance(self) -> float:
        return max(d for _, d in self.distances)


def cdf_report(p: int, h: int, grid) -> CdfReport:
    """Empirical CDF of S_h/sqrt(h) against the standard normal on a grid."""
    ens = np.sort(excess_ensemble(p, h))
    scale = math.sqrt(h)
    rows = []
    for lam in grid:
        empirical = np.searchsorted(ens, lam * scale, side="right") / p
        rows.append((float(lam), abs(empirical - normal_cdf(float(lam)))))
    return CdfReport(p, h, tuple(rows))
