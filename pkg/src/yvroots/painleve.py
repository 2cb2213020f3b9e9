"""Rational solutions of Painleve II and their real poles.

For n >= 1 the rational solution of w'' = 2w^3 + zw + n is

    w_n = Q_{n-1}'/Q_{n-1} - Q_n'/Q_n,

with w_0 = 0 and w_{-n} = -w_n.  Roots of Q_{n-1} are poles with residue +1,
roots of Q_n poles with residue -1.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactpoly import (
    ONE,
    ZERO,
    IntPoly,
    RationalFunction,
    Z,
    gcd_primitive,
    rf_derivative,
)
from .rootcensus import (
    CommonRootDetected,
    IsolatingInterval,
    RootCensus,
    census,
    refine,
)
from .yvgen import YVCache, generate

__all__ = [
    "PoleCount",
    "PoleCensus",
    "CommonRootDetected",
    "rational_solution",
    "p2_residual",
    "verify_p2",
    "pole_census",
    "residue_check",
]

RESIDUE_WIDTH = Fraction(1, 2**30)
RESIDUE_TOL = Fraction(1, 2**10)
# offset of the two probe points from the interval midpoint
RESIDUE_STEP = Fraction(1, 2**20)


def rational_solution(n: int, cache: YVCache | None = None) -> RationalFunction:
    """Reduced w_n for any integer n."""
    if n == 0:
        return RationalFunction(ZERO, ONE, reduced=True)
    if n < 0:
        return -rational_solution(-n, cache)
    qm, q = generate(n - 1, cache), generate(n, cache)
    return RationalFunction.log_derivative(qm) - RationalFunction.log_derivative(q)


def p2_residual(n: int, cache: YVCache | None = None) -> RationalFunction:
    """w'' - 2w^3 - zw - n for w = w_n, as one reduced fraction."""
    w = rational_solution(n, cache)
    w2 = rf_derivative(rf_derivative(w))
    cube = w * w * w
    zw = w * RationalFunction.from_poly(Z)
    return w2 - cube * 2 - zw - n


def verify_p2(n: int, cache: YVCache | None = None) -> bool:
    """True iff the reduced numerator of the residual is the zero polynomial."""
    return p2_residual(n, cache).num.is_zero()


@dataclass(frozen=True)
class PoleCount:
    total: int
    negative: int
    positive: int
    at_zero: bool

    @classmethod
    def from_census(cls, c: RootCensus) -> "PoleCount":
        return cls(c.total, c.negative, c.positive, c.has_zero_root)

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "negative": self.negative,
            "positive": self.positive,
            "zero": self.at_zero,
        }


@dataclass(frozen=True)
class PoleCensus:
    n: int
    residue_plus: PoleCount
    residue_minus: PoleCount

    @property
    def total(self) -> int:
        return self.residue_plus.total + self.residue_minus.total

    @property
    def negative(self) -> int:
        return self.residue_plus.negative + self.residue_minus.negative

    @property
    def positive(self) -> int:
        return self.residue_plus.positive + self.residue_minus.positive

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "total": self.total,
            "negative": self.negative,
            "positive": self.positive,
            "residue_plus": self.residue_plus.to_json(),
            "residue_minus": self.residue_minus.to_json(),
        }


def pole_census(n: int, cache: YVCache | None = None) -> PoleCensus:
    """Real poles of w_n split by residue sign."""
    if n < 1:
        raise ValueError("n must be >= 1")
    qm, q = generate(n - 1, cache), generate(n, cache)
    if gcd_primitive(qm, q).degree > 0:
        raise CommonRootDetected(f"Q_{n - 1} and Q_{n} share a root")
    return PoleCensus(
        n=n,
        residue_plus=PoleCount.from_census(census(n - 1, cache)),
        residue_minus=PoleCount.from_census(census(n, cache)),
    )


def residue_check(
    n: int,
    cache: YVCache | None,
    iv: IsolatingInterval,
    side: str,
) -> bool:
    """Probe the residue of w_n at the pole isolated by ``iv``.

    ``iv`` is refined to width 2^-30 around its root r, with midpoint m.  The
    symmetric probe h*(w(m+h) - w(m-h))/2 with h = 2^-20 equals the residue up
    to O((m-r)^2/h^2) from the pole and O(h^2) from the regular part; it must
    land within 2^-10 of +1 (side "plus") or -1 (side "minus").
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    target = 1 if side == "plus" else -1
    p = generate(n - 1 if side == "plus" else n, cache)
    iv = refine(p, iv, RESIDUE_WIDTH)
    w = rational_solution(n, cache)
    m, h = iv.midpoint, RESIDUE_STEP
    try:
        probe = h * (w(m + h) - w(m - h)) / 2
    except ZeroDivisionError:
        return False
    return abs(probe - target) <= RESIDUE_TOL
